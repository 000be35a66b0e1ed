#pragma once
// Per-ISA kernel tables; each lives in its own translation unit so that only
// the AVX2 one is compiled with -mavx2.

#include "tlbm/kernels.hpp"

namespace tlbm::detail {

template <class T>
CollideFn<T> scalar_collide(CollisionModel c, FluidModel m);

#if defined(TLBM_HAVE_AVX2)
template <class T>
CollideFn<T> avx2_collide(CollisionModel c, FluidModel m);
#endif

}  // namespace tlbm::detail
