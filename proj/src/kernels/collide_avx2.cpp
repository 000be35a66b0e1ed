#include <type_traits>

#include "kernel_table.hpp"
#include "tlbm/simd/collide_kernel.hpp"
#include "tlbm/simd/pack_avx2.hpp"

namespace tlbm::detail {

template <class T>
CollideFn<T> avx2_collide(CollisionModel c, FluidModel m) {
  using Pack = std::conditional_t<std::is_same_v<T, double>, simd::Avx2PackD, simd::Avx2PackF>;
  return simd::select_collide<Pack>(c, m);
}

template CollideFn<float> avx2_collide<float>(CollisionModel, FluidModel);
template CollideFn<double> avx2_collide<double>(CollisionModel, FluidModel);

}  // namespace tlbm::detail
