#include "kernel_table.hpp"
#include "tlbm/simd/collide_kernel.hpp"
#include "tlbm/simd/pack.hpp"

namespace tlbm::detail {

template <class T>
CollideFn<T> scalar_collide(CollisionModel c, FluidModel m) {
  return simd::select_collide<simd::ScalarPack<T>>(c, m);
}

template CollideFn<float> scalar_collide<float>(CollisionModel, FluidModel);
template CollideFn<double> scalar_collide<double>(CollisionModel, FluidModel);

}  // namespace tlbm::detail
