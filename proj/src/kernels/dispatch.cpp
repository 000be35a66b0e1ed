#include <stdexcept>

#include "kernel_table.hpp"

namespace tlbm {

bool avx2_compiled() {
#if defined(TLBM_HAVE_AVX2)
  return true;
#else
  return false;
#endif
}

bool cpu_has_avx2() {
#if defined(TLBM_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

KernelIsa resolve_isa(KernelIsa requested) {
  const bool avx2 = avx2_compiled() && cpu_has_avx2();
  switch (requested) {
    case KernelIsa::Auto: return avx2 ? KernelIsa::Avx2 : KernelIsa::Scalar;
    case KernelIsa::Avx2:
      if (!avx2) throw std::runtime_error("AVX2 kernels requested but not available on this build/CPU");
      return KernelIsa::Avx2;
    default: return KernelIsa::Scalar;
  }
}

std::string_view isa_name(KernelIsa isa) {
  switch (isa) {
    case KernelIsa::Auto: return "auto";
    case KernelIsa::Avx2: return "avx2";
    default: return "scalar";
  }
}

template <class T>
CollideFn<T> collide_kernel(KernelIsa isa, CollisionModel collision, FluidModel fluid) {
#if defined(TLBM_HAVE_AVX2)
  if (resolve_isa(isa) == KernelIsa::Avx2) return detail::avx2_collide<T>(collision, fluid);
#else
  (void)resolve_isa(isa);
#endif
  return detail::scalar_collide<T>(collision, fluid);
}

template CollideFn<float> collide_kernel<float>(KernelIsa, CollisionModel, FluidModel);
template CollideFn<double> collide_kernel<double>(KernelIsa, CollisionModel, FluidModel);

}  // namespace tlbm
