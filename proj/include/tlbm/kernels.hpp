#pragma once
// Tile collision kernels: a portable scalar reference and AVX2 variants,
// selected at runtime. All variants produce bit-identical results.

#include <array>
#include <string_view>

#include "tlbm/lattice.hpp"
#include "tlbm/physics.hpp"

namespace tlbm {

enum class KernelIsa { Auto, Scalar, Avx2 };

/// Structure-of-arrays staging buffer for one tile: f[dir][node], node in XYZ order.
template <class T>
struct alignas(64) TileBuffer {
  T f[kQ][kTileNodes];
  T rho[kTileNodes];
  T usq[kTileNodes];
};

template <class T>
struct CollideParams {
  T omega{};
  /// rate_k / |M row k|^2 for MRT.
  std::array<T, kQ> mrt_coeff{};
};

template <class T>
CollideParams<T> make_collide_params(double tau, const MrtRates& rates) {
  CollideParams<T> p;
  p.omega = T(1.0 / tau);
  for (int k = 0; k < kQ; ++k) p.mrt_coeff[k] = T(rates[k] / kMrtBasis.norm2[k]);
  return p;
}

/// Collides all 64 lanes in place and records rho and |u|^2 per lane.
template <class T>
using CollideFn = void (*)(const CollideParams<T>&, TileBuffer<T>&);

bool avx2_compiled();
bool cpu_has_avx2();
/// Auto picks AVX2 when compiled in and supported. Throws std::runtime_error
/// when AVX2 is requested but unavailable.
KernelIsa resolve_isa(KernelIsa requested);
std::string_view isa_name(KernelIsa isa);

template <class T>
CollideFn<T> collide_kernel(KernelIsa isa, CollisionModel collision, FluidModel fluid);

}  // namespace tlbm
