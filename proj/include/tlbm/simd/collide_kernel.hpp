#pragma once
// Pack-generic tile collision. Instantiated once per pack type; coefficients
// of the lattice and the MRT basis are folded in at compile time, so every
// instantiation performs the same sequence of IEEE operations per lane.

#include <utility>

#include "tlbm/kernels.hpp"

namespace tlbm::simd {

template <int C, class P>
inline P axpy_const(P acc, P x) {
  if constexpr (C == 0) {
    return acc;
  } else if constexpr (C == 1) {
    return acc + x;
  } else if constexpr (C == -1) {
    return acc - x;
  } else {
    return acc + P::broadcast(typename P::value_type(C)) * x;
  }
}

template <int Axis>
constexpr int vcomp(int i) {
  const Int3 e = vec(i);
  return Axis == 0 ? e.x : Axis == 1 ? e.y : e.z;
}

/// sum_i c_i[Axis] * v[i]
template <int Axis, class P, std::size_t... I>
inline P first_moment(const P* v, std::index_sequence<I...>) {
  P acc = P::zero();
  ((acc = axpy_const<vcomp<Axis>(int(I))>(acc, v[I])), ...);
  return acc;
}

/// sum_i M[Row][i] * v[i]
template <int Row, class P, std::size_t... I>
inline P mrt_row(const P* v, std::index_sequence<I...>) {
  P acc = P::zero();
  ((acc = axpy_const<kMrtBasis.m[Row][I]>(acc, v[I])), ...);
  return acc;
}

/// sum_k M[k][Col] * v[k]
template <int Col, class P, std::size_t... K>
inline P mrt_col(const P* v, std::index_sequence<K...>) {
  P acc = P::zero();
  ((acc = axpy_const<kMrtBasis.m[K][Col]>(acc, v[K])), ...);
  return acc;
}

template <int I, class P>
inline P dot_e(P ux, P uy, P uz) {
  constexpr Int3 e = vec(I);
  P acc = P::zero();
  acc = axpy_const<e.x>(acc, ux);
  acc = axpy_const<e.y>(acc, uy);
  acc = axpy_const<e.z>(acc, uz);
  return acc;
}

template <class P, FluidModel FM, std::size_t... I>
inline void equilibria(P rho, P ux, P uy, P uz, P usq, P* feq, std::index_sequence<I...>) {
  using T = typename P::value_type;
  const P three = P::broadcast(T(3)), four_half = P::broadcast(T(4.5)), one_half = P::broadcast(T(1.5));
  auto one = [&](auto idx) {
    constexpr int i = decltype(idx)::value;
    const P cu = dot_e<i>(ux, uy, uz);
    const P w = P::broadcast(kWeights<T>[i]);
    const P bracket = three * cu + four_half * cu * cu - one_half * usq;
    if constexpr (FM == FluidModel::QuasiCompressible)
      feq[i] = w * rho * (P::broadcast(T(1)) + bracket);
    else
      feq[i] = w * (rho + bracket);
  };
  (one(std::integral_constant<int, int(I)>{}), ...);
}

template <class P, std::size_t... I>
inline void mrt_relax(const CollideParams<typename P::value_type>& prm, P* f, const P* feq,
                      std::index_sequence<I...> seq) {
  P diff[kQ];
  ((diff[I] = feq[I] - f[I]), ...);
  P rel[kQ];
  ((rel[I] = P::broadcast(prm.mrt_coeff[I]) * mrt_row<int(I)>(diff, seq)), ...);
  ((f[I] = f[I] + mrt_col<int(I)>(rel, seq)), ...);
}

template <class P, FluidModel FM, CollisionModel CM>
void collide_tile(const CollideParams<typename P::value_type>& prm, TileBuffer<typename P::value_type>& buf) {
  constexpr auto seq = std::make_index_sequence<kQ>{};
  const P omega = P::broadcast(prm.omega);
  for (int lane = 0; lane < kTileNodes; lane += P::width) {
    P f[kQ];
    for (int i = 0; i < kQ; ++i) f[i] = P::load(&buf.f[i][lane]);
    P rho = f[0];
    for (int i = 1; i < kQ; ++i) rho = rho + f[i];
    P ux = first_moment<0>(f, seq), uy = first_moment<1>(f, seq), uz = first_moment<2>(f, seq);
    if constexpr (FM == FluidModel::QuasiCompressible) {
      ux = ux / rho;
      uy = uy / rho;
      uz = uz / rho;
    }
    const P usq = ux * ux + uy * uy + uz * uz;
    rho.store(&buf.rho[lane]);
    usq.store(&buf.usq[lane]);

    P feq[kQ];
    equilibria<P, FM>(rho, ux, uy, uz, usq, feq, seq);
    if constexpr (CM == CollisionModel::LBGK) {
      for (int i = 0; i < kQ; ++i) f[i] = f[i] + omega * (feq[i] - f[i]);
    } else {
      mrt_relax<P>(prm, f, feq, seq);
    }
    for (int i = 0; i < kQ; ++i) f[i].store(&buf.f[i][lane]);
  }
}

/// Kernel table for one pack type.
template <class P>
CollideFn<typename P::value_type> select_collide(CollisionModel c, FluidModel m) {
  if (c == CollisionModel::LBGK)
    return m == FluidModel::Incompressible ? &collide_tile<P, FluidModel::Incompressible, CollisionModel::LBGK>
                                           : &collide_tile<P, FluidModel::QuasiCompressible, CollisionModel::LBGK>;
  return m == FluidModel::Incompressible ? &collide_tile<P, FluidModel::Incompressible, CollisionModel::MRT>
                                         : &collide_tile<P, FluidModel::QuasiCompressible, CollisionModel::MRT>;
}

}  // namespace tlbm::simd
