#pragma once
// Node-level LBM physics: equilibria, macroscopic moments, LBGK and MRT
// collision, Zou-He closures. Straightforward per-node code; the tile solver
// has its own vectorised collision path in simd/collide_kernel.hpp.

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "tlbm/geometry.hpp"
#include "tlbm/lattice.hpp"

namespace tlbm {

enum class CollisionModel : std::uint8_t { LBGK, MRT };
enum class FluidModel : std::uint8_t { Incompressible, QuasiCompressible };

template <class T>
using Pdf = std::array<T, kQ>;

template <class T>
struct Macroscopics {
  T rho{};
  std::array<T, 3> u{};
  T p{};
};

class SimulationDiverged : public std::runtime_error {
 public:
  SimulationDiverged(std::uint64_t iteration, const std::string& what)
      : std::runtime_error(what + " at iteration " + std::to_string(iteration)), iteration_(iteration) {}
  std::uint64_t iteration() const { return iteration_; }

 private:
  std::uint64_t iteration_;
};

// ---------------------------------------------------------------------------
// MRT moment basis (d'Humieres et al. 2002). Row order:
//   0 rho, 1 e, 2 eps, 3 jx, 4 qx, 5 jy, 6 qy, 7 jz, 8 qz,
//   9 3pxx, 10 3pixx, 11 pww, 12 piww, 13 pxy, 14 pyz, 15 pxz, 16 mx, 17 my, 18 mz
// ---------------------------------------------------------------------------

struct MrtBasis {
  std::array<std::array<int, kQ>, kQ> m{};
  /// Squared norm of each row.
  std::array<int, kQ> norm2{};
};

inline constexpr MrtBasis kMrtBasis = [] {
  MrtBasis b{};
  for (int i = 0; i < kQ; ++i) {
    const Int3 e = vec(i);
    const int x = e.x, y = e.y, z = e.z;
    const int c2 = x * x + y * y + z * z;
    b.m[0][i] = 1;
    b.m[1][i] = 19 * c2 - 30;
    b.m[2][i] = (21 * c2 * c2 - 53 * c2 + 24) / 2;
    b.m[3][i] = x;
    b.m[4][i] = (5 * c2 - 9) * x;
    b.m[5][i] = y;
    b.m[6][i] = (5 * c2 - 9) * y;
    b.m[7][i] = z;
    b.m[8][i] = (5 * c2 - 9) * z;
    b.m[9][i] = 3 * x * x - c2;
    b.m[10][i] = (3 * c2 - 5) * (3 * x * x - c2);
    b.m[11][i] = y * y - z * z;
    b.m[12][i] = (3 * c2 - 5) * (y * y - z * z);
    b.m[13][i] = x * y;
    b.m[14][i] = y * z;
    b.m[15][i] = x * z;
    b.m[16][i] = x * (y * y - z * z);
    b.m[17][i] = y * (z * z - x * x);
    b.m[18][i] = z * (x * x - y * y);
  }
  for (int k = 0; k < kQ; ++k) {
    int s = 0;
    for (int i = 0; i < kQ; ++i) s += b.m[k][i] * b.m[k][i];
    b.norm2[k] = s;
  }
  return b;
}();

using MrtRates = std::array<double, kQ>;

/// Conserved moments relax at rate 0; stress moments at 1/tau; the odd
/// moments (q, m) follow 1/tau through the 3/16 product rule.
MrtRates default_mrt_rates(double tau);
/// Every moment relaxes at 1/tau, which reduces MRT to LBGK.
MrtRates bgk_mrt_rates(double tau);

// ---------------------------------------------------------------------------

template <class T>
T equilibrium(FluidModel model, T rho, const std::array<T, 3>& u, int i) {
  const Int3 e = vec(i);
  const T cs2 = T(1) / T(3);
  const T cu = T(e.x) * u[0] + T(e.y) * u[1] + T(e.z) * u[2];
  const T uu = u[0] * u[0] + u[1] * u[1] + u[2] * u[2];
  const T terms = cu / cs2 + cu * cu / (T(2) * cs2 * cs2) - uu / (T(2) * cs2);
  const T w = kWeights<T>[i];
  if (model == FluidModel::QuasiCompressible) return w * rho * (T(1) + terms);
  return w * (rho + terms);
}

template <class T>
Pdf<T> equilibrium_all(FluidModel model, T rho, const std::array<T, 3>& u) {
  Pdf<T> f{};
  for (int i = 0; i < kQ; ++i) f[i] = equilibrium(model, rho, u, i);
  return f;
}

/// Incompressible: u = sum c_i f_i. Quasi-compressible: u = sum c_i f_i / rho,
/// which requires rho > 0 (throws SimulationDiverged with iteration 0 otherwise).
template <class T>
Macroscopics<T> macroscopic(FluidModel model, const Pdf<T>& f) {
  Macroscopics<T> m;
  std::array<T, 3> j{};
  for (int i = 0; i < kQ; ++i) {
    const Int3 e = vec(i);
    m.rho += f[i];
    j[0] += T(e.x) * f[i];
    j[1] += T(e.y) * f[i];
    j[2] += T(e.z) * f[i];
  }
  if (model == FluidModel::QuasiCompressible) {
    if (!(m.rho > T(0))) throw SimulationDiverged(0, "non-positive density");
    for (int a = 0; a < 3; ++a) m.u[a] = j[a] / m.rho;
  } else {
    m.u = j;
  }
  m.p = m.rho / T(3);
  return m;
}

template <class T>
Pdf<T> collide_lbgk(FluidModel model, T tau, const Pdf<T>& f) {
  const Macroscopics<T> mac = macroscopic(model, f);
  Pdf<T> out{};
  for (int i = 0; i < kQ; ++i) out[i] = f[i] + (T(1) / tau) * (equilibrium(model, mac.rho, mac.u, i) - f[i]);
  return out;
}

/// f + M^-1 S (M f_eq - M f) with M^-1 = M^T diag(1/|row|^2).
template <class T>
Pdf<T> collide_mrt(FluidModel model, const MrtRates& rates, const Pdf<T>& f) {
  const Macroscopics<T> mac = macroscopic(model, f);
  const Pdf<T> feq = equilibrium_all(model, mac.rho, mac.u);
  std::array<T, kQ> relax{};
  for (int k = 0; k < kQ; ++k) {
    T dm = 0;
    for (int i = 0; i < kQ; ++i) dm += T(kMrtBasis.m[k][i]) * (feq[i] - f[i]);
    relax[k] = T(rates[k]) * dm / T(kMrtBasis.norm2[k]);
  }
  Pdf<T> out = f;
  for (int i = 0; i < kQ; ++i) {
    T s = 0;
    for (int k = 0; k < kQ; ++k) s += T(kMrtBasis.m[k][i]) * relax[k];
    out[i] += s;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Boundaries
// ---------------------------------------------------------------------------

/// Outward normal of an axis-aligned boundary face.
struct BoundaryFace {
  int axis = 0;  // 0 x, 1 y, 2 z
  int sign = 1;  // +1 or -1
  friend bool operator==(const BoundaryFace&, const BoundaryFace&) = default;
};

/// Normal of the unique axis direction whose neighbour is solid or off-domain.
/// Returns nullopt when there is no such direction or more than one.
std::optional<BoundaryFace> find_boundary_face(const Geometry& g, int x, int y, int z);

namespace detail {

inline int component(const Int3& e, int axis) { return axis == 0 ? e.x : axis == 1 ? e.y : e.z; }

/// Shared Zou-He closure given the wall-normal momentum component j_n and
/// the full momentum j. Unknowns are the populations with e . n = -1.
template <class T>
void zou_he_close(const BoundaryFace& face, const std::array<T, 3>& j, Pdf<T>& f) {
  const int n_axis = face.axis;
  // Tangential correction per transverse axis: N_t = 1/2 sum_{e.n=0} f e_t - 1/3 j_t.
  std::array<T, 3> ncorr{};
  for (int t = 0; t < 3; ++t) {
    if (t == n_axis) continue;
    T s = 0;
    for (int i = 0; i < kQ; ++i)
      if (component(vec(i), n_axis) == 0) s += T(component(vec(i), t)) * f[i];
    ncorr[t] = s / T(2) - j[t] / T(3);
  }
  for (int i = 0; i < kQ; ++i) {
    const Int3 e = vec(i);
    if (component(e, n_axis) * face.sign != -1) continue;
    const int o = opposite(i);
    const T ej = T(e.x) * j[0] + T(e.y) * j[1] + T(e.z) * j[2];
    bool axial = true;
    T corr = 0;
    for (int t = 0; t < 3; ++t) {
      if (t == n_axis) continue;
      const int c = component(e, t);
      if (c != 0) {
        axial = false;
        corr -= T(c) * ncorr[t];
      }
    }
    f[i] = axial ? f[o] + ej / T(3) : f[o] + ej / T(6) + corr;
  }
}

/// Sum of populations tangential to the face and of those pointing out of it.
template <class T>
void face_sums(const BoundaryFace& face, const Pdf<T>& f, T& tangential, T& outgoing) {
  tangential = 0;
  outgoing = 0;
  for (int i = 0; i < kQ; ++i) {
    const int c = component(vec(i), face.axis) * face.sign;
    if (c == 0) tangential += f[i];
    else if (c == 1) outgoing += f[i];
  }
}

}  // namespace detail

/// Zou-He velocity closure: density follows from the known populations.
template <class T>
void apply_zou_he_velocity(FluidModel model, const BoundaryFace& face, const std::array<T, 3>& u, Pdf<T>& f) {
  T s0, sp;
  detail::face_sums(face, f, s0, sp);
  const T un = T(face.sign) * u[face.axis];
  std::array<T, 3> j = u;
  if (model == FluidModel::QuasiCompressible) {
    const T rho = (s0 + T(2) * sp) / (T(1) + un);
    for (auto& c : j) c *= rho;
  }
  detail::zou_he_close(face, j, f);
}

/// Zou-He pressure closure: prescribed density, zero tangential velocity.
template <class T>
void apply_zou_he_pressure(FluidModel, const BoundaryFace& face, T rho, Pdf<T>& f) {
  T s0, sp;
  detail::face_sums(face, f, s0, sp);
  // j . n = s0 + 2 sp - rho holds for both fluid models.
  std::array<T, 3> j{};
  j[face.axis] = T(face.sign) * (s0 + T(2) * sp - rho);
  detail::zou_he_close(face, j, f);
}

/// Boundary treatment for a gathered node. Bounce-back links are resolved
/// while gathering (a missing f_i is the node's own post-collision
/// f_opposite(i)), so walls and fluid nodes need nothing here.
template <class T>
void apply_boundary(FluidModel model, NodeType type, const std::optional<BoundaryFace>& face,
                    const BoundaryValues& values, Pdf<T>& f) {
  if (type != NodeType::VelocityInlet && type != NodeType::PressureOutlet) return;
  if (!face) throw std::invalid_argument("inlet/outlet node is not on an axis-aligned face");
  if (type == NodeType::VelocityInlet) {
    std::array<T, 3> u{T(values.velocity[0]), T(values.velocity[1]), T(values.velocity[2])};
    apply_zou_he_velocity(model, *face, u, f);
  } else {
    apply_zou_he_pressure(model, *face, T(values.density), f);
  }
}

}  // namespace tlbm
