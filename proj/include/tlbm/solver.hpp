#pragma once
// Fused pull-scheme LBM step over non-empty tiles.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "tlbm/geometry.hpp"
#include "tlbm/kernels.hpp"
#include "tlbm/layout.hpp"
#include "tlbm/physics.hpp"
#include "tlbm/tiling.hpp"

namespace tlbm {

/// Full LBM, or one of the two reduced benchmark kernels: gather + store
/// without arithmetic, and load/store of the node's own values only.
enum class KernelKind : std::uint8_t { Full, PropagationOnly, ReadWriteOnly };

struct SimulationConfig {
  CollisionModel collision = CollisionModel::LBGK;
  FluidModel fluid = FluidModel::Incompressible;
  double tau = 0.6;
  /// Defaults to default_mrt_rates(tau).
  std::optional<MrtRates> mrt_rates;
  Precision precision = Precision::F64;
  double u_max_guard = 0.05;
  /// Defaults to optimized for f64 and all-XYZ for f32.
  std::optional<LayoutTableKind> layout;
  /// 0 uses the available hardware parallelism.
  int workers = 1;
  KernelIsa isa = KernelIsa::Auto;
  KernelKind kernel = KernelKind::Full;

  /// Throws std::invalid_argument for tau <= 0.5 or non-positive guard.
  void validate() const;
};

struct StepDiagnostics {
  double max_u = 0.0;
  bool guard_violated = false;
};

/// Macroscopic fields on the dense node grid; solid nodes hold zeros.
struct MacroField {
  int nx = 0, ny = 0, nz = 0;
  std::vector<NodeType> types;
  std::vector<double> rho, ux, uy, uz;
};

template <class T>
class Simulation {
 public:
  Simulation(const Geometry& g, const SimulationConfig& cfg);

  /// One iteration over all tiles. Throws SimulationDiverged on NaN or, for the
  /// quasi-compressible model, non-positive density.
  void step();
  /// Same as step() with an explicit tile processing order.
  void step(std::span<const std::uint32_t> tile_order);

  std::uint64_t iteration() const { return iteration_; }
  int current_copy() const { return current_; }
  const SimulationConfig& config() const { return cfg_; }
  const Geometry& geometry() const { return geometry_; }
  const TileGrid& tiles() const { return tiles_; }
  const FieldStore<T>& fields() const { return fields_; }
  KernelIsa isa() const { return isa_; }
  const StepDiagnostics& last_diagnostics() const { return diag_; }
  std::size_t non_solid_nodes() const { return non_solid_; }

  Pdf<T> node_pdf(int x, int y, int z) const;
  void set_node_pdf(int x, int y, int z, const Pdf<T>& f);
  Macroscopics<T> node_macroscopics(int x, int y, int z) const;
  MacroField macroscopic_field() const;
  /// Sum of all f_i over non-solid nodes of the current copy.
  double total_mass() const;

 private:
  struct BoundaryNode {
    std::uint8_t node;
    NodeType type;
    BoundaryFace face;
    BoundaryValues values;
  };
  struct Accum {
    double max_usq = 0.0;
    bool diverged = false;
  };

  std::pair<std::size_t, int> locate(int x, int y, int z) const;
  void run_tiles(std::span<const std::uint32_t> order);
  void process_tile(std::size_t tile, TileBuffer<T>& buf, Accum& acc);
  void gather(std::size_t tile, TileBuffer<T>& buf) const;

  SimulationConfig cfg_;
  Geometry geometry_;
  TileGrid tiles_;
  FieldStore<T> fields_;
  /// Node types per tile, 64 entries in XYZ order.
  std::vector<NodeType> node_types_;
  /// 3x3x3 neighbourhood of tile indices, (dx+1) + 3(dy+1) + 9(dz+1).
  std::vector<std::array<std::int32_t, 27>> neighbours_;
  /// Per tile: bit n set when node n is solid.
  std::vector<std::uint64_t> solid_mask_;
  /// Per tile and direction: bit n set when node n's pull source is solid,
  /// off-domain or in an empty tile.
  std::vector<std::array<std::uint64_t, kQ>> bounce_mask_;
  std::vector<std::uint32_t> boundary_begin_;
  std::vector<BoundaryNode> boundary_;
  std::vector<std::uint32_t> identity_order_;
  CollideParams<T> params_{};
  CollideFn<T> collide_ = nullptr;
  KernelIsa isa_ = KernelIsa::Scalar;
  std::size_t non_solid_ = 0;
  std::uint64_t iteration_ = 0;
  int current_ = 0;
  StepDiagnostics diag_{};
};

extern template class Simulation<float>;
extern template class Simulation<double>;

struct RunOptions {
  std::uint64_t iterations = 0;
  /// Relative L2 velocity change is evaluated every this many steps (0 = never).
  std::uint64_t convergence_every = 0;
  /// Stops early once the change drops below this value.
  double convergence_tol = 0.0;
  std::uint64_t output_every = 0;
};

struct RunResult {
  std::uint64_t iterations = 0;
  bool converged = false;
  double last_change = 0.0;
  std::uint64_t guard_violations = 0;
  std::optional<std::uint64_t> first_guard_iteration;
  double max_u = 0.0;
};

/// Relative L2 difference between the velocity fields of two snapshots.
double relative_velocity_change(const MacroField& prev, const MacroField& cur);

/// Iterates step(). The callback fires for the initial state and then every
/// output_every iterations.
template <class T>
RunResult run(Simulation<T>& sim, const RunOptions& opts,
              const std::function<void(const Simulation<T>&)>& on_output = {});

}  // namespace tlbm
