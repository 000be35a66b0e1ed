#include "tlbm/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace tlbm {

void SimulationConfig::validate() const {
  if (!(tau > 0.5)) throw std::invalid_argument("tau must exceed 0.5 for positive viscosity");
  if (!(u_max_guard > 0.0)) throw std::invalid_argument("velocity guard must be positive");
  if (workers < 0) throw std::invalid_argument("worker count must be non-negative");
}

namespace {

/// For every direction and node: which of the 27 neighbour tiles holds the
/// pull source, and the source's XYZ index inside that tile.
struct GatherMap {
  std::uint8_t tile[kQ][kTileNodes];
  std::uint8_t local[kQ][kTileNodes];
};

constexpr GatherMap kGatherMap = [] {
  GatherMap m{};
  for (int q = 0; q < kQ; ++q) {
    const Int3 e = vec(q);
    for (int n = 0; n < kTileNodes; ++n) {
      const int sx = (n & 3) - e.x, sy = ((n >> 2) & 3) - e.y, sz = (n >> 4) - e.z;
      m.tile[q][n] = std::uint8_t(((sx >> 2) + 1) + 3 * ((sy >> 2) + 1) + 9 * ((sz >> 2) + 1));
      m.local[q][n] = std::uint8_t((sx & 3) + 4 * (sy & 3) + 16 * (sz & 3));
    }
  }
  return m;
}();

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : int(hw);
}

}  // namespace

template <class T>
Simulation<T>::Simulation(const Geometry& g, const SimulationConfig& cfg) : cfg_(cfg), geometry_(g) {
  cfg_.validate();
  if ((sizeof(T) == 8) != (cfg_.precision == Precision::F64))
    throw std::invalid_argument("simulation precision does not match the configured precision");
  tiles_ = build_tiling(geometry_, kTileEdge);
  const std::size_t tn = tiles_.tile_count();
  const LayoutTableKind table_kind = cfg_.layout.value_or(default_table<T>());
  fields_ = FieldStore<T>(tn, LayoutTable::make(table_kind));

  isa_ = resolve_isa(cfg_.isa);
  const MrtRates rates = cfg_.mrt_rates.value_or(default_mrt_rates(cfg_.tau));
  params_ = make_collide_params<T>(cfg_.tau, rates);
  collide_ = collide_kernel<T>(isa_, cfg_.collision, cfg_.fluid);

  node_types_.assign(tn * kTileNodes, NodeType::Solid);
  neighbours_.resize(tn);
  boundary_begin_.assign(tn + 1, 0);
  identity_order_.resize(tn);
  for (std::size_t t = 0; t < tn; ++t) {
    identity_order_[t] = static_cast<std::uint32_t>(t);
    const Int3 c = tiles_.non_empty[t];
    const int tx = c.x / kTileEdge, ty = c.y / kTileEdge, tz = c.z / kTileEdge;
    for (int dz = -1; dz <= 1; ++dz)
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx)
          neighbours_[t][(dx + 1) + 3 * (dy + 1) + 9 * (dz + 1)] = tiles_.tile_at(tx + dx, ty + dy, tz + dz);

    boundary_begin_[t] = static_cast<std::uint32_t>(boundary_.size());
    for (int n = 0; n < kTileNodes; ++n) {
      const int x = c.x + (n & 3), y = c.y + ((n >> 2) & 3), z = c.z + (n >> 4);
      const NodeType type = geometry_.at_or_solid(x, y, z);
      node_types_[t * kTileNodes + n] = type;
      non_solid_ += !is_solid(type);
      if (type == NodeType::VelocityInlet || type == NodeType::PressureOutlet) {
        auto face = find_boundary_face(geometry_, x, y, z);
        if (!face)
          throw std::invalid_argument("inlet/outlet node (" + std::to_string(x) + "," + std::to_string(y) + "," +
                                      std::to_string(z) + ") is not on an axis-aligned face");
        boundary_.push_back({static_cast<std::uint8_t>(n), type, *face,
                             geometry_.boundary_values(geometry_.linear(x, y, z))});
      }
    }
  }
  boundary_begin_[tn] = static_cast<std::uint32_t>(boundary_.size());

  solid_mask_.assign(tn, 0);
  bounce_mask_.assign(tn, {});
  for (std::size_t t = 0; t < tn; ++t) {
    const auto& nb = neighbours_[t];
    for (int n = 0; n < kTileNodes; ++n)
      if (is_solid(node_types_[t * kTileNodes + n])) solid_mask_[t] |= std::uint64_t(1) << n;
    for (int q = 0; q < kQ; ++q)
      for (int n = 0; n < kTileNodes; ++n) {
        const std::int32_t src = nb[kGatherMap.tile[q][n]];
        if (src == TileGrid::kEmpty || is_solid(node_types_[std::size_t(src) * kTileNodes + kGatherMap.local[q][n]]))
          bounce_mask_[t][q] |= std::uint64_t(1) << n;
      }
  }

  // Cold start: equilibrium at rest in both copies.
  for (int copy = 0; copy < 2; ++copy)
    for (std::size_t t = 0; t < tn; ++t)
      for (int q = 0; q < kQ; ++q) std::fill_n(fields_.block(copy, t, q), kTileNodes, kWeights<T>[q]);
}

template <class T>
std::pair<std::size_t, int> Simulation<T>::locate(int x, int y, int z) const {
  if (!geometry_.inside(x, y, z)) throw std::out_of_range("node outside the geometry");
  const std::int32_t t = tiles_.tile_at(x / kTileEdge, y / kTileEdge, z / kTileEdge);
  if (t == TileGrid::kEmpty) throw std::out_of_range("node lies in an empty tile");
  return {static_cast<std::size_t>(t), (x & 3) + 4 * (y & 3) + 16 * (z & 3)};
}

template <class T>
Pdf<T> Simulation<T>::node_pdf(int x, int y, int z) const {
  auto [t, n] = locate(x, y, z);
  Pdf<T> f{};
  for (int q = 0; q < kQ; ++q) f[q] = fields_.at(current_, t, q, n);
  return f;
}

template <class T>
void Simulation<T>::set_node_pdf(int x, int y, int z, const Pdf<T>& f) {
  auto [t, n] = locate(x, y, z);
  for (int q = 0; q < kQ; ++q) fields_.at(current_, t, q, n) = f[q];
}

template <class T>
Macroscopics<T> Simulation<T>::node_macroscopics(int x, int y, int z) const {
  return macroscopic(cfg_.fluid, node_pdf(x, y, z));
}

template <class T>
MacroField Simulation<T>::macroscopic_field() const {
  MacroField m;
  m.nx = geometry_.nx();
  m.ny = geometry_.ny();
  m.nz = geometry_.nz();
  const std::size_t n = geometry_.size();
  m.types = geometry_.types();
  m.rho.assign(n, 0.0);
  m.ux.assign(n, 0.0);
  m.uy.assign(n, 0.0);
  m.uz.assign(n, 0.0);
  for (std::size_t t = 0; t < tiles_.tile_count(); ++t) {
    const Int3 c = tiles_.non_empty[t];
    for (int node = 0; node < kTileNodes; ++node) {
      if (is_solid(node_types_[t * kTileNodes + node])) continue;
      const int x = c.x + (node & 3), y = c.y + ((node >> 2) & 3), z = c.z + (node >> 4);
      Pdf<T> f{};
      for (int q = 0; q < kQ; ++q) f[q] = fields_.at(current_, t, q, node);
      const auto mac = macroscopic(cfg_.fluid, f);
      const std::size_t i = geometry_.linear(x, y, z);
      m.rho[i] = double(mac.rho);
      m.ux[i] = double(mac.u[0]);
      m.uy[i] = double(mac.u[1]);
      m.uz[i] = double(mac.u[2]);
    }
  }
  return m;
}

template <class T>
double Simulation<T>::total_mass() const {
  double sum = 0.0;
  for (std::size_t t = 0; t < tiles_.tile_count(); ++t)
    for (int node = 0; node < kTileNodes; ++node) {
      if (is_solid(node_types_[t * kTileNodes + node])) continue;
      for (int q = 0; q < kQ; ++q) sum += double(fields_.at(current_, t, q, node));
    }
  return sum;
}

template <class T>
void Simulation<T>::gather(std::size_t tile, TileBuffer<T>& buf) const {
  const auto& nb = neighbours_[tile];
  const std::uint64_t solid = solid_mask_[tile];
  const LayoutTable& table = fields_.table();
  const std::size_t tn = tiles_.tile_count();
  const T* base = fields_.values().data();

  for (int q = 0; q < kQ; ++q) {
    // Block of direction q in each neighbour tile of the current copy.
    const T* blocks[27];
    for (int i = 0; i < 27; ++i)
      blocks[i] = nb[i] == TileGrid::kEmpty ? nullptr : base + block_base(tn, current_, std::size_t(nb[i]), q);
    const auto& off_q = table.offset[q];
    const auto& src_tile = kGatherMap.tile[q];
    const auto& src_local = kGatherMap.local[q];
    const std::uint64_t bounce = bounce_mask_[tile][q];
    T* out = buf.f[q];
    if ((bounce | solid) == 0) {
      for (int n = 0; n < kTileNodes; ++n) out[n] = blocks[src_tile[n]][off_q[src_local[n]]];
      continue;
    }
    const int o = opposite(q);
    const T* own_opp = base + block_base(tn, current_, tile, o);
    const auto& off_o = table.offset[o];
    for (int n = 0; n < kTileNodes; ++n) {
      const std::uint64_t bit = std::uint64_t(1) << n;
      if (solid & bit)
        out[n] = kWeights<T>[q];
      else if (bounce & bit)
        out[n] = own_opp[off_o[n]];  // halfway bounce-back
      else
        out[n] = blocks[src_tile[n]][off_q[src_local[n]]];
    }
  }
}

template <class T>
void Simulation<T>::process_tile(std::size_t tile, TileBuffer<T>& buf, Accum& acc) {
  const int next = 1 - current_;
  const NodeType* types = &node_types_[tile * kTileNodes];
  const std::uint64_t solid = solid_mask_[tile];
  const LayoutTable& table = fields_.table();

  if (cfg_.kernel == KernelKind::ReadWriteOnly) {
    for (int q = 0; q < kQ; ++q) {
      const T* src = fields_.block(current_, tile, q);
      T* dst = fields_.block(next, tile, q);
      const auto& off = table.offset[q];
      if (solid == 0) {
        std::copy_n(src, kTileNodes, dst);
        continue;
      }
      for (int n = 0; n < kTileNodes; ++n)
        if (!(solid >> n & 1)) dst[off[n]] = src[off[n]];
    }
    return;
  }

  gather(tile, buf);

  if (cfg_.kernel == KernelKind::Full) {
    for (std::uint32_t b = boundary_begin_[tile]; b < boundary_begin_[tile + 1]; ++b) {
      const BoundaryNode& bn = boundary_[b];
      Pdf<T> f{};
      for (int q = 0; q < kQ; ++q) f[q] = buf.f[q][bn.node];
      apply_boundary<T>(cfg_.fluid, bn.type, bn.face, bn.values, f);
      for (int q = 0; q < kQ; ++q) buf.f[q][bn.node] = f[q];
    }
    collide_(params_, buf);
    for (int n = 0; n < kTileNodes; ++n) {
      if (is_solid(types[n])) continue;
      const T rho = buf.rho[n], usq = buf.usq[n];
      if (!std::isfinite(rho) || !std::isfinite(usq) ||
          (cfg_.fluid == FluidModel::QuasiCompressible && !(rho > T(0))))
        acc.diverged = true;
      else
        acc.max_usq = std::max(acc.max_usq, double(usq));
    }
  }

  for (int q = 0; q < kQ; ++q) {
    T* dst = fields_.block(next, tile, q);
    const auto& off = table.offset[q];
    const T* src = buf.f[q];
    if (solid == 0) {
      for (int n = 0; n < kTileNodes; ++n) dst[off[n]] = src[n];
      continue;
    }
    for (int n = 0; n < kTileNodes; ++n)
      if (!(solid >> n & 1)) dst[off[n]] = src[n];
  }
}

template <class T>
void Simulation<T>::run_tiles(std::span<const std::uint32_t> order) {
  const int workers = std::min<int>(resolve_workers(cfg_.workers), std::max<int>(1, int(order.size())));
  std::vector<Accum> accs(workers);
  auto work = [&](int w) {
    auto buf = std::make_unique<TileBuffer<T>>();
    const std::size_t begin = order.size() * w / workers, end = order.size() * (w + 1) / workers;
    for (std::size_t i = begin; i < end; ++i) process_tile(order[i], *buf, accs[w]);
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (int w = 1; w < workers; ++w) pool.emplace_back(work, w);
    work(0);
  }

  Accum total;
  for (const Accum& a : accs) {
    total.diverged = total.diverged || a.diverged;
    total.max_usq = std::max(total.max_usq, a.max_usq);
  }
  if (total.diverged) throw SimulationDiverged(iteration_ + 1, "simulation diverged (NaN or non-positive density)");
  diag_.max_u = std::sqrt(total.max_usq);
  diag_.guard_violated = diag_.max_u > cfg_.u_max_guard;
  current_ = 1 - current_;
  ++iteration_;
}

template <class T>
void Simulation<T>::step() {
  run_tiles(identity_order_);
}

template <class T>
void Simulation<T>::step(std::span<const std::uint32_t> tile_order) {
  if (tile_order.size() != tiles_.tile_count()) throw std::invalid_argument("tile order must cover every tile once");
  std::vector<bool> seen(tiles_.tile_count(), false);
  for (std::uint32_t t : tile_order) {
    if (t >= tiles_.tile_count() || seen[t]) throw std::invalid_argument("tile order must be a permutation");
    seen[t] = true;
  }
  run_tiles(tile_order);
}

template class Simulation<float>;
template class Simulation<double>;

double relative_velocity_change(const MacroField& prev, const MacroField& cur) {
  if (prev.ux.size() != cur.ux.size()) throw std::invalid_argument("snapshot sizes differ");
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < cur.ux.size(); ++i) {
    const double dx = cur.ux[i] - prev.ux[i], dy = cur.uy[i] - prev.uy[i], dz = cur.uz[i] - prev.uz[i];
    num += dx * dx + dy * dy + dz * dz;
    den += cur.ux[i] * cur.ux[i] + cur.uy[i] * cur.uy[i] + cur.uz[i] * cur.uz[i];
  }
  if (den == 0.0) return num == 0.0 ? 0.0 : INFINITY;
  return std::sqrt(num / den);
}

template <class T>
RunResult run(Simulation<T>& sim, const RunOptions& opts, const std::function<void(const Simulation<T>&)>& on_output) {
  RunResult r;
  std::optional<MacroField> prev;
  if (opts.convergence_every > 0) prev = sim.macroscopic_field();
  if (on_output && opts.output_every > 0) on_output(sim);
  for (std::uint64_t k = 1; k <= opts.iterations; ++k) {
    sim.step();
    ++r.iterations;
    const StepDiagnostics& d = sim.last_diagnostics();
    r.max_u = std::max(r.max_u, d.max_u);
    if (d.guard_violated) {
      ++r.guard_violations;
      if (!r.first_guard_iteration) r.first_guard_iteration = sim.iteration();
    }
    if (on_output && opts.output_every > 0 && k % opts.output_every == 0) on_output(sim);
    if (opts.convergence_every > 0 && k % opts.convergence_every == 0) {
      MacroField cur = sim.macroscopic_field();
      r.last_change = relative_velocity_change(*prev, cur);
      prev = std::move(cur);
      if (opts.convergence_tol > 0.0 && r.last_change < opts.convergence_tol) {
        r.converged = true;
        break;
      }
    }
  }
  return r;
}

template RunResult run<float>(Simulation<float>&, const RunOptions&,
                              const std::function<void(const Simulation<float>&)>&);
template RunResult run<double>(Simulation<double>&, const RunOptions&,
                               const std::function<void(const Simulation<double>&)>&);

}  // namespace tlbm
