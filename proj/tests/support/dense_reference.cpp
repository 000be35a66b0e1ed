#include "dense_reference.hpp"

#include <random>

namespace tlbm::testing {

DenseReference::DenseReference(const Geometry& g, const SimulationConfig& cfg)
    : g_(g), cfg_(cfg), rates_(cfg.mrt_rates.value_or(default_mrt_rates(cfg.tau))) {
  for (auto& f : f_) {
    f.assign(g_.size() * kQ, 0.0);
    for (std::size_t n = 0; n < g_.size(); ++n)
      for (int q = 0; q < kQ; ++q) f[n * kQ + q] = kWeights<double>[q];
  }
}

Pdf<double> DenseReference::pdf(int x, int y, int z) const {
  Pdf<double> f{};
  const std::size_t n = g_.linear(x, y, z);
  for (int q = 0; q < kQ; ++q) f[q] = at(cur_, n, q);
  return f;
}

void DenseReference::set_pdf(int x, int y, int z, const Pdf<double>& f) {
  const std::size_t n = g_.linear(x, y, z);
  for (int q = 0; q < kQ; ++q) at(cur_, n, q) = f[q];
}

void DenseReference::step() {
  const int nxt = 1 - cur_;
  for (int z = 0; z < g_.nz(); ++z)
    for (int y = 0; y < g_.ny(); ++y)
      for (int x = 0; x < g_.nx(); ++x) {
        const NodeType type = g_.at(x, y, z);
        if (is_solid(type)) continue;
        const std::size_t n = g_.linear(x, y, z);
        Pdf<double> f{};
        for (int q = 0; q < kQ; ++q) {
          const Int3 e = vec(q);
          const int sx = x - e.x, sy = y - e.y, sz = z - e.z;
          if (is_solid(g_.at_or_solid(sx, sy, sz)))
            f[q] = at(cur_, n, opposite(q));
          else
            f[q] = at(cur_, g_.linear(sx, sy, sz), q);
        }
        if (type == NodeType::VelocityInlet || type == NodeType::PressureOutlet)
          apply_boundary<double>(cfg_.fluid, type, find_boundary_face(g_, x, y, z), g_.boundary_values(n), f);
        const Pdf<double> post = cfg_.collision == CollisionModel::LBGK ? collide_lbgk(cfg_.fluid, cfg_.tau, f)
                                                                       : collide_mrt(cfg_.fluid, rates_, f);
        for (int q = 0; q < kQ; ++q) at(nxt, n, q) = post[q];
      }
  cur_ = nxt;
}

Geometry random_geometry(int nx, int ny, int nz, unsigned seed, double solid_fraction, double wall_fraction) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Geometry g(nx, ny, nz, NodeType::Fluid);
  // Solid blobs: boxes of random size, so that some tiles end up empty.
  const int blobs = 1 + int(rng() % 4);
  for (int b = 0; b < blobs; ++b) {
    const int x0 = int(rng() % nx), y0 = int(rng() % ny), z0 = int(rng() % nz);
    const int sx = 2 + int(rng() % 8), sy = 2 + int(rng() % 8), sz = 2 + int(rng() % 8);
    for (int z = z0; z < std::min(nz, z0 + sz); ++z)
      for (int y = y0; y < std::min(ny, y0 + sy); ++y)
        for (int x = x0; x < std::min(nx, x0 + sx); ++x) g.set(x, y, z, NodeType::Solid);
  }
  for (int z = 0; z < nz; ++z)
    for (int y = 0; y < ny; ++y)
      for (int x = 0; x < nx; ++x) {
        const double r = u(rng);
        if (r < solid_fraction * 0.3) g.set(x, y, z, NodeType::Solid);
        else if (r < solid_fraction * 0.3 + wall_fraction && !is_solid(g.at(x, y, z)))
          g.set(x, y, z, NodeType::BounceBackWall);
      }
  return g;
}

}  // namespace tlbm::testing
