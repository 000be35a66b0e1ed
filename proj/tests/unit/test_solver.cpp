#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <random>

#include "dense_reference.hpp"
#include "tlbm/solver.hpp"

using namespace tlbm;
using tlbm::testing::DenseReference;

namespace {

SimulationConfig config(CollisionModel c, FluidModel f, LayoutTableKind layout, double tau = 0.8) {
  SimulationConfig cfg;
  cfg.collision = c;
  cfg.fluid = f;
  cfg.tau = tau;
  cfg.layout = layout;
  cfg.precision = Precision::F64;
  return cfg;
}

double max_difference(const Simulation<double>& sim, const DenseReference& ref) {
  const Geometry& g = ref.geometry();
  double diff = 0.0;
  for (int z = 0; z < g.nz(); ++z)
    for (int y = 0; y < g.ny(); ++y)
      for (int x = 0; x < g.nx(); ++x) {
        if (is_solid(g.at(x, y, z))) continue;
        const auto a = sim.node_pdf(x, y, z);
        const auto b = ref.pdf(x, y, z);
        for (int q = 0; q < kQ; ++q) diff = std::max(diff, std::abs(a[q] - b[q]));
      }
  return diff;
}

bool fields_identical(const FieldStore<double>& a, const FieldStore<double>& b) {
  auto va = a.values(), vb = b.values();
  return va.size() == vb.size() && std::equal(va.begin(), va.end(), vb.begin());
}

}  // namespace

TEST_CASE("config validation") {
  SimulationConfig cfg;
  cfg.tau = 0.5;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.tau = 0.6;
  cfg.u_max_guard = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.u_max_guard = 0.05;
  CHECK_NOTHROW(cfg.validate());
  cfg.precision = Precision::F32;
  CHECK_THROWS_AS(Simulation<double>(Geometry(4, 4, 4, NodeType::Fluid), cfg), std::invalid_argument);
}

TEST_CASE("rest state of a sealed box is a fixed point") {
  Geometry g(9, 7, 6, NodeType::Fluid);
  for (auto c : {CollisionModel::LBGK, CollisionModel::MRT})
    for (auto f : {FluidModel::Incompressible, FluidModel::QuasiCompressible}) {
      Simulation<double> sim(g, config(c, f, LayoutTableKind::Optimized));
      for (int i = 0; i < 20; ++i) sim.step();
      const auto pdf = sim.node_pdf(3, 3, 3);
      for (int q = 0; q < kQ; ++q) CHECK(pdf[q] == doctest::Approx(kWeights<double>[q]).epsilon(1e-14));
      CHECK(sim.last_diagnostics().max_u < 1e-15);
    }
}

TEST_CASE("single tile matches the dense reference") {
  Geometry g(4, 4, 4, NodeType::Fluid);
  auto cfg = config(CollisionModel::LBGK, FluidModel::QuasiCompressible, LayoutTableKind::Optimized);
  Simulation<double> sim(g, cfg);
  DenseReference ref(g, cfg);
  tlbm::testing::perturb(sim, ref, 1);
  for (int i = 0; i < 10; ++i) {
    sim.step();
    ref.step();
  }
  CHECK(max_difference(sim, ref) <= 1e-13);
}

TEST_CASE("random geometries match the dense reference") {
  unsigned seed = 100;
  for (auto c : {CollisionModel::LBGK, CollisionModel::MRT})
    for (auto f : {FluidModel::Incompressible, FluidModel::QuasiCompressible})
      for (auto l : {LayoutTableKind::Optimized, LayoutTableKind::AllXYZ}) {
        ++seed;
        const Geometry g = tlbm::testing::random_geometry(13, 10, 9, seed);
        auto cfg = config(c, f, l, 0.7);
        Simulation<double> sim(g, cfg);
        DenseReference ref(g, cfg);
        tlbm::testing::perturb(sim, ref, seed);
        for (int i = 0; i < 5; ++i) {
          sim.step();
          ref.step();
        }
        CHECK(max_difference(sim, ref) <= 1e-13);
      }
}

TEST_CASE("inlet/outlet channel matches the dense reference") {
  ChannelSpec spec;
  spec.shape = ChannelShape::Square;
  spec.d = 6;
  spec.length = 12;
  spec.ends = ChannelEnds::InletOutlet;
  spec.inlet_velocity = 0.02;
  const Geometry g = generate_channel(spec);
  for (auto f : {FluidModel::Incompressible, FluidModel::QuasiCompressible}) {
    auto cfg = config(CollisionModel::MRT, f, LayoutTableKind::Optimized);
    Simulation<double> sim(g, cfg);
    DenseReference ref(g, cfg);
    for (int i = 0; i < 20; ++i) {
      sim.step();
      ref.step();
    }
    CHECK(max_difference(sim, ref) <= 1e-13);
  }
}

TEST_CASE("tile order and worker count do not change the result") {
  const Geometry g = tlbm::testing::random_geometry(20, 16, 12, 7);
  auto cfg = config(CollisionModel::MRT, FluidModel::QuasiCompressible, LayoutTableKind::Optimized);
  Simulation<double> a(g, cfg);
  cfg.workers = 4;
  Simulation<double> b(g, cfg);
  DenseReference dummy(g, cfg);
  tlbm::testing::perturb(a, dummy, 3);
  tlbm::testing::perturb(b, dummy, 3);
  std::vector<std::uint32_t> order(a.tiles().tile_count());
  std::iota(order.begin(), order.end(), 0u);
  std::mt19937 rng(11);
  for (int i = 0; i < 6; ++i) {
    std::shuffle(order.begin(), order.end(), rng);
    a.step(order);
    b.step();
  }
  CHECK(fields_identical(a.fields(), b.fields()));
}

TEST_CASE("tile order must be a permutation") {
  Simulation<double> sim(Geometry(8, 4, 4, NodeType::Fluid), SimulationConfig{});
  std::vector<std::uint32_t> bad = {0, 0};
  CHECK_THROWS_AS(sim.step(bad), std::invalid_argument);
  std::vector<std::uint32_t> short_order = {0};
  CHECK_THROWS_AS(sim.step(short_order), std::invalid_argument);
}

TEST_CASE("layouts give bit-identical fields") {
  const Geometry g = generate_cavity3d(16);
  auto cfg = config(CollisionModel::LBGK, FluidModel::Incompressible, LayoutTableKind::Optimized, 0.6);
  Simulation<double> a(g, cfg);
  cfg.layout = LayoutTableKind::AllXYZ;
  Simulation<double> b(g, cfg);
  for (int i = 0; i < 30; ++i) {
    a.step();
    b.step();
  }
  const MacroField ma = a.macroscopic_field(), mb = b.macroscopic_field();
  CHECK(ma.ux == mb.ux);
  CHECK(ma.rho == mb.rho);
}

TEST_CASE("mass is conserved in a sealed bounce-back box") {
  Geometry g(10, 9, 8, NodeType::Fluid);
  for (int x = 0; x < 10; ++x)
    for (int y = 0; y < 9; ++y) g.set(x, y, 0, NodeType::BounceBackWall);
  for (auto c : {CollisionModel::LBGK, CollisionModel::MRT})
    for (auto f : {FluidModel::Incompressible, FluidModel::QuasiCompressible}) {
      auto cfg = config(c, f, LayoutTableKind::Optimized);
      Simulation<double> sim(g, cfg);
      DenseReference dummy(g, cfg);
      tlbm::testing::perturb(sim, dummy, 5, 0.05);
      const double m0 = sim.total_mass();
      for (int i = 0; i < 200; ++i) sim.step();
      CHECK(std::abs(sim.total_mass() - m0) / m0 <= 1e-12);
    }
}

TEST_CASE("zero-velocity inlet behaves like a closed end") {
  ChannelSpec spec;
  spec.d = 6;
  spec.length = 8;
  spec.ends = ChannelEnds::InletOutlet;
  spec.inlet_velocity = 0.0;
  const Geometry g = generate_channel(spec);
  Simulation<double> sim(g, config(CollisionModel::LBGK, FluidModel::Incompressible, LayoutTableKind::Optimized));
  for (int i = 0; i < 50; ++i) sim.step();
  CHECK(sim.last_diagnostics().max_u < 1e-14);
}

TEST_CASE("guard flags velocities above the threshold") {
  Geometry g(8, 8, 8, NodeType::Fluid);
  auto cfg = config(CollisionModel::LBGK, FluidModel::Incompressible, LayoutTableKind::Optimized);
  cfg.u_max_guard = 0.05;
  auto uniform = [&](double ux) {
    auto sim = std::make_unique<Simulation<double>>(g, cfg);
    const auto f = equilibrium_all<double>(FluidModel::Incompressible, 1.0, {ux, 0.0, 0.0});
    for (int z = 0; z < 8; ++z)
      for (int y = 0; y < 8; ++y)
        for (int x = 0; x < 8; ++x) sim->set_node_pdf(x, y, z, f);
    sim->step();
    return sim;
  };
  // Interior nodes keep the uniform velocity for one step; wall nodes lose some.
  auto fast = uniform(0.051);
  CHECK(fast->last_diagnostics().guard_violated);
  CHECK(fast->last_diagnostics().max_u == doctest::Approx(0.051).epsilon(1e-12));
  auto calm = uniform(0.049);
  CHECK_FALSE(calm->last_diagnostics().guard_violated);
  CHECK(calm->last_diagnostics().max_u == doctest::Approx(0.049).epsilon(1e-12));
}

TEST_CASE("divergence reports the iteration") {
  Geometry g(4, 4, 4, NodeType::Fluid);
  auto cfg = config(CollisionModel::LBGK, FluidModel::QuasiCompressible, LayoutTableKind::Optimized);
  Simulation<double> sim(g, cfg);
  sim.step();
  Pdf<double> f{};
  f.fill(-1.0);
  sim.set_node_pdf(1, 1, 1, f);
  try {
    sim.step();
    FAIL("expected divergence");
  } catch (const SimulationDiverged& e) {
    CHECK(e.iteration() == 2);
  }
  Simulation<double> nan_sim(g, config(CollisionModel::LBGK, FluidModel::Incompressible, LayoutTableKind::Optimized));
  f.fill(std::nan(""));
  nan_sim.set_node_pdf(2, 2, 2, f);
  CHECK_THROWS_AS(nan_sim.step(), SimulationDiverged);
}

TEST_CASE("inlet on a non-axis-aligned face is rejected") {
  Geometry g(8, 8, 8, NodeType::Fluid);
  g.set(0, 0, 4, NodeType::VelocityInlet);  // two off-domain neighbours
  CHECK_THROWS_AS(Simulation<double>(g, SimulationConfig{}), std::invalid_argument);
  Geometry interior(8, 8, 8, NodeType::Fluid);
  interior.set(4, 4, 4, NodeType::PressureOutlet);  // no solid neighbour
  CHECK_THROWS_AS(Simulation<double>(interior, SimulationConfig{}), std::invalid_argument);
}

TEST_CASE("run with zero iterations leaves the state untouched") {
  const Geometry g = generate_cavity3d(8);
  Simulation<double> sim(g, SimulationConfig{});
  const auto before = sim.macroscopic_field();
  int calls = 0;
  RunOptions opts;
  opts.output_every = 1;
  const RunResult r = run<double>(sim, opts, [&](const Simulation<double>&) { ++calls; });
  CHECK(r.iterations == 0);
  CHECK(calls == 1);
  CHECK(sim.macroscopic_field().rho == before.rho);
}

TEST_CASE("run stops on convergence") {
  const Geometry g = generate_cavity3d(8, 0.01);
  Simulation<double> sim(g, config(CollisionModel::LBGK, FluidModel::Incompressible, LayoutTableKind::Optimized, 0.9));
  RunOptions opts;
  opts.iterations = 5000;
  opts.convergence_every = 50;
  opts.convergence_tol = 1e-6;
  const RunResult r = run<double>(sim, opts);
  CHECK(r.converged);
  CHECK(r.iterations < 5000);
  CHECK(r.last_change < 1e-6);
}

TEST_CASE("f32 simulation runs and stays close to f64") {
  const Geometry g = generate_cavity3d(12);
  SimulationConfig c64 = config(CollisionModel::LBGK, FluidModel::Incompressible, LayoutTableKind::Optimized, 0.6);
  SimulationConfig c32 = c64;
  c32.precision = Precision::F32;
  c32.layout.reset();
  Simulation<double> a(g, c64);
  Simulation<float> b(g, c32);
  for (int i = 0; i < 50; ++i) {
    a.step();
    b.step();
  }
  const auto ua = a.node_macroscopics(6, 6, 10).u;
  const auto ub = b.node_macroscopics(6, 6, 10).u;
  CHECK(std::abs(ua[0] - double(ub[0])) < 1e-5);
  CHECK(std::abs(ua[0]) > 1e-4);
}

TEST_CASE("lid-driven cavity is mirror symmetric across the y mid-plane") {
  const int b = 16;
  const Geometry g = generate_cavity3d(b);
  for (auto c : {CollisionModel::LBGK, CollisionModel::MRT}) {
    Simulation<double> sim(g, config(c, FluidModel::QuasiCompressible, LayoutTableKind::Optimized, 0.6));
    for (int i = 0; i < 200; ++i) sim.step();
    double worst = 0.0, peak = 0.0;
    for (int z = 0; z < b; ++z)
      for (int y = 0; y < b; ++y)
        for (int x = 0; x < b; ++x) {
          const auto u = sim.node_macroscopics(x, y, z).u;
          const auto m = sim.node_macroscopics(x, b - 1 - y, z).u;
          worst = std::max({worst, std::abs(u[0] - m[0]), std::abs(u[1] + m[1]), std::abs(u[2] - m[2])});
          peak = std::max(peak, std::abs(u[1]));
        }
    CHECK(worst <= 1e-6);
    CHECK(peak > 1e-4);
  }
}
