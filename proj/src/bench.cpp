#include "tlbm/bench.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <stdexcept>
#include <string>

#include "tlbm/txmodel.hpp"

namespace tlbm {

std::string_view bench_kernel_name(BenchKernel k) {
  switch (k) {
    case BenchKernel::ReadWriteOnly: return "rw-only";
    case BenchKernel::PropagationOnly: return "propagation";
    case BenchKernel::LBGK: return "lbgk";
    case BenchKernel::MRT: return "mrt";
  }
  return "?";
}

BenchKernel parse_bench_kernel(std::string_view name) {
  for (auto k : {BenchKernel::ReadWriteOnly, BenchKernel::PropagationOnly, BenchKernel::LBGK, BenchKernel::MRT})
    if (bench_kernel_name(k) == name) return k;
  throw std::invalid_argument("unknown kernel '" + std::string(name) + "'");
}

SimulationConfig bench_config(SimulationConfig base, BenchKernel k) {
  switch (k) {
    case BenchKernel::ReadWriteOnly: base.kernel = KernelKind::ReadWriteOnly; break;
    case BenchKernel::PropagationOnly: base.kernel = KernelKind::PropagationOnly; break;
    case BenchKernel::LBGK:
      base.kernel = KernelKind::Full;
      base.collision = CollisionModel::LBGK;
      break;
    case BenchKernel::MRT:
      base.kernel = KernelKind::Full;
      base.collision = CollisionModel::MRT;
      break;
  }
  return base;
}

double mflups(std::size_t non_solid_nodes, double seconds_per_iteration) {
  if (!(seconds_per_iteration > 0.0)) throw std::invalid_argument("iteration time must be positive");
  return double(non_solid_nodes) / seconds_per_iteration / 1e6;
}

double bandwidth_utilization(double mflups_value, double bytes_per_node, double reference_bandwidth) {
  if (!(reference_bandwidth > 0.0)) throw std::invalid_argument("reference bandwidth must be positive");
  return mflups_value * 1e6 * bytes_per_node / reference_bandwidth;
}

namespace {

template <class T>
BenchResult timed(const Geometry& g, const SimulationConfig& cfg, int repetitions) {
  using clock = std::chrono::steady_clock;
  Simulation<T> sim(g, cfg);
  BenchResult r;
  r.non_solid_nodes = sim.non_solid_nodes();
  r.seconds.reserve(repetitions);
  const auto loop_start = clock::now();
  for (int i = 0; i < repetitions; ++i) {
    const auto t0 = clock::now();
    sim.step();
    const auto t1 = clock::now();
    r.seconds.push_back(std::chrono::duration<double>(t1 - t0).count());
  }
  r.loop_seconds = std::chrono::duration<double>(clock::now() - loop_start).count();
  return r;
}

}  // namespace

BenchResult run_bench(const Geometry& g, const SimulationConfig& base, BenchKernel kernel, int repetitions,
                      std::optional<double> reference_bandwidth) {
  if (repetitions <= 0) throw std::invalid_argument("repetitions must be positive");
  const SimulationConfig cfg = bench_config(base, kernel);
  BenchResult r = cfg.precision == Precision::F64 ? timed<double>(g, cfg, repetitions) : timed<float>(g, cfg, repetitions);
  r.kernel = kernel;
  r.mean = std::accumulate(r.seconds.begin(), r.seconds.end(), 0.0) / double(r.seconds.size());
  r.min = *std::min_element(r.seconds.begin(), r.seconds.end());
  r.max = *std::max_element(r.seconds.begin(), r.seconds.end());
  r.mflups = mflups(r.non_solid_nodes, r.mean);
  r.bytes_per_node = double(b_node(kQ, bytes_per_value(cfg.precision)));
  if (reference_bandwidth) r.utilization = bandwidth_utilization(r.mflups, r.bytes_per_node, *reference_bandwidth);
  return r;
}

}  // namespace tlbm
