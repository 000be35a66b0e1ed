#pragma once
// Kernel timing and throughput metrics.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "tlbm/geometry.hpp"
#include "tlbm/solver.hpp"

namespace tlbm {

enum class BenchKernel : std::uint8_t { ReadWriteOnly, PropagationOnly, LBGK, MRT };

std::string_view bench_kernel_name(BenchKernel k);
/// Throws std::invalid_argument for unknown names (rw-only, propagation, lbgk, mrt).
BenchKernel parse_bench_kernel(std::string_view name);

/// Adjusts kernel and collision model of `base` for the given variant.
SimulationConfig bench_config(SimulationConfig base, BenchKernel k);

/// Millions of non-solid node updates per second.
double mflups(std::size_t non_solid_nodes, double seconds_per_iteration);
/// Fraction of `reference_bandwidth` (bytes/s) implied by `mflups_value`
/// at `bytes_per_node` transferred per node update.
double bandwidth_utilization(double mflups_value, double bytes_per_node, double reference_bandwidth);

struct BenchResult {
  BenchKernel kernel = BenchKernel::LBGK;
  std::size_t non_solid_nodes = 0;
  std::vector<double> seconds;  // one entry per iteration
  double mean = 0.0, min = 0.0, max = 0.0;
  /// Wall time of the whole timed loop, for judging timer overhead.
  double loop_seconds = 0.0;
  double mflups = 0.0;
  double bytes_per_node = 0.0;
  std::optional<double> utilization;
};

/// Runs `repetitions` steps of `kernel` on `g`, timing each one.
BenchResult run_bench(const Geometry& g, const SimulationConfig& base, BenchKernel kernel, int repetitions,
                      std::optional<double> reference_bandwidth = std::nullopt);

}  // namespace tlbm
