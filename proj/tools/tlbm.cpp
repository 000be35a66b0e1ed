// Command-line frontend: run, bench, tile-stats, count-tx, info.
// Exit codes: 0 ok, 2 usage, 3 divergence, 4 I/O.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "tlbm/bench.hpp"
#include "tlbm/geometry_spec.hpp"
#include "tlbm/io.hpp"
#include "tlbm/solver.hpp"
#include "tlbm/tiling.hpp"
#include "tlbm/txmodel.hpp"

using namespace tlbm;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitDiverged = 3;
constexpr int kExitIo = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonOptions {
  std::string geometry;
  std::string precision = "f64";
  std::string layout;
  int workers = 0;
  std::string isa = "auto";
};

struct RunArgs {
  std::string model = "lbgk";
  std::string fluid = "incompressible";
  double tau = 0.6;
  double u_guard = 0.05;
  std::uint64_t iters = 1000;
  std::string vtk;
  std::uint64_t vtk_every = 0;
  std::string csv;
  std::string slice_axis = "z";
  int slice_index = -1;
  std::uint64_t csv_every = 0;
  std::uint64_t converge_every = 0;
  double tol = 0.0;
};

struct BenchArgs {
  std::string kernel = "all";
  int reps = 100;
  std::optional<double> ref_bandwidth;
  std::string model = "lbgk";
  std::string fluid = "incompressible";
  double tau = 0.6;
  std::string csv;
};

struct TileStatsArgs {
  std::string channel;
};

struct CountTxArgs {
  std::string layout = "optimized";
};

const std::map<std::string, Precision> kPrecisions{{"f32", Precision::F32}, {"f64", Precision::F64}};
const std::map<std::string, LayoutTableKind> kLayouts{{"optimized", LayoutTableKind::Optimized},
                                                      {"xyz", LayoutTableKind::AllXYZ}};
const std::map<std::string, KernelIsa> kIsas{
    {"auto", KernelIsa::Auto}, {"scalar", KernelIsa::Scalar}, {"avx2", KernelIsa::Avx2}};
const std::map<std::string, CollisionModel> kModels{{"lbgk", CollisionModel::LBGK}, {"mrt", CollisionModel::MRT}};
const std::map<std::string, FluidModel> kFluids{{"incompressible", FluidModel::Incompressible},
                                                {"quasi", FluidModel::QuasiCompressible},
                                                {"quasi-compressible", FluidModel::QuasiCompressible}};
const std::map<std::string, Axis> kAxes{{"x", Axis::X}, {"y", Axis::Y}, {"z", Axis::Z}};

template <class V>
const V& lookup(const std::map<std::string, V>& m, const std::string& key, const char* what) {
  auto it = m.find(key);
  if (it == m.end()) throw UsageError(std::string("unknown ") + what + " '" + key + "'");
  return it->second;
}

Geometry load_geometry(const std::string& spec) {
  if (spec.empty()) throw UsageError("--geometry is required");
  try {
    return parse_geometry_spec(spec);
  } catch (const GeometryError& e) {
    if (spec.rfind("file:", 0) == 0) throw IoError(e.what());
    throw UsageError(e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

SimulationConfig base_config(const CommonOptions& c) {
  SimulationConfig cfg;
  cfg.precision = lookup(kPrecisions, c.precision, "precision");
  if (!c.layout.empty()) cfg.layout = lookup(kLayouts, c.layout, "layout");
  cfg.workers = c.workers;
  cfg.isa = lookup(kIsas, c.isa, "isa");
  return cfg;
}

std::string numbered(const std::string& path, std::uint64_t iteration) {
  const auto dot = path.find_last_of('.');
  const auto slash = path.find_last_of('/');
  char suffix[32];
  std::snprintf(suffix, sizeof suffix, "_%08llu", static_cast<unsigned long long>(iteration));
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path + suffix;
  return path.substr(0, dot) + suffix + path.substr(dot);
}

template <class T>
int run_simulation(const Geometry& g, const SimulationConfig& cfg, const RunArgs& a) {
  Simulation<T> sim(g, cfg);
  const Axis axis = lookup(kAxes, a.slice_axis, "axis");
  const int dims[3] = {g.nx(), g.ny(), g.nz()};
  const int slice = a.slice_index >= 0 ? a.slice_index : dims[int(axis)] / 2;
  if (slice >= dims[int(axis)]) throw UsageError("slice index outside the domain");

  auto write_outputs = [&](const Simulation<T>& s, bool final_state) {
    const bool vtk_due = !a.vtk.empty() && (final_state || (a.vtk_every && s.iteration() % a.vtk_every == 0));
    const bool csv_due = !a.csv.empty() && (final_state || (a.csv_every && s.iteration() % a.csv_every == 0));
    if (!vtk_due && !csv_due) return;
    const MacroField m = s.macroscopic_field();
    if (vtk_due) write_vtk_file(final_state ? a.vtk : numbered(a.vtk, s.iteration()), m);
    if (csv_due) write_csv_slice_file(final_state ? a.csv : numbered(a.csv, s.iteration()), m, axis, slice);
  };

  RunOptions opts;
  opts.iterations = a.iters;
  opts.convergence_every = a.converge_every;
  opts.convergence_tol = a.tol;
  const bool scheduled = a.vtk_every || a.csv_every;
  if (scheduled) opts.output_every = 1;
  const RunResult r = run<T>(sim, opts, [&](const Simulation<T>& s) { write_outputs(s, false); });
  write_outputs(sim, true);

  std::cout << "iterations," << r.iterations << "\n";
  std::cout << "converged," << (r.converged ? "yes" : "no") << "\n";
  std::cout << "last_change," << format_value(r.last_change) << "\n";
  std::cout << "max_u," << format_value(r.max_u) << "\n";
  std::cout << "guard_violations," << r.guard_violations << "\n";
  if (r.first_guard_iteration)
    std::cerr << "warning: |u| exceeded " << cfg.u_max_guard << " first at iteration " << *r.first_guard_iteration
              << "\n";
  return 0;
}

int cmd_run(const CommonOptions& c, const RunArgs& a) {
  const Geometry g = load_geometry(c.geometry);
  SimulationConfig cfg = base_config(c);
  cfg.collision = lookup(kModels, a.model, "model");
  cfg.fluid = lookup(kFluids, a.fluid, "fluid model");
  cfg.tau = a.tau;
  cfg.u_max_guard = a.u_guard;
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return cfg.precision == Precision::F64 ? run_simulation<double>(g, cfg, a) : run_simulation<float>(g, cfg, a);
}

int cmd_bench(const CommonOptions& c, const BenchArgs& a) {
  const Geometry g = load_geometry(c.geometry);
  SimulationConfig cfg = base_config(c);
  cfg.fluid = lookup(kFluids, a.fluid, "fluid model");
  cfg.tau = a.tau;
  std::vector<BenchKernel> kernels;
  if (a.kernel == "all") {
    kernels = {BenchKernel::ReadWriteOnly, BenchKernel::PropagationOnly, BenchKernel::LBGK, BenchKernel::MRT};
  } else {
    try {
      kernels = {parse_bench_kernel(a.kernel)};
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  if (a.reps <= 0) throw UsageError("--reps must be positive");
  if (a.ref_bandwidth && !(*a.ref_bandwidth > 0.0)) throw UsageError("--ref-bandwidth must be positive");

  std::ostringstream out;
  out << "kernel,precision,layout,isa,non_solid_nodes,repetitions,mean_s,min_s,max_s,timer_overhead_us,"
         "mflups,bytes_per_node,utilization\n";
  const std::string layout =
      cfg.layout ? (*cfg.layout == LayoutTableKind::Optimized ? "optimized" : "xyz")
                 : (cfg.precision == Precision::F64 ? "optimized" : "xyz");
  for (BenchKernel k : kernels) {
    const BenchResult r = run_bench(g, cfg, k, a.reps, a.ref_bandwidth);
    double summed = 0;
    for (double s : r.seconds) summed += s;
    const double overhead_us = (r.loop_seconds - summed) / double(r.seconds.size()) * 1e6;
    out << bench_kernel_name(k) << ',' << c.precision << ',' << layout << ',' << isa_name(resolve_isa(cfg.isa))
        << ',' << r.non_solid_nodes << ',' << a.reps << ',' << format_value(r.mean) << ',' << format_value(r.min)
        << ',' << format_value(r.max) << ',' << format_value(overhead_us) << ',' << format_value(r.mflups) << ','
        << r.bytes_per_node << ',' << (r.utilization ? format_value(*r.utilization) : std::string("")) << "\n";
  }
  if (a.csv.empty()) {
    std::cout << out.str();
  } else {
    std::ofstream f(a.csv, std::ios::binary);
    if (!(f << out.str())) throw IoError("cannot write '" + a.csv + "'");
  }
  return 0;
}

std::string format_eta(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

int cmd_tile_stats(const CommonOptions& c, const TileStatsArgs& a) {
  if (!a.channel.empty()) {
    const auto colon = a.channel.find(':');
    if (colon == std::string::npos) throw UsageError("--channel expects shape:d");
    const std::string shape = a.channel.substr(0, colon);
    int d = 0;
    try {
      d = std::stoi(a.channel.substr(colon + 1));
    } catch (const std::exception&) {
      throw UsageError("--channel expects shape:d");
    }
    if (d < 1) throw UsageError("channel size must be positive");
    ChannelShape s;
    if (shape == "square") s = ChannelShape::Square;
    else if (shape == "circular") s = ChannelShape::Circular;
    else throw UsageError("unknown channel shape '" + shape + "'");
    const SweepResult r = channel_tiling_sweep(s, d);
    std::cout << "shape,d,offset,eta_t\n";
    for (const auto& e : r.entries)
      std::cout << shape << ',' << d << ',' << e.offset_u << ':' << e.offset_v << ',' << format_eta(e.eta_t) << "\n";
    std::cout << shape << ',' << d << ",mean," << format_eta(r.mean) << "\n";
    return 0;
  }
  const Geometry g = load_geometry(c.geometry);
  const TileGrid tg = build_tiling(g);
  if (tg.tile_count() == 0) throw UsageError("geometry has no non-solid nodes");
  const TileStats st = tile_utilization(tg, g);
  const FacesEdges fe = faces_edges_per_tile(tg);
  std::cout << "metric,value\n";
  std::cout << "nodes," << g.size() << "\n";
  std::cout << "non_solid_nodes," << st.n_fn << "\n";
  std::cout << "porosity," << format_eta(g.porosity()) << "\n";
  std::cout << "tiles," << st.t_n << "\n";
  std::cout << "eta_t," << format_eta(st.eta_t) << "\n";
  std::cout << "overhead_generic," << format_eta(overhead_generic(st.eta_t)) << "\n";
  const int n_d = bytes_per_value(lookup(kPrecisions, c.precision, "precision"));
  const MemoryOverhead mo = overhead_memory(st.eta_t, kQ, n_d, 1);
  std::cout << "overhead_memory," << format_eta(mo.exact) << "\n";
  std::cout << "eta_f," << format_eta(fe.eta_f) << "\n";
  std::cout << "eta_e," << format_eta(fe.eta_e) << "\n";
  return 0;
}

int cmd_count_tx(const CommonOptions& c, const CountTxArgs& a) {
  const Precision p = lookup(kPrecisions, c.precision, "precision");
  const LayoutTableKind lk = lookup(kLayouts, a.layout, "layout");
  const LayoutTable table = LayoutTable::make(lk);
  if (!c.geometry.empty()) {
    const Geometry g = load_geometry(c.geometry);
    const TileGrid tg = build_tiling(g);
    const TransactionReport r = geometry_transaction_totals(tg, g, table, p);
    std::cout << "metric,value\n";
    std::cout << "tiles," << tg.tile_count() << "\n";
    std::cout << "writes," << r.writes << "\n";
    std::cout << "min_writes," << r.min_writes << "\n";
    std::cout << "data_reads," << r.data_reads << "\n";
    std::cout << "min_data_reads," << r.min_data_reads << "\n";
    std::cout << "node_type_reads_2byte," << r.node_type_reads << "\n";
    std::cout << "tilemap_values," << r.tile_map_values << "\n";
    std::cout << "total," << r.total_reads + r.writes << "\n";
    std::cout << "min_total," << r.min_total << "\n";
    std::cout << "overhead_pct," << format_eta(r.total_overhead * 100) << "\n";
    return 0;
  }
  const TransactionReport r = count_tile_overheads(table, p);
  std::cout << "direction,layout,precision,segments\n";
  for (int q = 0; q < kQ; ++q)
    std::cout << direction_name(q) << ',' << layout_name(table.kind[q]) << ',' << c.precision << ','
              << r.direction_reads[q] << "\n";
  std::cout << "TOTAL," << a.layout << ',' << c.precision << ',' << r.data_reads << "\n";
  std::cout << "MINIMUM," << a.layout << ',' << c.precision << ',' << r.min_data_reads << "\n";
  std::cout << "OVERHEAD_PCT," << a.layout << ',' << c.precision << ',' << format_eta(r.read_overhead * 100) << "\n";
  return 0;
}

int cmd_info(const CommonOptions& c) {
  std::cout << "avx2_compiled," << (avx2_compiled() ? "yes" : "no") << "\n";
  std::cout << "cpu_avx2," << (cpu_has_avx2() ? "yes" : "no") << "\n";
  std::cout << "isa_selected," << isa_name(resolve_isa(KernelIsa::Auto)) << "\n";
  if (c.geometry.empty()) return 0;
  const Geometry g = load_geometry(c.geometry);
  const TileGrid tg = build_tiling(g);
  const int n_d = bytes_per_value(lookup(kPrecisions, c.precision, "precision"));
  std::cout << "dims," << g.nx() << 'x' << g.ny() << 'x' << g.nz() << "\n";
  std::cout << "non_solid_nodes," << g.count_non_solid() << "\n";
  std::cout << "porosity," << format_eta(g.porosity()) << "\n";
  std::cout << "tiles," << tg.tile_count() << "\n";
  std::cout << "field_bytes," << 2ull * tg.tile_count() * kQ * kTileNodes * n_d << "\n";
  std::cout << "bytes_per_node," << b_node(kQ, n_d) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse-geometry D3Q19 lattice Boltzmann solver on 4^3 tiles"};
  app.require_subcommand(1);
  CommonOptions common;
  RunArgs run_args;
  BenchArgs bench_args;
  TileStatsArgs tile_args;
  CountTxArgs tx_args;

  auto add_common = [&](CLI::App* sub, bool geometry_required, bool storage_layout = true) {
    auto* opt = sub->add_option("--geometry", common.geometry,
                                "cavity:N[:lid] | channel:square|circular:d:offy:offz:len[:u_in] | "
                                "spheres:n:diam:porosity:seed | file:path");
    if (geometry_required) opt->required();
    sub->add_option("--precision", common.precision, "f32 or f64")->check(CLI::IsMember({"f32", "f64"}));
    if (storage_layout)
      sub->add_option("--layout", common.layout, "optimized or xyz")->check(CLI::IsMember({"optimized", "xyz"}));
    sub->add_option("--workers", common.workers, "worker threads, 0 = all cores")->check(CLI::NonNegativeNumber);
    sub->add_option("--isa", common.isa, "auto, scalar or avx2")->check(CLI::IsMember({"auto", "scalar", "avx2"}));
  };

  auto* run_cmd = app.add_subcommand("run", "run a simulation and write VTK/CSV output");
  add_common(run_cmd, true);
  run_cmd->add_option("--model", run_args.model, "lbgk or mrt")->check(CLI::IsMember({"lbgk", "mrt"}));
  run_cmd->add_option("--fluid", run_args.fluid, "incompressible or quasi")
      ->check(CLI::IsMember({"incompressible", "quasi", "quasi-compressible"}));
  run_cmd->add_option("--tau", run_args.tau, "relaxation time (> 0.5)");
  run_cmd->add_option("--u-guard", run_args.u_guard, "velocity guard threshold");
  run_cmd->add_option("--iters", run_args.iters, "iterations");
  run_cmd->add_option("--vtk", run_args.vtk, "final-state VTK file");
  run_cmd->add_option("--vtk-every", run_args.vtk_every, "also write numbered VTK files every N iterations");
  run_cmd->add_option("--csv", run_args.csv, "final-state CSV slice");
  run_cmd->add_option("--slice-axis", run_args.slice_axis, "x, y or z")->check(CLI::IsMember({"x", "y", "z"}));
  run_cmd->add_option("--slice-index", run_args.slice_index, "slice position (default: middle)");
  run_cmd->add_option("--csv-every", run_args.csv_every, "also write numbered CSV slices every N iterations");
  run_cmd->add_option("--converge-every", run_args.converge_every, "check velocity change every N iterations");
  run_cmd->add_option("--tol", run_args.tol, "stop when the relative velocity change drops below this");

  auto* bench_cmd = app.add_subcommand("bench", "time kernel variants");
  add_common(bench_cmd, true);
  bench_cmd->add_option("--kernel", bench_args.kernel, "rw-only, propagation, lbgk, mrt or all");
  bench_cmd->add_option("--reps", bench_args.reps, "timed iterations");
  bench_cmd->add_option("--ref-bandwidth", bench_args.ref_bandwidth, "reference memory bandwidth in bytes/s");
  bench_cmd->add_option("--fluid", bench_args.fluid, "incompressible or quasi")
      ->check(CLI::IsMember({"incompressible", "quasi", "quasi-compressible"}));
  bench_cmd->add_option("--tau", bench_args.tau, "relaxation time");
  bench_cmd->add_option("--csv", bench_args.csv, "write CSV here instead of stdout");

  auto* tile_cmd = app.add_subcommand("tile-stats", "tile utilization of a geometry or a channel sweep");
  add_common(tile_cmd, false);
  tile_cmd->add_option("--channel", tile_args.channel, "square:d or circular:d offset sweep");

  auto* tx_cmd = app.add_subcommand("count-tx", "32-byte transaction counts");
  add_common(tx_cmd, false, false);
  tx_cmd->add_option("--layout", tx_args.layout, "optimized or xyz")->check(CLI::IsMember({"optimized", "xyz"}));

  auto* info_cmd = app.add_subcommand("info", "build and geometry information");
  add_common(info_cmd, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*run_cmd) return cmd_run(common, run_args);
    if (*bench_cmd) return cmd_bench(common, bench_args);
    if (*tile_cmd) return cmd_tile_stats(common, tile_args);
    if (*tx_cmd) return cmd_count_tx(common, tx_args);
    if (*info_cmd) return cmd_info(common);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SimulationDiverged& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDiverged;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitUsage;
}
