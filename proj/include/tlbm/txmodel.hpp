#pragma once
// 32-byte coalesced transaction model for the gather step, and the
// bytes-per-node performance model.

#include <array>
#include <cstdint>

#include "tlbm/geometry.hpp"
#include "tlbm/layout.hpp"
#include "tlbm/tiling.hpp"

namespace tlbm {

inline constexpr int kSegmentBytes = 32;
/// Node types are counted at 2 bytes per node in transaction totals,
/// independent of the 1-byte NodeType used in memory.
inline constexpr int kNodeTypeBytesModel = 2;

struct PerfModel {
  int q = kQ;
  int n_d = 8;
  int n_t = kNodeTypeBytesModel;
  int segment_bytes = kSegmentBytes;
};

/// q * n_d. Throws std::invalid_argument for non-positive inputs.
long m_node(int q, int n_d);
/// 2 * q * n_d: every value is read once and stored once.
long b_node(int q, int n_d);
/// Throws std::invalid_argument for non-positive b_node or negative flops.
double flop_per_byte(double flop_count, double b_node_bytes);

/// Distinct aligned segments read per tile for one direction, summed over the
/// two warps of a tile, for a fully non-solid tile with fully non-solid neighbours.
int count_direction_reads(int dir, LayoutKind kind, Precision precision);

/// Minimum per direction: 64 * n_d / 32.
int min_direction_segments(Precision precision);

struct TransactionReport {
  std::array<std::uint64_t, kQ> direction_reads{};
  /// Sum of direction_reads.
  std::uint64_t data_reads = 0;
  std::uint64_t writes = 0;
  /// Counted with the 2-byte-per-node convention.
  std::uint64_t node_type_reads = 0;
  /// Values read from the tile map (not segments): 27 per tile.
  std::uint64_t tile_map_values = 0;
  /// data_reads + node_type_reads.
  std::uint64_t total_reads = 0;

  std::uint64_t min_data_reads = 0;
  std::uint64_t min_writes = 0;
  /// min_data_reads + min_writes + node_type_reads.
  std::uint64_t min_total = 0;

  /// data_reads / min_data_reads - 1.
  double read_overhead = 0.0;
  /// (total_reads + writes) / min_total - 1.
  double total_overhead = 0.0;
};

/// Per-tile report for one layout table.
TransactionReport count_tile_overheads(const LayoutTable& table, Precision precision);

/// Whole-geometry report. Gathers are counted only when both the destination
/// and the source node are non-solid; a segment is read only if at least one
/// gather touches it. Bounce-back re-reads of a node's own values are not counted.
TransactionReport geometry_transaction_totals(const TileGrid& tg, const Geometry& g, const LayoutTable& table,
                                              Precision precision);

}  // namespace tlbm
