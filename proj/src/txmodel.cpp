#include "tlbm/txmodel.hpp"

#include <algorithm>
#include <stdexcept>

namespace tlbm {

long m_node(int q, int n_d) {
  if (q <= 0 || n_d <= 0) throw std::invalid_argument("q and n_d must be positive");
  return long(q) * n_d;
}

long b_node(int q, int n_d) { return 2 * m_node(q, n_d); }

double flop_per_byte(double flop_count, double b_node_bytes) {
  if (!(b_node_bytes > 0.0)) throw std::invalid_argument("bytes per node must be positive");
  if (flop_count < 0.0) throw std::invalid_argument("flop count must be non-negative");
  return flop_count / b_node_bytes;
}

int min_direction_segments(Precision precision) {
  return kTileNodes * bytes_per_value(precision) / kSegmentBytes;
}

namespace {

constexpr int kSegmentsPerBlockMax = kTileNodes * 8 / kSegmentBytes;

int nb_index(int dx, int dy, int dz) { return (dx + 1) + 3 * (dy + 1) + 9 * (dz + 1); }

/// Distinct segments per warp, summed over warps. `nb` holds the tile ids of
/// the 3x3x3 neighbourhood (negative = empty). `active(n, sx, sy, sz)` decides
/// whether node n gathers from halo position (sx, sy, sz).
template <class Active>
int gather_segments(int dir, const std::array<std::uint8_t, kTileNodes>& off, int n_d,
                    const std::array<std::int64_t, 27>& nb, Active active) {
  const Int3 e = vec(dir);
  int total = 0;
  for (int w = 0; w < kWarpsPerTile; ++w) {
    std::array<std::int64_t, kWarpSize> keys{};
    int count = 0;
    for (int n = w * kWarpSize; n < (w + 1) * kWarpSize; ++n) {
      const int sx = (n & 3) - e.x, sy = ((n >> 2) & 3) - e.y, sz = (n >> 4) - e.z;
      const std::int64_t tile = nb[nb_index(sx >> 2, sy >> 2, sz >> 2)];
      if (tile < 0 || !active(n, sx, sy, sz)) continue;
      const int local = (sx & 3) + 4 * (sy & 3) + 16 * (sz & 3);
      keys[count++] = tile * kSegmentsPerBlockMax + off[local] * n_d / kSegmentBytes;
    }
    std::sort(keys.begin(), keys.begin() + count);
    total += int(std::unique(keys.begin(), keys.begin() + count) - keys.begin());
  }
  return total;
}

std::array<std::int64_t, 27> synthetic_neighbourhood() {
  std::array<std::int64_t, 27> nb{};
  for (int i = 0; i < 27; ++i) nb[i] = i;
  return nb;
}

void finish(TransactionReport& r) {
  r.data_reads = 0;
  for (auto c : r.direction_reads) r.data_reads += c;
  r.total_reads = r.data_reads + r.node_type_reads;
  r.min_total = r.min_data_reads + r.min_writes + r.node_type_reads;
  r.read_overhead = r.min_data_reads ? double(r.data_reads) / double(r.min_data_reads) - 1.0 : 0.0;
  r.total_overhead = r.min_total ? double(r.total_reads + r.writes) / double(r.min_total) - 1.0 : 0.0;
}

}  // namespace

int count_direction_reads(int dir, LayoutKind kind, Precision precision) {
  if (dir < 0 || dir >= kQ) throw std::out_of_range("direction index out of range");
  std::array<LayoutKind, kQ> kinds{};
  kinds.fill(kind);
  const LayoutTable table = LayoutTable::from_kinds(kinds);
  return gather_segments(dir, table.offset[dir], bytes_per_value(precision), synthetic_neighbourhood(),
                         [](int, int, int, int) { return true; });
}

TransactionReport count_tile_overheads(const LayoutTable& table, Precision precision) {
  TransactionReport r;
  const int n_d = bytes_per_value(precision);
  const auto nb = synthetic_neighbourhood();
  for (int q = 0; q < kQ; ++q)
    r.direction_reads[q] = gather_segments(q, table.offset[q], n_d, nb, [](int, int, int, int) { return true; });
  const std::uint64_t per_dir = min_direction_segments(precision);
  r.writes = r.min_writes = kQ * per_dir;
  r.min_data_reads = kQ * per_dir;
  r.node_type_reads = kTileNodes * kNodeTypeBytesModel / kSegmentBytes;
  r.tile_map_values = 27;
  finish(r);
  return r;
}

TransactionReport geometry_transaction_totals(const TileGrid& tg, const Geometry& g, const LayoutTable& table,
                                              Precision precision) {
  TransactionReport r;
  const int n_d = bytes_per_value(precision);
  const std::uint64_t tn = tg.tile_count();
  const int a = tg.a;
  if (a != kTileEdge) throw std::invalid_argument("transaction model requires 4^3 tiles");

  for (std::size_t t = 0; t < tn; ++t) {
    const Int3 c = tg.non_empty[t];
    const int tx = c.x / a, ty = c.y / a, tz = c.z / a;
    std::array<std::int64_t, 27> nb{};
    for (int dz = -1; dz <= 1; ++dz)
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx) nb[nb_index(dx, dy, dz)] = tg.tile_at(tx + dx, ty + dy, tz + dz);

    auto solid_at = [&](int lx, int ly, int lz) { return is_solid(g.at_or_solid(c.x + lx, c.y + ly, c.z + lz)); };
    auto active = [&](int n, int sx, int sy, int sz) {
      return !solid_at(n & 3, (n >> 2) & 3, n >> 4) && !solid_at(sx, sy, sz);
    };
    for (int q = 0; q < kQ; ++q) {
      r.direction_reads[q] += gather_segments(q, table.offset[q], n_d, nb, active);
      // Writes go to the tile's own block.
      const auto& off = table.offset[q];
      for (int w = 0; w < kWarpsPerTile; ++w) {
        std::array<bool, kSegmentsPerBlockMax> used{};
        for (int n = w * kWarpSize; n < (w + 1) * kWarpSize; ++n)
          if (!solid_at(n & 3, (n >> 2) & 3, n >> 4)) used[off[n] * n_d / kSegmentBytes] = true;
        r.writes += std::count(used.begin(), used.end(), true);
      }
    }
  }
  const std::uint64_t per_dir = min_direction_segments(precision);
  r.min_writes = tn * kQ * per_dir;
  r.min_data_reads = r.min_writes;
  r.node_type_reads = tn * kTileNodes * kNodeTypeBytesModel / kSegmentBytes;
  r.tile_map_values = 27 * tn;
  finish(r);
  return r;
}

}  // namespace tlbm
