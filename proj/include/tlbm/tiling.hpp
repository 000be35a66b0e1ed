#pragma once
// Uniform cubic tiling of a geometry and the tile-utilisation analytics.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "tlbm/geometry.hpp"
#include "tlbm/lattice.hpp"

namespace tlbm {

class TileGrid {
 public:
  static constexpr std::int32_t kEmpty = -1;

  int a = kTileEdge;
  /// Geometry dimensions before padding.
  Int3 dims;
  /// Tile counts per axis: ceil(dims / a).
  Int3 tiles;
  /// Corner node coordinates (multiples of a), in scan order.
  std::vector<Int3> non_empty;
  /// Row-major (x fastest) over `tiles`; index into non_empty or kEmpty.
  std::vector<std::int32_t> tile_map;

  Int3 padded_dims() const { return {tiles.x * a, tiles.y * a, tiles.z * a}; }
  std::size_t tile_count() const { return non_empty.size(); }
  std::size_t map_index(int tx, int ty, int tz) const {
    return static_cast<std::size_t>(tx) +
           static_cast<std::size_t>(tiles.x) * (static_cast<std::size_t>(ty) + static_cast<std::size_t>(tiles.y) * tz);
  }
  /// Tile index at tile-grid coordinates; kEmpty for all-solid or off-grid tiles.
  std::int32_t tile_at(int tx, int ty, int tz) const {
    if (tx < 0 || ty < 0 || tz < 0 || tx >= tiles.x || ty >= tiles.y || tz >= tiles.z) return kEmpty;
    return tile_map[map_index(tx, ty, tz)];
  }
};

/// Scans tiles z-outer, x-inner and keeps every tile with a non-solid node.
/// Nodes past the geometry edge (padding) count as solid.
TileGrid build_tiling(const Geometry& g, int a = kTileEdge);

struct TileStats {
  std::size_t t_n = 0;
  std::size_t n_fn = 0;
  int n_tn = 0;
  double eta_t = 0.0;
  double n_tfn = 0.0;
  double n_tsn = 0.0;
  double eta_f = 0.0;
  double eta_e = 0.0;
};

/// Exact counts by enumeration. Throws std::invalid_argument for an empty tiling.
TileStats tile_utilization(const TileGrid& tg, const Geometry& g);

/// Non-solid node count of every non-empty tile, in tile order.
std::vector<int> per_tile_non_solid(const TileGrid& tg, const Geometry& g);

/// (1 - eta) / eta.
double overhead_generic(double eta_t);

struct MemoryOverhead {
  double exact = 0.0;
  double approx = 0.0;
};

/// (2 q n_d + n_t) / (eta q n_d) - 1, together with (2 - eta) / eta.
MemoryOverhead overhead_memory(double eta_t, int q, int n_d, int n_t);

struct FacesEdges {
  double eta_f = 0.0;
  double eta_e = 0.0;
  std::size_t faces = 0;
  std::size_t edges = 0;
};

/// Faces shared by two non-empty tiles and edges shared by four, per tile.
FacesEdges faces_edges_per_tile(const TileGrid& tg);

/// Empirical propagation bandwidth-utilisation fit (GTX Titan measurements).
/// Throws std::domain_error at the poles eta_f = 2.9 or eta_e = 2.81.
double bu_propagation_estimate(double eta_f, double eta_e);

/// Distance of (eta_f, eta_e) from the line eta_e = 1.85 eta_f - 2.56, measured along eta_e.
double edge_face_plane_residual(double eta_f, double eta_e);

struct SweepEntry {
  int offset_u = 0;
  int offset_v = 0;
  double eta_t = 0.0;
  std::size_t tiles = 0;
};

struct SweepResult {
  ChannelShape shape = ChannelShape::Square;
  int d = 0;
  std::vector<SweepEntry> entries;
  double mean = 0.0;
};

/// Tiles the channel cross-section for all 16 transverse offsets.
SweepResult channel_tiling_sweep(ChannelShape shape, int d, Axis axis = Axis::X);

}  // namespace tlbm
