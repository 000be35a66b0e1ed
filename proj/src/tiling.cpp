#include "tlbm/tiling.hpp"

#include <cmath>
#include <stdexcept>

namespace tlbm {

TileGrid build_tiling(const Geometry& g, int a) {
  if (a < 1) throw std::invalid_argument("tile edge must be positive");
  TileGrid tg;
  tg.a = a;
  tg.dims = {g.nx(), g.ny(), g.nz()};
  tg.tiles = {(g.nx() + a - 1) / a, (g.ny() + a - 1) / a, (g.nz() + a - 1) / a};
  tg.tile_map.assign(static_cast<std::size_t>(tg.tiles.x) * tg.tiles.y * tg.tiles.z, TileGrid::kEmpty);

  for (int tz = 0; tz < tg.tiles.z; ++tz)
    for (int ty = 0; ty < tg.tiles.y; ++ty)
      for (int tx = 0; tx < tg.tiles.x; ++tx) {
        const int cx = tx * a, cy = ty * a, cz = tz * a;
        bool found = false;
        for (int nz = 0; nz < a && !found; ++nz)
          for (int ny = 0; ny < a && !found; ++ny)
            for (int nx = 0; nx < a && !found; ++nx)
              found = !is_solid(g.at_or_solid(cx + nx, cy + ny, cz + nz));
        if (found) {
          tg.tile_map[tg.map_index(tx, ty, tz)] = static_cast<std::int32_t>(tg.non_empty.size());
          tg.non_empty.push_back({cx, cy, cz});
        }
      }
  return tg;
}

std::vector<int> per_tile_non_solid(const TileGrid& tg, const Geometry& g) {
  std::vector<int> counts;
  counts.reserve(tg.non_empty.size());
  for (const Int3& c : tg.non_empty) {
    int n = 0;
    for (int z = 0; z < tg.a; ++z)
      for (int y = 0; y < tg.a; ++y)
        for (int x = 0; x < tg.a; ++x) n += !is_solid(g.at_or_solid(c.x + x, c.y + y, c.z + z));
    counts.push_back(n);
  }
  return counts;
}

TileStats tile_utilization(const TileGrid& tg, const Geometry& g) {
  if (tg.non_empty.empty()) throw std::invalid_argument("tile utilisation of an empty tiling is undefined");
  TileStats s;
  s.t_n = tg.non_empty.size();
  s.n_tn = tg.a * tg.a * tg.a;
  s.n_fn = g.count_non_solid();
  s.eta_t = double(s.n_fn) / (double(s.t_n) * s.n_tn);
  s.n_tfn = double(s.n_fn) / double(s.t_n);
  s.n_tsn = s.n_tn - s.n_tfn;
  FacesEdges fe = faces_edges_per_tile(tg);
  s.eta_f = fe.eta_f;
  s.eta_e = fe.eta_e;
  return s;
}

double overhead_generic(double eta_t) {
  if (!(eta_t > 0.0 && eta_t <= 1.0)) throw std::domain_error("tile utilisation must be in (0, 1]");
  return (1.0 - eta_t) / eta_t;
}

MemoryOverhead overhead_memory(double eta_t, int q, int n_d, int n_t) {
  if (!(eta_t > 0.0 && eta_t <= 1.0)) throw std::domain_error("tile utilisation must be in (0, 1]");
  if (q <= 0 || n_d <= 0 || n_t < 0) throw std::domain_error("q and n_d must be positive, n_t non-negative");
  const double qn = double(q) * n_d;
  return {(2.0 * qn + n_t) / (eta_t * qn) - 1.0, (2.0 - eta_t) / eta_t};
}

FacesEdges faces_edges_per_tile(const TileGrid& tg) {
  if (tg.non_empty.empty()) throw std::invalid_argument("faces/edges of an empty tiling are undefined");
  auto present = [&](int x, int y, int z) { return tg.tile_at(x, y, z) != TileGrid::kEmpty; };
  FacesEdges fe;
  const Int3 n = tg.tiles;
  for (int z = 0; z < n.z; ++z)
    for (int y = 0; y < n.y; ++y)
      for (int x = 0; x < n.x; ++x) {
        if (!present(x, y, z)) continue;
        fe.faces += present(x + 1, y, z) + present(x, y + 1, z) + present(x, y, z + 1);
        // Each edge is owned by the tile with the smallest coordinates around it.
        fe.edges += present(x + 1, y, z) && present(x, y + 1, z) && present(x + 1, y + 1, z);  // along z
        fe.edges += present(x, y + 1, z) && present(x, y, z + 1) && present(x, y + 1, z + 1);  // along x
        fe.edges += present(x + 1, y, z) && present(x, y, z + 1) && present(x + 1, y, z + 1);  // along y
      }
  const double t = double(tg.non_empty.size());
  fe.eta_f = double(fe.faces) / t;
  fe.eta_e = double(fe.edges) / t;
  return fe;
}

double bu_propagation_estimate(double eta_f, double eta_e) {
  const double df = 2.9 - eta_f, de = 2.81 - eta_e;
  if (std::abs(df) < 1e-12 || std::abs(de) < 1e-12)
    throw std::domain_error("bandwidth fit is singular at eta_f = 2.9 or eta_e = 2.81");
  return 0.92 - eta_f / 14.28 - eta_e / 25.74 + 0.00104 / df + 0.0023 / de;
}

double edge_face_plane_residual(double eta_f, double eta_e) { return eta_e - (1.85 * eta_f - 2.56); }

SweepResult channel_tiling_sweep(ChannelShape shape, int d, Axis axis) {
  SweepResult r;
  r.shape = shape;
  r.d = d;
  double sum = 0.0;
  for (int ov = 0; ov < 4; ++ov)
    for (int ou = 0; ou < 4; ++ou) {
      ChannelSpec spec;
      spec.shape = shape;
      spec.d = d;
      spec.axis = axis;
      spec.offset = {ou, ov};
      spec.length = kTileEdge;
      Geometry g = generate_channel(spec);
      TileGrid tg = build_tiling(g);
      TileStats st = tile_utilization(tg, g);
      r.entries.push_back({ou, ov, st.eta_t, st.t_n});
      sum += st.eta_t;
    }
  r.mean = sum / double(r.entries.size());
  return r;
}

}  // namespace tlbm
