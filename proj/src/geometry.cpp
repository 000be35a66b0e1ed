#include "tlbm/geometry.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <string>

namespace tlbm {

bool valid_node_tag(std::uint8_t tag) { return tag <= static_cast<std::uint8_t>(NodeType::PressureOutlet); }

Geometry::Geometry(int nx, int ny, int nz, NodeType fill) : nx_(nx), ny_(ny), nz_(nz) {
  if (nx <= 0 || ny <= 0 || nz <= 0) throw GeometryError("geometry dimensions must be positive");
  types_.assign(static_cast<std::size_t>(nx) * ny * nz, fill);
}

const BoundaryValues& Geometry::boundary_values(std::size_t node) const {
  auto it = overrides.find(node);
  return it == overrides.end() ? defaults : it->second;
}

std::size_t Geometry::count_non_solid() const {
  std::size_t n = 0;
  for (NodeType t : types_) n += !is_solid(t);
  return n;
}

double Geometry::porosity() const {
  return types_.empty() ? 0.0 : double(count_non_solid()) / double(types_.size());
}

Geometry generate_cavity3d(int b, double lid_velocity) {
  if (b < 4) throw GeometryError("cavity edge must be at least 4 nodes");
  Geometry g(b, b, b, NodeType::Fluid);
  for (int z = 0; z < b; ++z)
    for (int y = 0; y < b; ++y)
      for (int x = 0; x < b; ++x) {
        bool side = x == 0 || x == b - 1 || y == 0 || y == b - 1 || z == 0;
        if (side)
          g.set(x, y, z, NodeType::BounceBackWall);
        else if (z == b - 1)
          g.set(x, y, z, NodeType::VelocityInlet);
      }
  g.defaults.velocity = {lid_velocity, 0.0, 0.0};
  return g;
}

bool in_circular_section(int d, int u, int v) {
  // Centre between the middle nodes; the radius is shrunk by a quarter node so
  // that an 8-node channel has the 2-6-6-8-8-6-6-2 row profile.
  double c = 0.5 * (d - 1);
  double r = 0.5 * d - 0.25;
  double du = u - c, dv = v - c;
  return du * du + dv * dv <= r * r;
}

namespace {

int round_up4(int v) { return (v + 3) / 4 * 4; }

// Maps (axial, transverse0, transverse1) to (x, y, z).
std::array<int, 3> place(Axis axis, int a, int t0, int t1) {
  switch (axis) {
    case Axis::X: return {a, t0, t1};
    case Axis::Y: return {t0, a, t1};
    default: return {t0, t1, a};
  }
}

}  // namespace

Geometry generate_channel(const ChannelSpec& s) {
  if (s.d < 1) throw GeometryError("channel cross-section must be at least 1 node");
  if (s.length < 1) throw GeometryError("channel length must be positive");
  for (int o : s.offset)
    if (o < 0 || o > 3) throw GeometryError("channel offsets must be in 0..3");
  int need = std::max(s.offset[0], s.offset[1]) + s.d;
  int transverse = s.transverse_size > 0 ? s.transverse_size : round_up4(need);
  if (s.offset[0] + s.d > transverse || s.offset[1] + s.d > transverse)
    throw GeometryError("channel exceeds domain");

  auto dims = place(s.axis, s.length, transverse, transverse);
  Geometry g(dims[0], dims[1], dims[2], NodeType::Solid);

  auto inside = [&](int u, int v) {
    if (u < 0 || v < 0 || u >= s.d || v >= s.d) return false;
    return s.shape == ChannelShape::Square || in_circular_section(s.d, u, v);
  };

  for (int a = 0; a < s.length; ++a)
    for (int v = 0; v < s.d; ++v)
      for (int u = 0; u < s.d; ++u) {
        if (!inside(u, v)) continue;
        bool rim = !inside(u - 1, v) || !inside(u + 1, v) || !inside(u, v - 1) || !inside(u, v + 1);
        NodeType t = rim ? NodeType::BounceBackWall : NodeType::Fluid;
        if (!rim && s.ends == ChannelEnds::InletOutlet) {
          if (a == 0) t = NodeType::VelocityInlet;
          if (a == s.length - 1) t = NodeType::PressureOutlet;
        }
        auto p = place(s.axis, a, u + s.offset[0], v + s.offset[1]);
        g.set(p[0], p[1], p[2], t);
      }

  std::array<double, 3> vel{0.0, 0.0, 0.0};
  vel[static_cast<int>(s.axis)] = s.inlet_velocity;
  g.defaults.velocity = vel;
  g.defaults.density = s.outlet_density;
  return g;
}

namespace {

double uniform01(std::mt19937_64& rng) { return double(rng() >> 11) * 0x1.0p-53; }

}  // namespace

Geometry generate_sphere_pack(const SpherePackSpec& s) {
  if (!(s.target_porosity > 0.0 && s.target_porosity < 1.0 + 1e-12))
    throw GeometryError("target porosity must be in (0, 1]");
  if (s.n < 6) throw GeometryError("sphere pack edge must be at least 6 nodes");
  const int n = s.n;
  Geometry g(n, n, n, NodeType::Fluid);
  const std::size_t total = g.size();
  std::size_t solid = 0;
  const double r = 0.5 * s.diameter;
  const double lower = s.target_porosity - s.tolerance;
  const double upper = s.target_porosity + s.tolerance;

  std::mt19937_64 rng(s.seed);
  std::vector<std::size_t> fresh;
  int placed = 0, attempts = 0;
  const int max_attempts = 20 * s.max_spheres + 1000;
  while (double(total - solid) / double(total) > upper) {
    if (placed >= s.max_spheres || attempts >= max_attempts)
      throw GeometryError("sphere pack cannot reach the requested porosity");
    ++attempts;
    double cx = uniform01(rng) * n, cy = uniform01(rng) * n, cz = uniform01(rng) * n;
    fresh.clear();
    int x0 = std::max(2, int(std::floor(cx - r))), x1 = std::min(n - 3, int(std::ceil(cx + r)));
    int y0 = std::max(0, int(std::floor(cy - r))), y1 = std::min(n - 1, int(std::ceil(cy + r)));
    int z0 = std::max(0, int(std::floor(cz - r))), z1 = std::min(n - 1, int(std::ceil(cz + r)));
    for (int z = z0; z <= z1; ++z)
      for (int y = y0; y <= y1; ++y)
        for (int x = x0; x <= x1; ++x) {
          double dx = x + 0.5 - cx, dy = y + 0.5 - cy, dz = z + 0.5 - cz;
          if (dx * dx + dy * dy + dz * dz <= r * r && !is_solid(g.at(x, y, z)))
            fresh.push_back(g.linear(x, y, z));
        }
    double after = double(total - solid - fresh.size()) / double(total);
    if (after < lower) continue;  // would overshoot; draw another centre
    for (std::size_t idx : fresh) {
      int x = int(idx % n), y = int(idx / n % n), z = int(idx / (std::size_t(n) * n));
      g.set(x, y, z, NodeType::Solid);
    }
    solid += fresh.size();
    ++placed;
  }

  for (int z = 0; z < n; ++z)
    for (int y = 0; y < n; ++y)
      for (int x = 0; x < n; ++x) {
        if (is_solid(g.at(x, y, z))) continue;
        bool side = y == 0 || y == n - 1 || z == 0 || z == n - 1;
        if (side)
          g.set(x, y, z, NodeType::BounceBackWall);
        else if (x == 0)
          g.set(x, y, z, NodeType::VelocityInlet);
        else if (x == n - 1)
          g.set(x, y, z, NodeType::PressureOutlet);
      }
  g.defaults.velocity = {s.inlet_velocity, 0.0, 0.0};
  g.defaults.density = s.outlet_density;
  return g;
}

namespace {

constexpr const char* kMagic = "TLBM1";

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_values(const BoundaryValues& b) {
  return fmt_double(b.velocity[0]) + " " + fmt_double(b.velocity[1]) + " " + fmt_double(b.velocity[2]) +
         " " + fmt_double(b.density);
}

}  // namespace

void save_voxels(const Geometry& g, std::ostream& out) {
  out << kMagic << '\n' << g.nx() << ' ' << g.ny() << ' ' << g.nz() << '\n';
  out.write(reinterpret_cast<const char*>(g.types().data()), static_cast<std::streamsize>(g.size()));
  out << "PARAMS " << g.overrides.size() << '\n';
  out << "default " << fmt_values(g.defaults) << '\n';
  for (const auto& [idx, v] : g.overrides) out << "node " << idx << ' ' << fmt_values(v) << '\n';
  if (!out) throw GeometryError("failed to write voxel stream");
}

Geometry load_voxels(std::istream& in) {
  std::string magic;
  if (!std::getline(in, magic) || magic != kMagic) throw GeometryError("bad magic: not a TLBM1 voxel file");
  std::string header;
  if (!std::getline(in, header)) throw GeometryError("missing dimension header");
  std::istringstream hs(header);
  long long nx = 0, ny = 0, nz = 0;
  if (!(hs >> nx >> ny >> nz) || nx <= 0 || ny <= 0 || nz <= 0 || nx > 1 << 16 || ny > 1 << 16 || nz > 1 << 16)
    throw GeometryError("invalid dimension header");
  Geometry g(static_cast<int>(nx), static_cast<int>(ny), static_cast<int>(nz));
  std::vector<char> payload(g.size());
  in.read(payload.data(), static_cast<std::streamsize>(payload.size()));
  if (static_cast<std::size_t>(in.gcount()) != payload.size()) throw GeometryError("truncated voxel payload");
  for (std::size_t i = 0; i < payload.size(); ++i) {
    auto tag = static_cast<std::uint8_t>(payload[i]);
    if (!valid_node_tag(tag)) throw GeometryError("unknown node tag byte " + std::to_string(tag));
  }
  std::size_t i = 0;
  for (int z = 0; z < g.nz(); ++z)
    for (int y = 0; y < g.ny(); ++y)
      for (int x = 0; x < g.nx(); ++x) g.set(x, y, z, static_cast<NodeType>(payload[i++]));

  std::string line;
  if (!std::getline(in, line)) return g;  // parameter table is optional
  std::istringstream ps(line);
  std::string word;
  std::size_t count = 0;
  if (!(ps >> word >> count) || word != "PARAMS") throw GeometryError("malformed parameter table");
  auto read_values = [&](std::istringstream& ls) {
    BoundaryValues b;
    if (!(ls >> b.velocity[0] >> b.velocity[1] >> b.velocity[2] >> b.density))
      throw GeometryError("malformed parameter entry");
    return b;
  };
  if (!std::getline(in, line)) throw GeometryError("truncated parameter table");
  {
    std::istringstream ls(line);
    if (!(ls >> word) || word != "default") throw GeometryError("malformed parameter table");
    g.defaults = read_values(ls);
  }
  for (std::size_t k = 0; k < count; ++k) {
    if (!std::getline(in, line)) throw GeometryError("truncated parameter table");
    std::istringstream ls(line);
    std::size_t idx = 0;
    if (!(ls >> word >> idx) || word != "node" || idx >= g.size()) throw GeometryError("malformed parameter entry");
    g.overrides[idx] = read_values(ls);
  }
  return g;
}

}  // namespace tlbm
