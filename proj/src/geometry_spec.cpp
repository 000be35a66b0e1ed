#include "tlbm/geometry_spec.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace tlbm {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) return parts;
    start = pos + 1;
  }
}

template <class T>
T number(const std::string& s, const std::string& spec) {
  T v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw std::invalid_argument("bad number '" + s + "' in geometry '" + spec + "'");
  return v;
}

void expect_count(const std::vector<std::string>& p, std::size_t lo, std::size_t hi, const std::string& spec,
                  const char* usage) {
  if (p.size() < lo || p.size() > hi)
    throw std::invalid_argument("geometry '" + spec + "' does not match " + usage);
}

}  // namespace

Geometry parse_geometry_spec(const std::string& spec) {
  if (spec.rfind("file:", 0) == 0) {
    const std::string path = spec.substr(5);
    std::ifstream in(path, std::ios::binary);
    if (!in) throw GeometryError("cannot open voxel file '" + path + "'");
    return load_voxels(in);
  }
  const auto p = split(spec, ':');
  if (p[0] == "cavity") {
    expect_count(p, 2, 3, spec, "cavity:N[:lid]");
    const double lid = p.size() == 3 ? number<double>(p[2], spec) : 0.04;
    return generate_cavity3d(number<int>(p[1], spec), lid);
  }
  if (p[0] == "channel") {
    expect_count(p, 6, 7, spec, "channel:square|circular:d:offy:offz:len[:u_in]");
    ChannelSpec c;
    if (p[1] == "square") c.shape = ChannelShape::Square;
    else if (p[1] == "circular") c.shape = ChannelShape::Circular;
    else throw std::invalid_argument("unknown channel shape '" + p[1] + "'");
    c.d = number<int>(p[2], spec);
    c.offset = {number<int>(p[3], spec), number<int>(p[4], spec)};
    c.length = number<int>(p[5], spec);
    if (p.size() == 7) {
      c.ends = ChannelEnds::InletOutlet;
      c.inlet_velocity = number<double>(p[6], spec);
    }
    return generate_channel(c);
  }
  if (p[0] == "spheres") {
    expect_count(p, 5, 5, spec, "spheres:n:diam:porosity:seed");
    SpherePackSpec s;
    s.n = number<int>(p[1], spec);
    s.diameter = number<double>(p[2], spec);
    s.target_porosity = number<double>(p[3], spec);
    s.seed = number<std::uint64_t>(p[4], spec);
    return generate_sphere_pack(s);
  }
  throw std::invalid_argument("unknown geometry kind '" + p[0] + "'");
}

}  // namespace tlbm
