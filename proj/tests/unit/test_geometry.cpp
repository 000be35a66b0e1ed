#include "doctest.h"

#include <set>
#include <sstream>

#include "tlbm/geometry.hpp"

using namespace tlbm;

namespace {

std::size_t count_type(const Geometry& g, NodeType t) {
  std::size_t n = 0;
  for (auto v : g.types()) n += v == t;
  return n;
}

}  // namespace

TEST_CASE("geometry basics") {
  Geometry g(3, 4, 5);
  CHECK(g.size() == 60);
  CHECK(g.count_non_solid() == 0);
  g.set(2, 3, 4, NodeType::Fluid);
  CHECK(g.at(2, 3, 4) == NodeType::Fluid);
  CHECK(g.linear(2, 3, 4) == 59);
  CHECK(g.at_or_solid(3, 0, 0) == NodeType::Solid);
  CHECK(g.at_or_solid(-1, 0, 0) == NodeType::Solid);
  CHECK(g.porosity() == doctest::Approx(1.0 / 60));
  CHECK_THROWS(Geometry(0, 1, 1));
  CHECK(valid_node_tag(4));
  CHECK_FALSE(valid_node_tag(5));
}

TEST_CASE("cavity") {
  for (int b : {4, 20, 100}) {
    const Geometry g = generate_cavity3d(b);
    CHECK(g.size() == std::size_t(b) * b * b);
    CHECK(count_type(g, NodeType::Solid) == 0);
    CHECK(g.porosity() == 1.0);
  }
  const Geometry g = generate_cavity3d(20, 0.03);
  CHECK(g.at(0, 5, 5) == NodeType::BounceBackWall);
  CHECK(g.at(5, 5, 0) == NodeType::BounceBackWall);
  CHECK(g.at(5, 5, 19) == NodeType::VelocityInlet);
  CHECK(g.at(0, 5, 19) == NodeType::BounceBackWall);
  CHECK(g.at(5, 5, 5) == NodeType::Fluid);
  CHECK(g.boundary_values(g.linear(5, 5, 19)).velocity[0] == 0.03);
  CHECK(count_type(g, NodeType::VelocityInlet) == 18u * 18u);
  CHECK_THROWS(generate_cavity3d(3));
}

TEST_CASE("square channel") {
  ChannelSpec s;
  s.d = 8;
  s.length = 4;
  const Geometry g = generate_channel(s);
  CHECK(g.nx() == 4);
  CHECK(g.ny() == 8);
  CHECK(g.nz() == 8);
  CHECK(g.count_non_solid() == 4u * 64u);
  s.offset = {1, 3};
  const Geometry shifted = generate_channel(s);
  CHECK(shifted.ny() == 12);
  CHECK(shifted.nz() == 12);
  CHECK(shifted.at(0, 1, 3) != NodeType::Solid);
  CHECK(shifted.at(0, 0, 3) == NodeType::Solid);
  CHECK(shifted.at(0, 8, 10) == NodeType::BounceBackWall);
  CHECK(shifted.at(0, 4, 6) == NodeType::Fluid);
}

TEST_CASE("circular cross-section") {
  int count = 0;
  std::vector<int> rows;
  for (int v = 0; v < 8; ++v) {
    int r = 0;
    for (int u = 0; u < 8; ++u) r += in_circular_section(8, u, v);
    rows.push_back(r);
    count += r;
  }
  CHECK(count == 44);
  CHECK(rows == std::vector<int>{2, 6, 6, 8, 8, 6, 6, 2});
  for (int v = 0; v < 8; ++v)
    for (int u = 0; u < 8; ++u) CHECK(in_circular_section(8, u, v) == in_circular_section(8, 7 - u, v));
}

TEST_CASE("channel with inlet and outlet") {
  ChannelSpec s;
  s.d = 6;
  s.length = 10;
  s.ends = ChannelEnds::InletOutlet;
  s.inlet_velocity = 0.02;
  s.outlet_density = 1.01;
  const Geometry g = generate_channel(s);
  CHECK(g.at(0, 2, 2) == NodeType::VelocityInlet);
  CHECK(g.at(9, 2, 2) == NodeType::PressureOutlet);
  CHECK(g.at(0, 0, 2) == NodeType::BounceBackWall);
  CHECK(g.at(5, 2, 2) == NodeType::Fluid);
  CHECK(g.boundary_values(g.linear(0, 2, 2)).velocity[0] == 0.02);
  CHECK(g.boundary_values(g.linear(9, 2, 2)).density == 1.01);
}

TEST_CASE("sphere pack") {
  SpherePackSpec s;
  s.n = 48;
  s.diameter = 10;
  s.target_porosity = 0.9;
  s.seed = 4;
  const Geometry a = generate_sphere_pack(s);
  CHECK(a.porosity() >= 0.895);
  CHECK(a.porosity() <= 0.905);
  CHECK(a == generate_sphere_pack(s));
  s.seed = 5;
  CHECK_FALSE(a == generate_sphere_pack(s));
  CHECK(a.at(0, 20, 20) == NodeType::VelocityInlet);
  CHECK(a.at(47, 20, 20) == NodeType::PressureOutlet);
  CHECK(a.at(20, 0, 20) == NodeType::BounceBackWall);

  SpherePackSpec open = s;
  open.target_porosity = 0.999999;
  open.tolerance = 1e-6;
  CHECK(generate_sphere_pack(open).porosity() == 1.0);

  SpherePackSpec bad = s;
  bad.target_porosity = 1.5;
  CHECK_THROWS(generate_sphere_pack(bad));
  SpherePackSpec unreachable = s;
  unreachable.target_porosity = 0.1;
  unreachable.max_spheres = 20;
  CHECK_THROWS(generate_sphere_pack(unreachable));
}

TEST_CASE("sphere pack porosity is non-increasing in sphere count") {
  SpherePackSpec s;
  s.n = 40;
  s.diameter = 8;
  s.seed = 9;
  double last = 1.0;
  for (double target : {0.98, 0.95, 0.92, 0.9, 0.85}) {
    s.target_porosity = target;
    const double p = generate_sphere_pack(s).porosity();
    CHECK(p <= last);
    last = p;
  }
}

TEST_CASE("voxel round trip") {
  Geometry g = generate_cavity3d(20, 0.04);
  g.overrides[g.linear(3, 3, 19)] = BoundaryValues{{0.01, 0.0, 0.0}, 1.0};
  std::stringstream ss;
  save_voxels(g, ss);
  const std::string bytes = ss.str();
  const Geometry back = load_voxels(ss);
  CHECK(back == g);
  std::stringstream again;
  save_voxels(back, again);
  CHECK(again.str() == bytes);
}

TEST_CASE("voxel errors") {
  std::stringstream bad_magic("TLBM2\n1 1 1\n\x01");
  CHECK_THROWS_AS(load_voxels(bad_magic), GeometryError);
  std::stringstream truncated("TLBM1\n2 2 2\n\x01\x01\x01");
  CHECK_THROWS_AS(load_voxels(truncated), GeometryError);
  std::stringstream bad_tag(std::string("TLBM1\n1 1 1\n") + char(9));
  CHECK_THROWS_AS(load_voxels(bad_tag), GeometryError);
  std::stringstream bad_dims("TLBM1\n0 1 1\n");
  CHECK_THROWS_AS(load_voxels(bad_dims), GeometryError);
  std::stringstream one("TLBM1\n1 1 1\n\x01");
  const Geometry g = load_voxels(one);
  CHECK(g.size() == 1);
  CHECK(g.at(0, 0, 0) == NodeType::Fluid);
}
