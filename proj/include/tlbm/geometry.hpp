#pragma once
// Dense voxel geometry, the test-case generators and the TLBM1 voxel format.

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <vector>

namespace tlbm {

enum class NodeType : std::uint8_t {
  Solid = 0,
  Fluid = 1,
  BounceBackWall = 2,
  VelocityInlet = 3,
  PressureOutlet = 4,
};

inline constexpr bool is_solid(NodeType t) { return t == NodeType::Solid; }
bool valid_node_tag(std::uint8_t tag);

/// Prescribed values for Zou-He nodes, in lattice units.
struct BoundaryValues {
  std::array<double, 3> velocity{0.0, 0.0, 0.0};
  double density = 1.0;
  friend bool operator==(const BoundaryValues&, const BoundaryValues&) = default;
};

enum class Axis : std::uint8_t { X = 0, Y = 1, Z = 2 };

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Geometry {
 public:
  Geometry() = default;
  Geometry(int nx, int ny, int nz, NodeType fill = NodeType::Solid);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int nz() const { return nz_; }
  std::size_t size() const { return types_.size(); }

  std::size_t linear(int x, int y, int z) const {
    return static_cast<std::size_t>(x) +
           static_cast<std::size_t>(nx_) * (static_cast<std::size_t>(y) + static_cast<std::size_t>(ny_) * z);
  }
  bool inside(int x, int y, int z) const {
    return x >= 0 && y >= 0 && z >= 0 && x < nx_ && y < ny_ && z < nz_;
  }

  NodeType at(int x, int y, int z) const { return types_[linear(x, y, z)]; }
  void set(int x, int y, int z, NodeType t) { types_[linear(x, y, z)] = t; }
  /// Off-domain positions read as Solid.
  NodeType at_or_solid(int x, int y, int z) const {
    return inside(x, y, z) ? at(x, y, z) : NodeType::Solid;
  }

  const std::vector<NodeType>& types() const { return types_; }

  /// Values used by inlet/outlet nodes without a per-node override.
  BoundaryValues defaults;
  std::map<std::size_t, BoundaryValues> overrides;
  const BoundaryValues& boundary_values(std::size_t node) const;

  std::size_t count_non_solid() const;
  double porosity() const;

  friend bool operator==(const Geometry&, const Geometry&) = default;

 private:
  int nx_ = 0, ny_ = 0, nz_ = 0;
  std::vector<NodeType> types_;
};

/// b^3 box: five bounce-back walls, a moving lid on the top face (z = b-1).
/// Lid nodes on the rim belong to the walls.
Geometry generate_cavity3d(int b, double lid_velocity = 0.04);

enum class ChannelShape { Square, Circular };
enum class ChannelEnds { Closed, InletOutlet };

struct ChannelSpec {
  ChannelShape shape = ChannelShape::Square;
  int d = 8;
  Axis axis = Axis::X;
  /// Shift of the cross-section inside the 4-aligned tile mesh, per transverse axis.
  std::array<int, 2> offset{0, 0};
  int length = 4;
  /// Transverse domain extent; 0 picks offset + d rounded up to a multiple of 4.
  int transverse_size = 0;
  ChannelEnds ends = ChannelEnds::Closed;
  double inlet_velocity = 0.0;
  double outlet_density = 1.0;
};

/// In-channel test for a circular cross-section of nominal diameter d, in
/// cross-section local coordinates 0..d-1.
bool in_circular_section(int d, int u, int v);

/// Non-solid channel embedded in Solid. The outermost ring of the
/// cross-section is BounceBackWall. With InletOutlet ends the first slab is a
/// velocity inlet and the last one a pressure outlet (rim nodes stay walls).
Geometry generate_channel(const ChannelSpec& spec);

struct SpherePackSpec {
  int n = 192;
  double diameter = 40.0;
  double target_porosity = 0.9;
  std::uint64_t seed = 1;
  double tolerance = 0.005;
  int max_spheres = 100000;
  double inlet_velocity = 0.01;
  double outlet_density = 1.0;
};

/// Spheres with seeded uniform centres (overlap allowed) are added until the
/// porosity is within tolerance of the target. Flow runs along x: x = 0 is an
/// inlet, x = n-1 an outlet, the other faces are walls. The two end slabs on
/// each side are kept free of spheres.
Geometry generate_sphere_pack(const SpherePackSpec& spec);

/// TLBM1 format: "TLBM1\n", "nx ny nz\n", nx*ny*nz tag bytes (x fastest),
/// then an optional text parameter table.
void save_voxels(const Geometry& g, std::ostream& out);
Geometry load_voxels(std::istream& in);

}  // namespace tlbm
