#include "tlbm/layout.hpp"

#include <stdexcept>

namespace tlbm {

namespace {
void check_coords(int x, int y, int z) {
  if (x < 0 || x > 3 || y < 0 || y > 3 || z < 0 || z > 3) throw std::out_of_range("intra-tile coordinate outside 0..3");
}
}  // namespace

int layout_offset(LayoutKind k, int x, int y, int z) {
  check_coords(x, y, z);
  return block_offset(k, x, y, z);
}

std::string_view layout_name(LayoutKind k) {
  switch (k) {
    case LayoutKind::XYZ: return "XYZ";
    case LayoutKind::YXZ: return "YXZ";
    default: return "zigzagNE";
  }
}

LayoutKind layout_for_direction(int dir, LayoutTableKind table) {
  if (dir < 0 || dir >= kQ) throw std::out_of_range("direction index outside 0..18");
  if (table == LayoutTableKind::AllXYZ) return LayoutKind::XYZ;
  switch (static_cast<Dir>(dir)) {
    case Dir::E: case Dir::W: case Dir::ET: case Dir::EB:
    case Dir::NW: case Dir::SW: case Dir::WT: case Dir::WB:
      return LayoutKind::YXZ;
    case Dir::NE: case Dir::SE:
      return LayoutKind::ZigzagNE;
    default:
      return LayoutKind::XYZ;
  }
}

LayoutTable LayoutTable::from_kinds(const std::array<LayoutKind, kQ>& kinds) {
  LayoutTable t;
  t.kind = kinds;
  for (int d = 0; d < kQ; ++d)
    for (int z = 0; z < 4; ++z)
      for (int y = 0; y < 4; ++y)
        for (int x = 0; x < 4; ++x)
          t.offset[d][l_xyz(x, y, z)] = static_cast<std::uint8_t>(block_offset(kinds[d], x, y, z));
  return t;
}

LayoutTable LayoutTable::make(LayoutTableKind k) {
  std::array<LayoutKind, kQ> kinds{};
  for (int d = 0; d < kQ; ++d) kinds[d] = layout_for_direction(d, k);
  return from_kinds(kinds);
}

std::size_t value_address(const LayoutTable& table, std::size_t tile_count, std::size_t tile, int dir, int copy,
                          int x, int y, int z) {
  check_coords(x, y, z);
  if (tile >= tile_count) throw std::out_of_range("tile index out of range");
  if (dir < 0 || dir >= kQ) throw std::out_of_range("direction index outside 0..18");
  if (copy < 0 || copy > 1) throw std::out_of_range("copy must be 0 or 1");
  return block_base(tile_count, copy, tile, dir) + table.offset[dir][l_xyz(x, y, z)];
}

}  // namespace tlbm
