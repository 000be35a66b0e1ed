#include "tlbm/lattice.hpp"

#include <stdexcept>
#include <string>

namespace tlbm {

namespace {
void check_dir(int i) {
  if (i < 0 || i >= kQ)
    throw std::out_of_range("direction index " + std::to_string(i) + " outside 0..18");
}
}  // namespace

Int3 direction_vector(int i) {
  check_dir(i);
  return detail::kVectors[i];
}

double weight(int i) {
  check_dir(i);
  return kWeights<double>[i];
}

int opposite_checked(int i) {
  check_dir(i);
  return detail::kOpposite[i];
}

std::string_view direction_name(int i) {
  check_dir(i);
  return detail::kNames[i];
}

int direction_from_name(std::string_view name) {
  for (int i = 0; i < kQ; ++i)
    if (detail::kNames[i] == name) return i;
  throw std::invalid_argument("unknown direction name '" + std::string(name) + "'");
}

int thread_linear_index(int tx, int ty, int tz) {
  if (tx < 0 || tx >= kTileEdge || ty < 0 || ty >= kTileEdge || tz < 0 || tz >= kTileEdge)
    throw std::out_of_range("intra-tile coordinate outside 0..3");
  return tx + kTileEdge * ty + kTileEdge * kTileEdge * tz;
}

}  // namespace tlbm
