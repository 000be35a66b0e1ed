#include "tlbm/physics.hpp"

namespace tlbm {

MrtRates default_mrt_rates(double tau) {
  const double s_nu = 1.0 / tau;
  MrtRates s{};
  s[0] = s[3] = s[5] = s[7] = 0.0;
  s[1] = 1.19;
  s[2] = s[10] = s[12] = 1.4;
  s[9] = s[11] = s[13] = s[14] = s[15] = s_nu;
  // Odd moments paired with s_nu so that (1/s_nu - 1/2)(1/s_odd - 1/2) = 3/16.
  const double s_odd = 8.0 * (2.0 - s_nu) / (8.0 - s_nu);
  s[4] = s[6] = s[8] = s_odd;
  s[16] = s[17] = s[18] = s_odd;
  return s;
}

MrtRates bgk_mrt_rates(double tau) {
  MrtRates s{};
  s.fill(1.0 / tau);
  return s;
}

std::optional<BoundaryFace> find_boundary_face(const Geometry& g, int x, int y, int z) {
  std::optional<BoundaryFace> face;
  int found = 0;
  for (int axis = 0; axis < 3; ++axis)
    for (int sign : {-1, 1}) {
      int p[3] = {x, y, z};
      p[axis] += sign;
      if (is_solid(g.at_or_solid(p[0], p[1], p[2]))) {
        face = BoundaryFace{axis, sign};
        ++found;
      }
    }
  if (found != 1) return std::nullopt;
  return face;
}

}  // namespace tlbm
