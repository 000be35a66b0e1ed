#pragma once
// D3Q19 lattice constants and the intra-tile thread numbering.

#include <array>
#include <cstdint>
#include <string_view>

namespace tlbm {

inline constexpr int kQ = 19;
inline constexpr int kTileEdge = 4;
inline constexpr int kTileNodes = kTileEdge * kTileEdge * kTileEdge;
inline constexpr int kWarpSize = 32;
inline constexpr int kWarpsPerTile = kTileNodes / kWarpSize;

// Canonical direction order. x grows to the east, y to the north, z to the top.
//
//   idx  name  vector      idx  name  vector
//    0   O    ( 0, 0, 0)    10  SW   (-1,-1, 0)
//    1   E    ( 1, 0, 0)    11  ET   ( 1, 0, 1)
//    2   N    ( 0, 1, 0)    12  EB   ( 1, 0,-1)
//    3   W    (-1, 0, 0)    13  WT   (-1, 0, 1)
//    4   S    ( 0,-1, 0)    14  WB   (-1, 0,-1)
//    5   T    ( 0, 0, 1)    15  NT   ( 0, 1, 1)
//    6   B    ( 0, 0,-1)    16  NB   ( 0, 1,-1)
//    7   NE   ( 1, 1, 0)    17  ST   ( 0,-1, 1)
//    8   NW   (-1, 1, 0)    18  SB   ( 0,-1,-1)
//    9   SE   ( 1,-1, 0)
enum class Dir : std::uint8_t {
  O, E, N, W, S, T, B, NE, NW, SE, SW, ET, EB, WT, WB, NT, NB, ST, SB
};

struct Int3 {
  int x = 0, y = 0, z = 0;
  friend constexpr bool operator==(const Int3&, const Int3&) = default;
  constexpr Int3 operator-() const { return {-x, -y, -z}; }
};

namespace detail {
inline constexpr std::array<Int3, kQ> kVectors = {{
    {0, 0, 0},
    {1, 0, 0}, {0, 1, 0}, {-1, 0, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1},
    {1, 1, 0}, {-1, 1, 0}, {1, -1, 0}, {-1, -1, 0},
    {1, 0, 1}, {1, 0, -1}, {-1, 0, 1}, {-1, 0, -1},
    {0, 1, 1}, {0, 1, -1}, {0, -1, 1}, {0, -1, -1},
}};
inline constexpr std::array<int, kQ> kOpposite = {
    0, 3, 4, 1, 2, 6, 5, 10, 9, 8, 7, 14, 13, 12, 11, 18, 17, 16, 15};
inline constexpr std::array<std::string_view, kQ> kNames = {
    "O", "E", "N", "W", "S", "T", "B", "NE", "NW", "SE",
    "SW", "ET", "EB", "WT", "WB", "NT", "NB", "ST", "SB"};
}  // namespace detail

/// Exact weights as numerator over 36.
inline constexpr std::array<int, kQ> kWeight36 = {
    12, 2, 2, 2, 2, 2, 2, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1};

template <class T>
inline constexpr std::array<T, kQ> kWeights = [] {
  std::array<T, kQ> w{};
  for (int i = 0; i < kQ; ++i) w[i] = T(kWeight36[i]) / T(36);
  return w;
}();

inline constexpr double kCs2 = 1.0 / 3.0;

// Unchecked accessors for inner loops.
constexpr Int3 vec(int i) { return detail::kVectors[i]; }
constexpr int opposite(int i) { return detail::kOpposite[i]; }

/// Checked accessors; throw std::out_of_range for i outside 0..18.
Int3 direction_vector(int i);
double weight(int i);
int opposite_checked(int i);
std::string_view direction_name(int i);
/// Inverse of direction_name; throws std::invalid_argument on unknown names.
int direction_from_name(std::string_view name);

constexpr int index(Dir d) { return static_cast<int>(d); }

/// tx + 4*ty + 16*tz. Warp 0 holds indices 0..31 (z in {0,1}), warp 1 holds 32..63.
int thread_linear_index(int tx, int ty, int tz);

constexpr int warp_of(int linear) { return linear / kWarpSize; }

}  // namespace tlbm
