#pragma once
// Intra-tile data-block addressing and the two-copy field store.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <memory>
#include <new>
#include <span>
#include <string_view>

#include "tlbm/lattice.hpp"

namespace tlbm {

enum class Precision : std::uint8_t { F32, F64 };

constexpr int bytes_per_value(Precision p) { return p == Precision::F64 ? 8 : 4; }

enum class LayoutKind : std::uint8_t { XYZ, YXZ, ZigzagNE };

constexpr int l_xyz(int x, int y, int z) { return x + 4 * y + 16 * z; }
constexpr int l_yxz(int x, int y, int z) { return y + 4 * x + 16 * z; }
/// Pairs of consecutive offsets share (x, y) and differ in z; z in {0,1} fills
/// offsets 0..31 and z in {2,3} fills 32..63.
constexpr int l_zigzag_ne(int x, int y, int z) {
  return 2 * (x + 3 * y + ((x + 1) & 4) * (3 - y)) + (z & 1) + 16 * (z & 2);
}

constexpr int block_offset(LayoutKind k, int x, int y, int z) {
  switch (k) {
    case LayoutKind::XYZ: return l_xyz(x, y, z);
    case LayoutKind::YXZ: return l_yxz(x, y, z);
    default: return l_zigzag_ne(x, y, z);
  }
}

/// Checked variants for external callers; throw std::out_of_range.
int layout_offset(LayoutKind k, int x, int y, int z);

std::string_view layout_name(LayoutKind k);

enum class LayoutTableKind : std::uint8_t { Optimized, AllXYZ };

struct LayoutTable {
  std::array<LayoutKind, kQ> kind{};
  /// offset[dir][l_xyz(x,y,z)] -> slot in the data block.
  std::array<std::array<std::uint8_t, kTileNodes>, kQ> offset{};

  static LayoutTable make(LayoutTableKind k);
  static LayoutTable from_kinds(const std::array<LayoutKind, kQ>& kinds);
};

/// XYZ for O,N,S,T,B,NT,NB,ST,SB; YXZ for E,W,ET,EB,NW,SW,WT,WB; zigzagNE for NE,SE.
LayoutKind layout_for_direction(int dir, LayoutTableKind table = LayoutTableKind::Optimized);

/// Default table per precision: optimized for f64, all-XYZ for f32.
template <class T>
constexpr LayoutTableKind default_table() {
  return sizeof(T) == 8 ? LayoutTableKind::Optimized : LayoutTableKind::AllXYZ;
}

/// Base slot of the block (copy, tile, dir): ((copy * t_n + tile) * 19 + dir) * 64.
constexpr std::size_t block_base(std::size_t tile_count, int copy, std::size_t tile, int dir) {
  return ((static_cast<std::size_t>(copy) * tile_count + tile) * kQ + static_cast<std::size_t>(dir)) * kTileNodes;
}

/// Global slot of f_dir at intra-tile node (x,y,z). Throws std::out_of_range.
std::size_t value_address(const LayoutTable& table, std::size_t tile_count, std::size_t tile, int dir, int copy,
                          int x, int y, int z);

template <class T>
struct AlignedDelete {
  void operator()(T* p) const { ::operator delete[](p, std::align_val_t{64}); }
};

/// Two complete copies of every f_i, one 64-slot data block per (copy, tile, dir).
template <class T>
class FieldStore {
 public:
  FieldStore() = default;
  FieldStore(std::size_t tile_count, LayoutTable table)
      : tiles_(tile_count), table_(table), size_(2 * tile_count * kQ * kTileNodes) {
    if (size_ > 0) {
      data_.reset(static_cast<T*>(::operator new[](size_ * sizeof(T), std::align_val_t{64})));
      std::fill(data_.get(), data_.get() + size_, T(0));
    }
  }
  FieldStore(const FieldStore& o) : FieldStore(o.tiles_, o.table_) {
    std::copy(o.data_.get(), o.data_.get() + size_, data_.get());
  }
  FieldStore& operator=(const FieldStore& o) {
    if (this != &o) *this = FieldStore(o);
    return *this;
  }
  FieldStore(FieldStore&&) noexcept = default;
  FieldStore& operator=(FieldStore&&) noexcept = default;

  std::size_t tile_count() const { return tiles_; }
  const LayoutTable& table() const { return table_; }
  std::span<T> values() { return {data_.get(), size_}; }
  std::span<const T> values() const { return {data_.get(), size_}; }

  T* block(int copy, std::size_t tile, int dir) { return data_.get() + block_base(tiles_, copy, tile, dir); }
  const T* block(int copy, std::size_t tile, int dir) const {
    return data_.get() + block_base(tiles_, copy, tile, dir);
  }
  /// `node` is the XYZ linear index inside the tile.
  T& at(int copy, std::size_t tile, int dir, int node) { return block(copy, tile, dir)[table_.offset[dir][node]]; }
  T at(int copy, std::size_t tile, int dir, int node) const {
    return block(copy, tile, dir)[table_.offset[dir][node]];
  }

 private:
  std::size_t tiles_ = 0;
  LayoutTable table_{};
  std::size_t size_ = 0;
  std::unique_ptr<T[], AlignedDelete<T>> data_;
};

}  // namespace tlbm
