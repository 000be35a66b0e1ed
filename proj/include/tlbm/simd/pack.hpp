#pragma once
// Width-1 pack used by the portable reference kernels. The AVX2 packs in
// pack_avx2.hpp expose the same interface so one kernel template serves both.

namespace tlbm::simd {

template <class T>
struct ScalarPack {
  using value_type = T;
  static constexpr int width = 1;
  T v;

  static ScalarPack load(const T* p) { return {*p}; }
  static ScalarPack broadcast(T x) { return {x}; }
  static ScalarPack zero() { return {T(0)}; }
  void store(T* p) const { *p = v; }

  friend ScalarPack operator+(ScalarPack a, ScalarPack b) { return {a.v + b.v}; }
  friend ScalarPack operator-(ScalarPack a, ScalarPack b) { return {a.v - b.v}; }
  friend ScalarPack operator*(ScalarPack a, ScalarPack b) { return {a.v * b.v}; }
  friend ScalarPack operator/(ScalarPack a, ScalarPack b) { return {a.v / b.v}; }
};

}  // namespace tlbm::simd
