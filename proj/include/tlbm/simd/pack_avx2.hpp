#pragma once
// AVX2 packs. Only include from translation units compiled with -mavx2.
// No FMA: every operation rounds exactly like the scalar pack.

#include <immintrin.h>

namespace tlbm::simd {

struct Avx2PackD {
  using value_type = double;
  static constexpr int width = 4;
  __m256d v;

  static Avx2PackD load(const double* p) { return {_mm256_loadu_pd(p)}; }
  static Avx2PackD broadcast(double x) { return {_mm256_set1_pd(x)}; }
  static Avx2PackD zero() { return {_mm256_setzero_pd()}; }
  void store(double* p) const { _mm256_storeu_pd(p, v); }

  friend Avx2PackD operator+(Avx2PackD a, Avx2PackD b) { return {_mm256_add_pd(a.v, b.v)}; }
  friend Avx2PackD operator-(Avx2PackD a, Avx2PackD b) { return {_mm256_sub_pd(a.v, b.v)}; }
  friend Avx2PackD operator*(Avx2PackD a, Avx2PackD b) { return {_mm256_mul_pd(a.v, b.v)}; }
  friend Avx2PackD operator/(Avx2PackD a, Avx2PackD b) { return {_mm256_div_pd(a.v, b.v)}; }
};

struct Avx2PackF {
  using value_type = float;
  static constexpr int width = 8;
  __m256 v;

  static Avx2PackF load(const float* p) { return {_mm256_loadu_ps(p)}; }
  static Avx2PackF broadcast(float x) { return {_mm256_set1_ps(x)}; }
  static Avx2PackF zero() { return {_mm256_setzero_ps()}; }
  void store(float* p) const { _mm256_storeu_ps(p, v); }

  friend Avx2PackF operator+(Avx2PackF a, Avx2PackF b) { return {_mm256_add_ps(a.v, b.v)}; }
  friend Avx2PackF operator-(Avx2PackF a, Avx2PackF b) { return {_mm256_sub_ps(a.v, b.v)}; }
  friend Avx2PackF operator*(Avx2PackF a, Avx2PackF b) { return {_mm256_mul_ps(a.v, b.v)}; }
  friend Avx2PackF operator/(Avx2PackF a, Avx2PackF b) { return {_mm256_div_ps(a.v, b.v)}; }
};

}  // namespace tlbm::simd
