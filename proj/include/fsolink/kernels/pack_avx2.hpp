// Copyright (c) 2026 The fsolink Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Only meaningful in translation units compiled with -mavx2 -mfma.
#if defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

namespace fsolink::kern {

// Four double lanes on AVX2. Mirrors the Pack1 surface so vec_math.hpp
// instantiates unchanged.
struct Pack4 {
  __m256d v;

  using Mask = __m256d;  // lane = all-ones when true
  static constexpr int width = 4;

  static Pack4 splat(double x) { return {_mm256_set1_pd(x)}; }
  static Pack4 load(const double* p) { return {_mm256_loadu_pd(p)}; }
  void store(double* p) const { _mm256_storeu_pd(p, v); }
};

inline Pack4 operator+(Pack4 a, Pack4 b) { return {_mm256_add_pd(a.v, b.v)}; }
inline Pack4 operator-(Pack4 a, Pack4 b) { return {_mm256_sub_pd(a.v, b.v)}; }
inline Pack4 operator*(Pack4 a, Pack4 b) { return {_mm256_mul_pd(a.v, b.v)}; }
inline Pack4 operator/(Pack4 a, Pack4 b) { return {_mm256_div_pd(a.v, b.v)}; }

inline Pack4 vfma(Pack4 a, Pack4 b, Pack4 c) {
  return {_mm256_fmadd_pd(a.v, b.v, c.v)};
}
inline Pack4 vneg(Pack4 a) {
  return {_mm256_xor_pd(a.v, _mm256_set1_pd(-0.0))};
}
inline Pack4 vabs(Pack4 a) {
  return {_mm256_andnot_pd(_mm256_set1_pd(-0.0), a.v)};
}
inline Pack4 vmin(Pack4 a, Pack4 b) { return {_mm256_min_pd(a.v, b.v)}; }
inline Pack4 vmax(Pack4 a, Pack4 b) { return {_mm256_max_pd(a.v, b.v)}; }
inline Pack4 vfloor(Pack4 a) { return {_mm256_floor_pd(a.v)}; }

inline __m256d vlt(Pack4 a, Pack4 b) { return _mm256_cmp_pd(a.v, b.v, _CMP_LT_OQ); }
inline __m256d vle(Pack4 a, Pack4 b) { return _mm256_cmp_pd(a.v, b.v, _CMP_LE_OQ); }
inline __m256d vgt(Pack4 a, Pack4 b) { return _mm256_cmp_pd(a.v, b.v, _CMP_GT_OQ); }
inline __m256d vge(Pack4 a, Pack4 b) { return _mm256_cmp_pd(a.v, b.v, _CMP_GE_OQ); }
inline __m256d veq(Pack4 a, Pack4 b) { return _mm256_cmp_pd(a.v, b.v, _CMP_EQ_OQ); }
inline __m256d mask_and(__m256d a, __m256d b) { return _mm256_and_pd(a, b); }
inline __m256d mask_or(__m256d a, __m256d b) { return _mm256_or_pd(a, b); }
inline Pack4 vselect(__m256d m, Pack4 a, Pack4 b) {
  return {_mm256_blendv_pd(b.v, a.v, m)};
}

/// 2^k for integer-valued k in [-1022, 1024]; k = 1024 yields +inf.
inline Pack4 vpow2i(Pack4 k) {
  const __m128i k32 = _mm256_cvtpd_epi32(k.v);
  const __m256i k64 = _mm256_cvtepi32_epi64(k32);
  const __m256i biased = _mm256_add_epi64(k64, _mm256_set1_epi64x(1023));
  return {_mm256_castsi256_pd(_mm256_slli_epi64(biased, 52))};
}

/// Splits positive normal x into mantissa in [0.5, 1) and integer exponent.
inline void vfrexp(Pack4 x, Pack4& mantissa, Pack4& exponent) {
  const __m256i bits = _mm256_castpd_si256(x.v);
  const __m256i e_raw = _mm256_and_si256(_mm256_srli_epi64(bits, 52),
                                         _mm256_set1_epi64x(0x7ff));
  // int64 -> double for small non-negative values: bias by 2^52 and subtract.
  const __m256i magic = _mm256_set1_epi64x(0x4330000000000000LL);
  const __m256d e_biased =
      _mm256_castsi256_pd(_mm256_or_si256(e_raw, magic));
  exponent = {_mm256_sub_pd(e_biased, _mm256_set1_pd(4503599627370496.0 + 1022.0))};
  const __m256i m = _mm256_or_si256(
      _mm256_and_si256(bits, _mm256_set1_epi64x(0x000fffffffffffffLL)),
      _mm256_set1_epi64x(0x3fe0000000000000LL));
  mantissa = {_mm256_castsi256_pd(m)};
}

}  // namespace fsolink::kern

#endif  // __AVX2__ && __FMA__
