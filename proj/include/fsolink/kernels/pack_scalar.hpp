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

#include <bit>
#include <cmath>
#include <cstdint>

namespace fsolink::kern {

// Width-1 pack. Exists so the generic math in vec_math.hpp can be exercised
// lane-for-lane against wide packs and against libm in tests.
struct Pack1 {
  double v;

  using Mask = bool;
  static constexpr int width = 1;

  static Pack1 splat(double x) { return {x}; }
  static Pack1 load(const double* p) { return {*p}; }
  void store(double* p) const { *p = v; }
};

inline Pack1 operator+(Pack1 a, Pack1 b) { return {a.v + b.v}; }
inline Pack1 operator-(Pack1 a, Pack1 b) { return {a.v - b.v}; }
inline Pack1 operator*(Pack1 a, Pack1 b) { return {a.v * b.v}; }
inline Pack1 operator/(Pack1 a, Pack1 b) { return {a.v / b.v}; }

inline Pack1 vfma(Pack1 a, Pack1 b, Pack1 c) { return {std::fma(a.v, b.v, c.v)}; }
inline Pack1 vneg(Pack1 a) { return {-a.v}; }
inline Pack1 vabs(Pack1 a) { return {std::fabs(a.v)}; }
inline Pack1 vmin(Pack1 a, Pack1 b) { return {a.v < b.v ? a.v : b.v}; }
inline Pack1 vmax(Pack1 a, Pack1 b) { return {a.v > b.v ? a.v : b.v}; }
inline Pack1 vfloor(Pack1 a) { return {std::floor(a.v)}; }

inline bool vlt(Pack1 a, Pack1 b) { return a.v < b.v; }
inline bool vle(Pack1 a, Pack1 b) { return a.v <= b.v; }
inline bool vgt(Pack1 a, Pack1 b) { return a.v > b.v; }
inline bool vge(Pack1 a, Pack1 b) { return a.v >= b.v; }
inline bool veq(Pack1 a, Pack1 b) { return a.v == b.v; }
inline bool mask_and(bool a, bool b) { return a && b; }
inline bool mask_or(bool a, bool b) { return a || b; }
inline Pack1 vselect(bool m, Pack1 a, Pack1 b) { return m ? a : b; }

/// 2^k for integer-valued k in [-1022, 1024]; k = 1024 yields +inf.
inline Pack1 vpow2i(Pack1 k) {
  const auto ik = static_cast<std::int64_t>(k.v);
  return {std::bit_cast<double>(static_cast<std::uint64_t>(ik + 1023) << 52)};
}

/// Splits positive normal x into mantissa in [0.5, 1) and integer exponent.
inline void vfrexp(Pack1 x, Pack1& mantissa, Pack1& exponent) {
  const auto bits = std::bit_cast<std::uint64_t>(x.v);
  const auto e = static_cast<std::int64_t>((bits >> 52) & 0x7ff) - 1022;
  const std::uint64_t m =
      (bits & 0x000fffffffffffffULL) | 0x3fe0000000000000ULL;
  mantissa = {std::bit_cast<double>(m)};
  exponent = {static_cast<double>(e)};
}

}  // namespace fsolink::kern
