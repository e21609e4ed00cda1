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

// Branch-free double-precision transcendentals over the pack abstraction
// (Pack1 / Pack4). The rational approximations follow the classic Cephes
// forms; every function is accuracy-tested against libm in the kernel test
// suite. Domains are the ones the link kernel needs:
//
//   vexp    full double range (clamped; underflows to 0 below -708.396)
//   vlog2   positive normal inputs
//   vatan   full range
//   vtan    |x| < pi/2
//   vcos    |x| <= pi
//   verf    full range; verfc accurate to ~1e-13 relative out to x = 26
//
// verf_interval is the primitive the closed-form aperture integral is built
// on: it differences the error function across an interval without
// cancellation by switching to erfc on same-sign tails.

#include <array>

namespace fsolink::kern {

namespace detail {

template <class P, std::size_t N>
inline P polevl(P x, const std::array<double, N>& c) {
  P r = P::splat(c[0]);
  for (std::size_t i = 1; i < N; ++i) r = vfma(r, x, P::splat(c[i]));
  return r;
}

// As polevl with an implied leading coefficient of 1.
template <class P, std::size_t N>
inline P p1evl(P x, const std::array<double, N>& c) {
  P r = x + P::splat(c[0]);
  for (std::size_t i = 1; i < N; ++i) r = vfma(r, x, P::splat(c[i]));
  return r;
}

inline constexpr std::array<double, 3> kExpP = {
    1.26177193074810590878e-4, 3.02994407707441961300e-2,
    9.99999999999999999910e-1};
inline constexpr std::array<double, 4> kExpQ = {
    3.00198505138664455042e-6, 2.52448340349684104192e-3,
    2.27265548208155028766e-1, 2.00000000000000000005e0};

inline constexpr std::array<double, 5> kAtanP = {
    -8.750608600031904122785e-1, -1.615753718733365076637e1,
    -7.500855792314704667340e1, -1.228866684490136173410e2,
    -6.485021904942025371773e1};
inline constexpr std::array<double, 5> kAtanQ = {
    2.485846490142306297962e1, 1.650270098316988542046e2,
    4.328810604912902668951e2, 4.853903996359136964868e2,
    1.945506571482613964425e2};

inline constexpr std::array<double, 3> kTanP = {
    -1.30936939181383777646e4, 1.15351664838587416140e6,
    -1.79565251976484877988e7};
inline constexpr std::array<double, 4> kTanQ = {
    1.36812963470692954678e4, -1.32089234440210967447e6,
    2.50083801823357915839e7, -5.38695755929454629881e7};

inline constexpr std::array<double, 6> kSinCof = {
    1.58962301576546568060e-10, -2.50507477628578072866e-8,
    2.75573136213857245213e-6, -1.98412698295895385996e-4,
    8.33333333332211858878e-3, -1.66666666666666307295e-1};
inline constexpr std::array<double, 6> kCosCof = {
    -1.13585365213876817300e-11, 2.08757008419747316778e-9,
    -2.75573141792967388112e-7, 2.48015872888517179954e-5,
    -1.38888888888730564116e-3, 4.16666666666665929218e-2};

inline constexpr std::array<double, 5> kErfT = {
    9.60497373987051638749e0, 9.00260197203842689217e1,
    2.23200534594684319226e3, 7.00332514112805075473e3,
    5.55923013010394962768e4};
inline constexpr std::array<double, 5> kErfU = {
    3.35617141647503099647e1, 5.21357949780152679795e2,
    4.59432382970980127987e3, 2.26290000613890934246e4,
    4.92673942608635921086e4};
inline constexpr std::array<double, 9> kErfcP = {
    2.46196981473530512524e-10, 5.64189564831068821977e-1,
    7.46321056442269912687e0, 4.86371970985681366614e1,
    1.96520832956077098242e2, 5.26445194995477358631e2,
    9.34528527171957607540e2, 1.02755188689515710272e3,
    5.57535335369399327526e2};
inline constexpr std::array<double, 8> kErfcQ = {
    1.32281951154744992508e1, 8.67072140885989742329e1,
    3.54937778887819891062e2, 9.75708501743205489753e2,
    1.82390916687909736289e3, 2.24633760818710981792e3,
    1.65666309194161350182e3, 5.57535340817727675546e2};

// Alternating asymptotic series for erfc on x >= 8, where values are below
// 1.2e-29: coefficients (-1)^k (2k-1)!! in 1/(2x^2), truncation < 4e-17.
inline constexpr std::array<double, 16> kErfcAsym = {
    -6190283353629375.0, 213458046676875.0, -7905853580625.0,
    316234143225.0, -13749310575.0, 654729075.0, -34459425.0, 2027025.0,
    -135135.0, 10395.0, -945.0, 105.0, -15.0, 3.0, -1.0, 1.0};
// (stored highest-order first for polevl)

inline constexpr double kLog2E = 1.4426950408889634073599;
inline constexpr double kExpC1 = 6.93145751953125e-1;
inline constexpr double kExpC2 = 1.42860682030941723212e-6;
inline constexpr double kExpMin = -708.39641853226410622;
inline constexpr double kExpMax = 709.78271289338399684;

inline constexpr double kInvLn2Hi = 1.4426950216293334961;
inline constexpr double kInvLn2Lo = 1.9259629911266175e-8;

inline constexpr double kTanDp1 = 7.853981554508209228515625e-1;
inline constexpr double kTanDp2 = 7.94662735614792836714e-9;
inline constexpr double kTanDp3 = 3.06161699786838294307e-17;

inline constexpr double kMoreBits = 6.123233995736765886130e-17;
inline constexpr double kInvSqrtPi = 5.64189583547756286948e-1;

}  // namespace detail

template <class P>
inline P vexp(P x) {
  using namespace detail;
  const P xc = vmin(vmax(x, P::splat(kExpMin)), P::splat(kExpMax));
  const P k = vfloor(vfma(xc, P::splat(kLog2E), P::splat(0.5)));
  P r = vfma(k, P::splat(-kExpC1), xc);
  r = vfma(k, P::splat(-kExpC2), r);
  const P z = r * r;
  const P p = r * polevl(z, kExpP);
  const P e = P::splat(1.0) + P::splat(2.0) * (p / (polevl(z, kExpQ) - p));
  const P result = e * vpow2i(k);
  return vselect(vlt(x, P::splat(kExpMin)), P::splat(0.0), result);
}

template <class P>
inline P vlog2(P x) {
  using namespace detail;
  P m, e;
  vfrexp(x, m, e);
  const auto low = vlt(m, P::splat(0.70710678118654752440));
  m = vselect(low, m + m, m);
  e = vselect(low, e - P::splat(1.0), e);
  const P t = (m - P::splat(1.0)) / (m + P::splat(1.0));
  const P u = t * t;
  // atanh tail: 1/3 + u/5 + ... + u^9/21 (truncation < 3e-17 relative).
  P s = P::splat(1.0 / 21.0);
  s = vfma(s, u, P::splat(1.0 / 19.0));
  s = vfma(s, u, P::splat(1.0 / 17.0));
  s = vfma(s, u, P::splat(1.0 / 15.0));
  s = vfma(s, u, P::splat(1.0 / 13.0));
  s = vfma(s, u, P::splat(1.0 / 11.0));
  s = vfma(s, u, P::splat(1.0 / 9.0));
  s = vfma(s, u, P::splat(1.0 / 7.0));
  s = vfma(s, u, P::splat(1.0 / 5.0));
  s = vfma(s, u, P::splat(1.0 / 3.0));
  const P r = P::splat(2.0) * vfma(t * u, s, t);  // ln(m)
  return e + vfma(r, P::splat(kInvLn2Hi), r * P::splat(kInvLn2Lo));
}

template <class P>
inline P vatan(P x) {
  using namespace detail;
  const P ax = vabs(x);
  // hi takes precedence in the nested selects, so `mid` may be true there.
  const auto hi = vgt(ax, P::splat(2.41421356237309504880));  // tan(3pi/8)
  const auto mid = vgt(ax, P::splat(0.66));
  const P xr = vselect(
      hi, P::splat(-1.0) / ax,
      vselect(mid, (ax - P::splat(1.0)) / (ax + P::splat(1.0)), ax));
  const P y = vselect(hi, P::splat(1.57079632679489661923),
                      vselect(mid, P::splat(0.78539816339744830962),
                              P::splat(0.0)));
  const P extra = vselect(hi, P::splat(kMoreBits),
                          vselect(mid, P::splat(0.5 * kMoreBits),
                                  P::splat(0.0)));
  const P z = xr * xr;
  P w = z * (polevl(z, kAtanP) / p1evl(z, kAtanQ));
  w = vfma(xr, w, xr) + extra;
  const P r = y + w;
  return vselect(vlt(x, P::splat(0.0)), vneg(r), r);
}

// |x| < pi/2.
template <class P>
inline P vtan(P x) {
  using namespace detail;
  const P ax = vabs(x);
  P j = vfloor(ax * P::splat(4.0 / 3.14159265358979323846));  // 0 or 1
  const P odd = j - P::splat(2.0) * vfloor(j * P::splat(0.5));
  j = j + odd;  // even: 0 or 2
  P z = vfma(j, P::splat(-kTanDp1), ax);
  z = vfma(j, P::splat(-kTanDp2), z);
  z = vfma(j, P::splat(-kTanDp3), z);
  const P zz = z * z;
  const P rational =
      vfma(z * zz, polevl(zz, kTanP) / p1evl(zz, kTanQ), z);
  P w = vselect(vgt(zz, P::splat(1e-14)), rational, z);
  w = vselect(vgt(j, P::splat(1.0)), P::splat(-1.0) / w, w);
  return vselect(vlt(x, P::splat(0.0)), vneg(w), w);
}

// |x| <= pi.
template <class P>
inline P vcos(P x) {
  using namespace detail;
  const P ax = vabs(x);
  P j = vfloor(ax * P::splat(4.0 / 3.14159265358979323846));  // 0..4
  const P odd = j - P::splat(2.0) * vfloor(j * P::splat(0.5));
  j = j + odd;  // 0, 2 or 4
  P z = vfma(j, P::splat(-kTanDp1), ax);
  z = vfma(j, P::splat(-kTanDp2), z);
  z = vfma(j, P::splat(-kTanDp3), z);
  const P zz = z * z;
  const P poly_sin = vfma(z * zz, polevl(zz, kSinCof), z);
  const P poly_cos =
      vfma(zz * zz, polevl(zz, kCosCof),
           vfma(zz, P::splat(-0.5), P::splat(1.0)));
  // Octants 0 and 4 (j = 0, 4) use the cosine polynomial; octant 2 the sine
  // one. Sign is negative for j = 2 and j = 4.
  const auto use_sin = veq(j, P::splat(2.0));
  const P w = vselect(use_sin, poly_sin, poly_cos);
  const auto negative = vge(j, P::splat(2.0));
  return vselect(negative, vneg(w), w);
}

template <class P>
inline P verfc(P a);

template <class P>
inline P verf(P x) {
  using namespace detail;
  const P z = x * x;
  const P small = x * (polevl(z, kErfT) / p1evl(z, kErfU));
  const P big = P::splat(1.0) - verfc(x);
  return vselect(vle(vabs(x), P::splat(1.0)), small, big);
}

template <class P>
inline P verfc(P a) {
  using namespace detail;
  const P x = vabs(a);
  const P ez = vexp(vneg(a * a));
  // Rational form on [1, 8).
  const P y_main = ez * (polevl(x, kErfcP) / p1evl(x, kErfcQ));
  // Asymptotic series beyond 8 (values < 1.2e-29).
  const P u = P::splat(0.5) / (x * x);
  const P y_asym =
      ez * P::splat(kInvSqrtPi) / x * polevl(u, kErfcAsym);
  P y = vselect(vge(x, P::splat(8.0)), y_asym, y_main);
  y = vselect(vlt(a, P::splat(0.0)), P::splat(2.0) - y, y);
  // |a| < 1 goes through the erf rational instead.
  const P z = a * a;
  const P y_small =
      P::splat(1.0) - a * (polevl(z, kErfT) / p1evl(z, kErfU));
  return vselect(vlt(x, P::splat(1.0)), y_small, y);
}

/// erf(hi) - erf(lo) for hi >= lo, cancellation-safe on same-sign tails.
template <class P>
inline P verf_interval(P lo, P hi) {
  const P both_pos = verfc(lo) - verfc(hi);
  const P both_neg = verfc(vneg(hi)) - verfc(vneg(lo));
  const P mixed = verf(hi) - verf(lo);
  const P zero = P::splat(0.0);
  return vselect(vge(lo, zero), both_pos,
                 vselect(vle(hi, zero), both_neg, mixed));
}

}  // namespace fsolink::kern
