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

// Pack-generic implementation of the batched link chain. Instantiated with
// Pack4 in the AVX2 translation unit; tests also instantiate it with Pack1 to
// check lane-for-lane agreement.

#include <cstddef>

#include "fsolink/kernels/link_kernel.hpp"
#include "fsolink/kernels/vec_math.hpp"

namespace fsolink::kern {

/// Batch-invariant values derived once from LinkBatchParams.
struct LinkChainConstants {
  double z = 0.0;
  double offset_x = 0.0, offset_y = 0.0;
  double half_len1 = 0.0, half_len2 = 0.0;
  double spot_wx = 0.0, spot_wy = 0.0;
  double half_lx = 0.0, half_ly = 0.0;
  double aperture_area = 0.0;
  double p0 = 0.0;
  double point_prefactor = 0.0;  // 2 P0 / (pi Wx Wy)
  double eta = 0.0;
  double noise_const = 0.0;  // 2 e B eta I_b A_R + NEP^2 eta^2 B
  double noise_signal = 0.0;  // 2 e B eta
  double half_bandwidth = 0.0;
  PowerMethod method = PowerMethod::ExactIntegral;
};

LinkChainConstants derive_link_constants(const LinkBatchParams& params);

// Stage A: strokes -> yaw/pitch -> displacement and rotation angles.
// Processes lanes [begin, end); end - begin must be a multiple of P::width.
template <class P>
inline void link_stage_a_packs(const LinkBatchIn& in, const LinkBatchOut& out,
                               const LinkChainConstants& c, std::size_t begin,
                               std::size_t end) {
  const P z = P::splat(c.z);
  const P half1 = P::splat(c.half_len1);
  const P half2 = P::splat(c.half_len2);
  const P offx = P::splat(c.offset_x);
  const P offy = P::splat(c.offset_y);
  for (std::size_t i = begin; i < end; i += P::width) {
    const P p1x = P::load(in.pert1_x.data() + i);
    const P p2x = P::load(in.pert2_x.data() + i);
    const P cx = P::load(in.comp_x.data() + i);
    const P p1y = P::load(in.pert1_y.data() + i);
    const P p2y = P::load(in.pert2_y.data() + i);
    const P cy = P::load(in.comp_y.data() + i);

    const P yaw1 = vatan(p1x / half1);
    const P pitch1 = vatan(p1y / half1);
    const P yaw2 = vatan(p2x / half2);
    const P pitch2 = vatan(p2y / half2);

    const P dx = offx + p2x - p1x - vtan(yaw1) * z - cx;
    const P dy = offy + p2y - p1y - vtan(pitch1) * z - cy;

    dx.store(out.dx_m.data() + i);
    dy.store(out.dy_m.data() + i);
    vabs(yaw2 - yaw1).store(out.beta_x_rad.data() + i);
    vabs(pitch2 - pitch1).store(out.beta_y_rad.data() + i);
  }
}

// Stage B: displacement + rotations -> received power -> SNR -> throughput.
template <class P>
inline void link_stage_b_packs(const LinkBatchOut& out,
                               const LinkChainConstants& c, std::size_t begin,
                               std::size_t end) {
  const P sqrt2 = P::splat(1.41421356237309504880);
  const P wx = P::splat(c.spot_wx);
  const P wy = P::splat(c.spot_wy);
  const P half_lx = P::splat(c.half_lx);
  const P half_ly = P::splat(c.half_ly);
  const P quarter_p0 = P::splat(0.25 * c.p0);
  const P cap = P::splat(c.p0);
  const P prefactor = P::splat(c.point_prefactor);
  const P area = P::splat(c.aperture_area);
  const P eta = P::splat(c.eta);
  const P noise_const = P::splat(c.noise_const);
  const P noise_signal = P::splat(c.noise_signal);
  const P half_b = P::splat(c.half_bandwidth);
  const P zero = P::splat(0.0);
  const P one = P::splat(1.0);
  const P minus_two = P::splat(-2.0);

  for (std::size_t i = begin; i < end; i += P::width) {
    const P dx = P::load(out.dx_m.data() + i);
    const P dy = P::load(out.dy_m.data() + i);
    const P bx = P::load(out.beta_x_rad.data() + i);
    const P by = P::load(out.beta_y_rad.data() + i);

    const P projection = vcos(bx) * vcos(by);

    P pr;
    if (c.method == PowerMethod::ExactIntegral) {
      const P ix = verf_interval((dx - half_lx) * sqrt2 / wx,
                                 (dx + half_lx) * sqrt2 / wx);
      const P iy = verf_interval((dy - half_ly) * sqrt2 / wy,
                                 (dy + half_ly) * sqrt2 / wy);
      pr = vmax(zero, quarter_p0 * ix * iy * projection);
    } else {
      const P ex = dx / wx;
      const P ey = dy / wy;
      const P inten =
          prefactor * vexp(minus_two * ex * ex) * vexp(minus_two * ey * ey);
      pr = vmin(inten * area * projection, cap * projection);
    }

    const P signal = pr * eta;
    const P snr = signal * signal / (vfma(noise_signal, pr, noise_const));
    const P r = half_b * vlog2(one + snr);

    pr.store(out.p_r_w.data() + i);
    snr.store(out.snr.data() + i);
    r.store(out.r_bps.data() + i);
  }
}

#if defined(FSOLINK_HAVE_AVX2)
void link_stage_a_avx2(const LinkBatchIn& in, const LinkBatchOut& out,
                       const LinkChainConstants& c, std::size_t n_packs4);
void link_stage_b_avx2(const LinkBatchOut& out, const LinkChainConstants& c,
                       std::size_t n_packs4);
#endif

}  // namespace fsolink::kern
