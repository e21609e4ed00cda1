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

#include "fsolink/kernels/link_kernel.hpp"

#include <cmath>
#include <string>

#include "fsolink/error.hpp"
#include "fsolink/kernels/link_batch_impl.hpp"

namespace fsolink::kern {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kHalfPi = 1.57079632679489661923;

// Reference stage A: plain libm loop with the same displacement formula the
// geometry module implements per strategy.
void link_stage_a_scalar(const LinkBatchIn& in, const LinkBatchOut& out,
                         const LinkChainConstants& c, std::size_t begin,
                         std::size_t end) {
  for (std::size_t i = begin; i < end; ++i) {
    const double yaw1 = std::atan(in.pert1_x[i] / c.half_len1);
    const double pitch1 = std::atan(in.pert1_y[i] / c.half_len1);
    const double yaw2 = std::atan(in.pert2_x[i] / c.half_len2);
    const double pitch2 = std::atan(in.pert2_y[i] / c.half_len2);
    out.dx_m[i] = c.offset_x + in.pert2_x[i] - in.pert1_x[i] -
                  std::tan(yaw1) * c.z - in.comp_x[i];
    out.dy_m[i] = c.offset_y + in.pert2_y[i] - in.pert1_y[i] -
                  std::tan(pitch1) * c.z - in.comp_y[i];
    out.beta_x_rad[i] = std::fabs(yaw2 - yaw1);
    out.beta_y_rad[i] = std::fabs(pitch2 - pitch1);
  }
}

// Reference stage B routed through the beam/receiver modules.
void link_stage_b_scalar(const LinkBatchOut& out, const LinkBatchParams& p,
                         std::size_t begin, std::size_t end) {
  for (std::size_t i = begin; i < end; ++i) {
    RotationAngles rot;
    rot.beta_x_rad = out.beta_x_rad[i];
    rot.beta_y_rad = out.beta_y_rad[i];
    const Displacement disp{out.dx_m[i], out.dy_m[i]};
    const double pr =
        received_power(p.beam, p.z_m, disp, rot, p.rx.aperture, p.method);
    const double s = snr(pr, p.rx, p.i_b_w_per_m2);
    out.p_r_w[i] = pr;
    out.snr[i] = s;
    out.r_bps[i] = throughput(s, p.rx.bandwidth_hz);
  }
}

}  // namespace

LinkChainConstants derive_link_constants(const LinkBatchParams& params) {
  LinkChainConstants c;
  c.z = params.z_m;
  c.offset_x = params.offset_x_m;
  c.offset_y = params.offset_y_m;
  c.half_len1 = params.half_len1_m;
  c.half_len2 = params.half_len2_m;
  const SpotSize s = spot_size(params.beam, params.z_m, SpotModel::Exact);
  c.spot_wx = s.w_x_m;
  c.spot_wy = s.w_y_m;
  c.half_lx = 0.5 * params.rx.aperture.len_x_m;
  c.half_ly = 0.5 * params.rx.aperture.len_y_m;
  c.aperture_area = params.rx.aperture.area_m2();
  c.p0 = params.beam.power_w;
  c.point_prefactor = 2.0 * params.beam.power_w / (kPi * s.w_x_m * s.w_y_m);
  c.eta = params.rx.responsivity_a_per_w;
  const double b = params.rx.bandwidth_hz;
  const double nep = params.rx.nep_w_per_sqrthz;
  c.noise_const = 2.0 * kElectronCharge * b * c.eta * params.i_b_w_per_m2 *
                      c.aperture_area +
                  nep * nep * c.eta * c.eta * b;
  c.noise_signal = 2.0 * kElectronCharge * b * c.eta;
  c.half_bandwidth = 0.5 * b;
  c.method = params.method;
  return c;
}

bool avx2_available() {
#if defined(FSOLINK_HAVE_AVX2)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend resolve_backend(Backend requested) {
  switch (requested) {
    case Backend::Auto:
      return avx2_available() ? Backend::Avx2 : Backend::Scalar;
    case Backend::Avx2:
      if (!avx2_available()) {
        throw DomainError("AVX2 backend requested but not available");
      }
      return Backend::Avx2;
    case Backend::Scalar:
      return Backend::Scalar;
  }
  return Backend::Scalar;
}

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::Auto: return "auto";
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
  }
  return "?";
}

Backend backend_from_name(const std::string& name) {
  if (name == "auto") return Backend::Auto;
  if (name == "scalar") return Backend::Scalar;
  if (name == "avx2") return Backend::Avx2;
  throw DomainError("unknown backend '" + name + "'");
}

void run_link_batch(const LinkBatchIn& in, const LinkBatchOut& out,
                    const LinkBatchParams& params, Backend backend) {
  const std::size_t n = in.pert1_x.size();
  if (in.pert2_x.size() != n || in.comp_x.size() != n ||
      in.pert1_y.size() != n || in.pert2_y.size() != n ||
      in.comp_y.size() != n || out.dx_m.size() != n || out.dy_m.size() != n ||
      out.beta_x_rad.size() != n || out.beta_y_rad.size() != n ||
      out.p_r_w.size() != n || out.snr.size() != n || out.r_bps.size() != n) {
    throw DomainError("link batch arrays must all have the same length");
  }
  if (n == 0) return;

  const Backend resolved = resolve_backend(backend);
  const LinkChainConstants c = derive_link_constants(params);

  std::size_t vec_end = 0;
#if defined(FSOLINK_HAVE_AVX2)
  if (resolved == Backend::Avx2) {
    vec_end = n - n % 4;
    link_stage_a_avx2(in, out, c, vec_end / 4);
  }
#endif
  link_stage_a_scalar(in, out, c, vec_end, n);

  for (std::size_t i = 0; i < n; ++i) {
    if (out.beta_x_rad[i] >= kHalfPi || out.beta_y_rad[i] >= kHalfPi) {
      throw ModelError("receiver rotation reached pi/2 at step " +
                       std::to_string(i));
    }
  }

#if defined(FSOLINK_HAVE_AVX2)
  if (resolved == Backend::Avx2) {
    link_stage_b_avx2(out, c, vec_end / 4);
  }
#endif
  link_stage_b_scalar(out, params, vec_end, n);
}

}  // namespace fsolink::kern
