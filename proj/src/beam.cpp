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

#include "fsolink/beam.hpp"

#include <cmath>

#include "fsolink/error.hpp"

namespace fsolink {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrt2 = 1.41421356237309504880;
constexpr double kHalfPi = 1.57079632679489661923;

void require(bool ok, const char* message) {
  if (!ok) throw DomainError(message);
}

}  // namespace

BeamParams::BeamParams(double power, double wavelength, double waist_x,
                       double waist_y)
    : power_w(power), wavelength_m(wavelength), waist_x_m(waist_x),
      waist_y_m(waist_y) {
  require(std::isfinite(power) && power > 0.0, "beam power must be positive");
  require(std::isfinite(wavelength) && wavelength > 0.0,
          "wavelength must be positive");
  require(std::isfinite(waist_x) && waist_x > 0.0 && std::isfinite(waist_y) &&
              waist_y > 0.0,
          "beam waists must be positive");
  // Paraxial validity: the waist has to span many wavelengths.
  require(wavelength < waist_x / 10.0 && wavelength < waist_y / 10.0,
          "beam waist too small for the paraxial model (need waist > 10 * wavelength)");
}

Aperture::Aperture(double len_x, double len_y)
    : len_x_m(len_x), len_y_m(len_y) {
  require(std::isfinite(len_x) && len_x > 0.0 && std::isfinite(len_y) &&
              len_y > 0.0,
          "aperture sides must be positive");
}

DivergenceAngles divergence(const BeamParams& beam) {
  return {beam.wavelength_m / (kPi * beam.waist_x_m),
          beam.wavelength_m / (kPi * beam.waist_y_m)};
}

double rayleigh_range(double waist_m, double wavelength_m) {
  return kPi * waist_m * waist_m / wavelength_m;
}

SpotSize spot_size(const BeamParams& beam, double z_m, SpotModel mode) {
  require(std::isfinite(z_m) && z_m >= 0.0, "range must be non-negative");
  SpotSize s{};
  s.z_m = z_m;
  if (mode == SpotModel::Exact) {
    const auto grow = [&](double w0) {
      const double q = beam.wavelength_m * z_m / (kPi * w0 * w0);
      return w0 * std::sqrt(1.0 + q * q);
    };
    s.w_x_m = grow(beam.waist_x_m);
    s.w_y_m = grow(beam.waist_y_m);
  } else {
    const DivergenceAngles d = divergence(beam);
    s.w_x_m = d.theta_x_rad * z_m;
    s.w_y_m = d.theta_y_rad * z_m;
    const double zr = std::min(rayleigh_range(beam.waist_x_m, beam.wavelength_m),
                               rayleigh_range(beam.waist_y_m, beam.wavelength_m));
    s.far_field_warning = z_m < zr;
  }
  return s;
}

double intensity(const BeamParams& beam, double z_m, double x_m, double y_m) {
  const SpotSize s = spot_size(beam, z_m, SpotModel::Exact);
  const double ex = x_m / s.w_x_m;
  const double ey = y_m / s.w_y_m;
  return 2.0 * beam.power_w / (kPi * s.w_x_m * s.w_y_m) *
         std::exp(-2.0 * ex * ex) * std::exp(-2.0 * ey * ey);
}

double erf_interval(double lo, double hi) {
  if (lo >= 0.0) return std::erfc(lo) - std::erfc(hi);
  if (hi <= 0.0) return std::erfc(-hi) - std::erfc(-lo);
  return std::erf(hi) - std::erf(lo);
}

double received_power(const BeamParams& beam, double z_m,
                      const Displacement& disp, const RotationAngles& rot,
                      const Aperture& aperture, PowerMethod method) {
  require(z_m > 0.0, "receiver must be at a positive range");
  require(rot.beta_x_rad >= 0.0 && rot.beta_y_rad >= 0.0,
          "rotation angles are absolute values");
  if (rot.beta_x_rad >= kHalfPi || rot.beta_y_rad >= kHalfPi) {
    throw DomainError("receiver facing away: rotation angle >= pi/2");
  }
  const double projection = std::cos(rot.beta_x_rad) * std::cos(rot.beta_y_rad);

  if (method == PowerMethod::PointApprox) {
    const double p =
        intensity(beam, z_m, disp.dx_m, disp.dy_m) * aperture.area_m2() *
        projection;
    // The center-sample approximation overshoots once the aperture is not
    // small against the spot; cap it at the total power the rotated aperture
    // could ever collect.
    return std::min(p, beam.power_w * projection);
  }

  const SpotSize s = spot_size(beam, z_m, SpotModel::Exact);
  const auto axis_fraction = [](double center, double length, double w) {
    const double lo = kSqrt2 * (center - 0.5 * length) / w;
    const double hi = kSqrt2 * (center + 0.5 * length) / w;
    return erf_interval(lo, hi);
  };
  // max() guards against a -1 ulp erf difference on degenerate intervals.
  return std::max(0.0, 0.25 * beam.power_w *
                           axis_fraction(disp.dx_m, aperture.len_x_m, s.w_x_m) *
                           axis_fraction(disp.dy_m, aperture.len_y_m, s.w_y_m) *
                           projection);
}

}  // namespace fsolink
