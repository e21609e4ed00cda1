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

#include "fsolink/geometry.hpp"

namespace fsolink {

/// TEM00 Gaussian-beam emission parameters, waist located at the transmitter.
/// Construction enforces positivity and paraxial validity
/// (wavelength < waist / 10 on both axes).
struct BeamParams {
  double power_w;
  double wavelength_m;
  double waist_x_m;
  double waist_y_m;

  BeamParams(double power_w, double wavelength_m, double waist_x_m,
             double waist_y_m);
};

/// 1/e^2 beam radii at a given range. far_field_warning flags a FarField
/// evaluation requested below the Rayleigh range, where the linear
/// approximation is invalid (and may report a spot smaller than the waist).
struct SpotSize {
  double w_x_m;
  double w_y_m;
  double z_m;
  bool far_field_warning = false;
};

/// Rectangular receiver collection area (outer lens), len_x_m * len_y_m.
struct Aperture {
  double len_x_m;
  double len_y_m;

  Aperture(double len_x_m, double len_y_m);

  double area_m2() const { return len_x_m * len_y_m; }
};

struct DivergenceAngles {
  double theta_x_rad;
  double theta_y_rad;
};

enum class SpotModel { Exact, FarField };
enum class PowerMethod { ExactIntegral, PointApprox };

/// Far-field half-divergence per axis: wavelength / (pi * waist).
DivergenceAngles divergence(const BeamParams& beam);

/// Distance beyond which spot growth is essentially linear for the given
/// waist: pi * waist^2 / wavelength.
double rayleigh_range(double waist_m, double wavelength_m);

SpotSize spot_size(const BeamParams& beam, double z_m,
                   SpotModel mode = SpotModel::Exact);

/// Transverse intensity profile at range z (W/m^2), exact spot sizes.
double intensity(const BeamParams& beam, double z_m, double x_m, double y_m);

/// erf(hi) - erf(lo) evaluated without cancellation: same-sign arguments away
/// from zero are differenced through erfc so the relative accuracy of small
/// tail integrals survives.
double erf_interval(double lo, double hi);

/// Optical power collected by a displaced, rotated rectangular aperture.
///
/// ExactIntegral integrates the separable Gaussian in closed form (error
/// functions); PointApprox samples the intensity at the aperture center and
/// multiplies by the area, valid only when the aperture is much smaller than
/// the spot (the value is capped at the rotated-aperture total power so the
/// approximation can never exceed the emitted power). Rotations scale the
/// collected power by cos(beta_x) * cos(beta_y); rotations of pi/2 or more
/// are rejected.
double received_power(const BeamParams& beam, double z_m,
                      const Displacement& disp, const RotationAngles& rot,
                      const Aperture& aperture,
                      PowerMethod method = PowerMethod::ExactIntegral);

}  // namespace fsolink
