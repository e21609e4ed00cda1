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

#include "fsolink/geometry.hpp"

#include <cmath>
#include <string>

#include "fsolink/error.hpp"

namespace fsolink {

namespace {

void require(bool ok, const char* message) {
  if (!ok) throw DomainError(message);
}

}  // namespace

VehicleStatic::VehicleStatic(double length, double rest_lateral,
                             double rest_height)
    : length_m(length), rest_lateral_m(rest_lateral), rest_height_m(rest_height) {
  require(std::isfinite(length) && length > 0.0,
          "vehicle length must be positive");
  require(std::isfinite(rest_lateral), "rest lateral position must be finite");
  require(std::isfinite(rest_height) && rest_height > 0.0,
          "rest height must be positive");
}

VehicleState VehicleState::at_rest(const VehicleStatic& v, double t_s,
                                   double z_m) {
  return perturbed(v, t_s, z_m, 0.0, 0.0);
}

VehicleState VehicleState::perturbed(const VehicleStatic& v, double t_s,
                                     double z_m, double dx_m, double dy_m) {
  VehicleState s{};
  s.t_s = t_s;
  s.z_m = z_m;
  s.dx_m = dx_m;
  s.dy_m = dy_m;
  s.x_m = v.rest_lateral_m + dx_m;
  s.y_m = v.rest_height_m + dy_m;
  return s;
}

CompensationStrategy CompensationStrategy::dynamic(double delta_t_s,
                                                   Quantizer q) {
  require(std::isfinite(delta_t_s) && delta_t_s > 0.0,
          "dynamic compensation needs a positive update period");
  return {Kind::Dynamic, delta_t_s, q};
}

LaserArray::LaserArray(int n, double spacing, double mems_range)
    : n_lasers(n), boresight_spacing_rad(spacing), mems_range_rad(mems_range) {
  require(n >= 1, "laser array needs at least one element");
  require(std::isfinite(spacing) && spacing > 0.0,
          "laser boresight spacing must be positive");
  require(std::isfinite(mems_range) && mems_range > 0.0,
          "MEMS steering range must be positive");
}

double LaserArray::boresight_rad(int index) const {
  // Elements centered on the forward direction.
  return (index - 0.5 * (n_lasers - 1)) * boresight_spacing_rad;
}

PointingAngles pointing_angles(const VehicleState& s1, const VehicleState& s2) {
  const double z = std::fabs(s2.z_m - s1.z_m);
  require(z > 0.0, "pointing angles undefined for co-located vehicles");
  return {std::atan((s2.x_m - s1.x_m) / z), std::atan((s2.y_m - s1.y_m) / z)};
}

double yaw_angle(double dx_m, double length_m) {
  require(length_m > 0.0, "vehicle length must be positive");
  return std::atan(dx_m / (0.5 * length_m));
}

double pitch_angle(double dy_m, double length_m) {
  require(length_m > 0.0, "vehicle length must be positive");
  return std::atan(dy_m / (0.5 * length_m));
}

RotationAngles rotation_angles(double yaw1, double yaw2, double pitch1,
                               double pitch2) {
  require(std::isfinite(yaw1) && std::isfinite(yaw2) && std::isfinite(pitch1) &&
              std::isfinite(pitch2),
          "rotation inputs must be finite");
  RotationAngles r;
  r.yaw1_rad = yaw1;
  r.yaw2_rad = yaw2;
  r.pitch1_rad = pitch1;
  r.pitch2_rad = pitch2;
  r.beta_x_rad = std::fabs(yaw2 - yaw1);
  r.beta_y_rad = std::fabs(pitch2 - pitch1);
  return r;
}

Displacement displacement(const VehicleStatic& v1, const VehicleState& s1,
                          const VehicleStatic& v2, const VehicleState& s2,
                          const CompensationStrategy& strategy,
                          const PerturbationTrace* history_x2,
                          const PerturbationTrace* history_y2) {
  const double z = std::fabs(s2.z_m - s1.z_m);
  require(z > 0.0, "displacement undefined for co-located vehicles");
  (void)v2;

  switch (strategy.kind) {
    case CompensationStrategy::Kind::None: {
      const double yaw1 = yaw_angle(s1.dx_m, v1.length_m);
      const double pitch1 = pitch_angle(s1.dy_m, v1.length_m);
      return {s2.x_m - s1.x_m - std::tan(yaw1) * z,
              s2.y_m - s1.y_m - std::tan(pitch1) * z};
    }
    case CompensationStrategy::Kind::Static: {
      const double yaw1 = yaw_angle(s1.dx_m, v1.length_m);
      const double pitch1 = pitch_angle(s1.dy_m, v1.length_m);
      return {s2.dx_m - s1.dx_m - std::tan(yaw1) * z,
              s2.dy_m - s1.dy_m - std::tan(pitch1) * z};
    }
    case CompensationStrategy::Kind::Dynamic: {
      // On-board sensors null the transmitter's own strokes and rotations;
      // the residual error is receiver movement since the last signaled
      // (quantized) update.
      const auto delayed = [&](const PerturbationTrace* h) {
        if (h == nullptr) return 0.0;
        return quantize(sample_delayed(*h, s2.t_s, strategy.delta_t_s),
                        strategy.quantizer);
      };
      const double comp_x = delayed(history_x2);
      const double comp_y = delayed(history_y2);
      return {s2.dx_m - comp_x, s2.dy_m - comp_y};
    }
  }
  throw DomainError("unreachable compensation strategy");
}

LaserSelection select_laser(double azimuth_rad, const LaserArray& array) {
  require(std::isfinite(azimuth_rad), "azimuth must be finite");
  int best = 0;
  double best_distance = std::fabs(azimuth_rad - array.boresight_rad(0));
  for (int i = 1; i < array.n_lasers; ++i) {
    const double d = std::fabs(azimuth_rad - array.boresight_rad(i));
    if (d < best_distance) {  // lowest index wins exact ties
      best_distance = d;
      best = i;
    }
  }
  const double residual = azimuth_rad - array.boresight_rad(best);
  if (std::fabs(residual) > array.mems_range_rad) {
    throw DomainError("unreachable azimuth: residual steer " +
                      std::to_string(residual) + " rad exceeds MEMS range");
  }
  return {best, residual};
}

}  // namespace fsolink
