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

#include <utility>

#include "fsolink/dynamics.hpp"

namespace fsolink {

/// Time-invariant description of a vehicle's FSO unit: vehicle length and the
/// at-rest lateral/vertical position of the transceiver.
struct VehicleStatic {
  double length_m;
  double rest_lateral_m;
  double rest_height_m;

  VehicleStatic(double length_m, double rest_lateral_m, double rest_height_m);
};

/// Instantaneous pose of an FSO unit. Positions decompose exactly into the
/// rest value plus the perturbation (x_m == rest_lateral_m + dx_m bit for
/// bit), which the factory functions guarantee by construction.
struct VehicleState {
  double t_s;
  double x_m;
  double y_m;
  double z_m;  // longitudinal position along the platoon axis
  double dx_m;
  double dy_m;

  static VehicleState at_rest(const VehicleStatic& v, double t_s, double z_m);
  static VehicleState perturbed(const VehicleStatic& v, double t_s, double z_m,
                                double dx_m, double dy_m);
};

struct PointingAngles {
  double azimuth_rad;    // on the zx-plane
  double elevation_rad;  // on the zy-plane
};

/// Receiver rotation relative to the transmitter frame, plus the per-vehicle
/// yaw/pitch the rotation was derived from. beta_* are absolute differences
/// and therefore non-negative.
struct RotationAngles {
  double beta_x_rad = 0.0;
  double beta_y_rad = 0.0;
  double yaw1_rad = 0.0;
  double yaw2_rad = 0.0;
  double pitch1_rad = 0.0;
  double pitch2_rad = 0.0;
};

/// Transverse offset of the receiver center from the beam axis.
struct Displacement {
  double dx_m = 0.0;
  double dy_m = 0.0;
};

/// Pointing-compensation capability of the transmitter:
///  - None:    fixed frontal boresight, no knowledge of the receiver.
///  - Static:  at-rest positions compensated before transmission starts.
///  - Dynamic: receiver strokes signaled every delta_t_s, quantized, applied
///             as a zero-order hold; the transmitter's own strokes are
///             sensor-compensated to zero.
struct CompensationStrategy {
  enum class Kind { None, Static, Dynamic };

  Kind kind = Kind::Static;
  double delta_t_s = 0.02;
  Quantizer quantizer{};

  static CompensationStrategy none() { return {Kind::None, 0.02, {}}; }
  static CompensationStrategy static_comp() { return {Kind::Static, 0.02, {}}; }
  static CompensationStrategy dynamic(double delta_t_s, Quantizer q = {});
};

/// Circular array of laser elements with evenly spaced azimuth boresights
/// centered on the forward direction, each steerable by a MEMS mirror within
/// +- mems_range_rad.
struct LaserArray {
  int n_lasers;
  double boresight_spacing_rad;
  double mems_range_rad;

  LaserArray(int n_lasers, double boresight_spacing_rad,
             double mems_range_rad = kDefaultMemsRangeRad);

  double boresight_rad(int index) const;

  static constexpr double kDefaultMemsRangeRad =
      10.0 * 3.14159265358979323846 / 180.0;
};

struct LaserSelection {
  int index;
  double residual_steer_rad;
};

/// Azimuth/elevation of the line of sight from unit 1 to unit 2. Requires a
/// nonzero longitudinal separation.
PointingAngles pointing_angles(const VehicleState& s1, const VehicleState& s2);

/// Body rotation induced by a lateral stroke, with half the vehicle length as
/// the lever arm.
double yaw_angle(double dx_m, double length_m);

/// Body rotation induced by a vertical stroke; same lever arm as yaw_angle.
double pitch_angle(double dy_m, double length_m);

RotationAngles rotation_angles(double yaw1_rad, double yaw2_rad,
                               double pitch1_rad, double pitch2_rad);

/// Beam-center offset at the receiver plane under the given compensation
/// strategy (paraxial). For Dynamic, history_x2/history_y2 must cover
/// [t - delta_t_s, t] for vehicle 2's strokes; a null history stands for an
/// identically zero perturbation on that axis.
Displacement displacement(const VehicleStatic& v1, const VehicleState& s1,
                          const VehicleStatic& v2, const VehicleState& s2,
                          const CompensationStrategy& strategy,
                          const PerturbationTrace* history_x2 = nullptr,
                          const PerturbationTrace* history_y2 = nullptr);

/// Picks the array element whose boresight is closest to the requested
/// azimuth (lowest index wins ties) and returns the residual MEMS steering
/// command. Throws DomainError when the residual exceeds the MEMS range.
LaserSelection select_laser(double azimuth_rad, const LaserArray& array);

}  // namespace fsolink
