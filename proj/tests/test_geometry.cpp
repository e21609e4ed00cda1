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

#include <cmath>
#include <random>

#include <doctest.h>

#include "fsolink/error.hpp"
#include "fsolink/geometry.hpp"

using namespace fsolink;

namespace {

constexpr double kPi = 3.14159265358979323846;

bool close(double a, double b, double rel) {
  return std::fabs(a - b) <= rel * std::max(std::fabs(a), std::fabs(b));
}

}  // namespace

TEST_SUITE_BEGIN("geometry");

TEST_CASE("vehicle state decomposes into rest value plus stroke exactly") {
  const VehicleStatic v(4.2, 0.37, 1.55);
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> stroke(-0.11, 0.11);
  for (int i = 0; i < 1000; ++i) {
    const double dx = stroke(rng);
    const double dy = stroke(rng);
    const auto s = VehicleState::perturbed(v, 0.0, 12.0, dx, dy);
    // Bit-exact: the stored position must be the stored rest value plus the
    // stored stroke with no rounding slack.
    CHECK(s.x_m == v.rest_lateral_m + s.dx_m);
    CHECK(s.y_m == v.rest_height_m + s.dy_m);
  }
}

TEST_CASE("vehicle static validation") {
  CHECK_THROWS_AS(VehicleStatic(0.0, 0.0, 1.4), DomainError);
  CHECK_THROWS_AS(VehicleStatic(-4.0, 0.0, 1.4), DomainError);
  CHECK_THROWS_AS(VehicleStatic(4.0, 0.0, 0.0), DomainError);
}

TEST_CASE("pointing angles: aligned, platoon heights and unit slope") {
  const VehicleStatic v1(4.0, 0.0, 1.4);
  const VehicleStatic v2(4.0, 0.0, 1.7);

  SUBCASE("aligned transceivers give zero angles") {
    const VehicleStatic flat(4.0, 0.0, 1.4);
    const auto a = pointing_angles(VehicleState::at_rest(flat, 0.0, 0.0),
                                   VehicleState::at_rest(flat, 0.0, 20.0));
    CHECK(a.azimuth_rad == 0.0);
    CHECK(a.elevation_rad == 0.0);
  }
  SUBCASE("0.3 m height difference at 50 m") {
    const auto a = pointing_angles(VehicleState::at_rest(v1, 0.0, 0.0),
                                   VehicleState::at_rest(v2, 0.0, 50.0));
    CHECK(close(a.elevation_rad, 5.99992800156e-3, 1e-10));
    CHECK(a.azimuth_rad == 0.0);
  }
  SUBCASE("unit slope gives pi/4") {
    const VehicleStatic left(4.0, 0.0, 1.4);
    const VehicleStatic right(4.0, 1.0, 1.4);
    const auto a = pointing_angles(VehicleState::at_rest(left, 0.0, 0.0),
                                   VehicleState::at_rest(right, 0.0, 1.0));
    CHECK(close(a.azimuth_rad, kPi / 4.0, 1e-15));
  }
  SUBCASE("co-located vehicles rejected") {
    CHECK_THROWS_AS(pointing_angles(VehicleState::at_rest(v1, 0.0, 3.0),
                                    VehicleState::at_rest(v2, 0.0, 3.0)),
                    DomainError);
  }
}

TEST_CASE("pointing azimuth is antisymmetric under swapping vehicles") {
  std::mt19937 rng(21);
  std::uniform_real_distribution<double> pos(-2.0, 2.0);
  std::uniform_real_distribution<double> dist(1.0, 100.0);
  for (int i = 0; i < 500; ++i) {
    const VehicleStatic a(4.0, pos(rng), 1.4);
    const VehicleStatic b(4.0, pos(rng), 1.7);
    const double z = dist(rng);
    const auto sa = VehicleState::at_rest(a, 0.0, 0.0);
    const auto sb = VehicleState::at_rest(b, 0.0, z);
    const auto fwd = pointing_angles(sa, sb);
    const auto rev = pointing_angles(sb, sa);
    CHECK(fwd.azimuth_rad == -rev.azimuth_rad);
    CHECK(fwd.elevation_rad == -rev.elevation_rad);
    CHECK(std::fabs(fwd.azimuth_rad) < kPi / 2.0);
    CHECK(std::fabs(fwd.elevation_rad) < kPi / 2.0);
  }
}

TEST_CASE("yaw and pitch angles") {
  CHECK(yaw_angle(0.0, 4.0) == 0.0);
  CHECK(close(yaw_angle(0.05, 4.0), 2.49947936189e-2, 1e-10));
  CHECK(yaw_angle(-0.05, 4.0) == -yaw_angle(0.05, 4.0));
  CHECK(pitch_angle(0.0, 4.0) == 0.0);
  CHECK(close(pitch_angle(0.02, 4.0), 9.99966668667e-3, 1e-10));
  CHECK(close(pitch_angle(2.0, 4.0), kPi / 4.0, 1e-15));
  CHECK_THROWS_AS(yaw_angle(0.01, 0.0), DomainError);
}

TEST_CASE("yaw angle is odd, strictly increasing and bounded") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> stroke(-50.0, 50.0);
  double prev_x = -1e9, prev_y = 0.0;
  bool first = true;
  for (int i = 0; i < 2000; ++i) {
    const double d = stroke(rng);
    const double y = yaw_angle(d, 4.0);
    CHECK(yaw_angle(-d, 4.0) == -y);
    CHECK(std::fabs(y) < kPi / 2.0);
    (void)first;
    (void)prev_x;
    (void)prev_y;
  }
  // strict monotonicity over a sorted grid
  double last = yaw_angle(-100.0, 4.0);
  for (int i = 1; i <= 400; ++i) {
    const double d = -100.0 + i * 0.5;
    const double y = yaw_angle(d, 4.0);
    CHECK(y > last);
    last = y;
  }
}

TEST_CASE("rotation angles are absolute differences") {
  const auto r0 = rotation_angles(0.0, 0.0, 0.0, 0.0);
  CHECK(r0.beta_x_rad == 0.0);
  CHECK(r0.beta_y_rad == 0.0);

  const auto r1 = rotation_angles(0.01, -0.005, 0.0, 0.0);
  CHECK(close(r1.beta_x_rad, 0.015, 1e-12));

  const auto r2 = rotation_angles(0.0, 0.0, 0.03, 0.03);
  CHECK(r2.beta_y_rad == 0.0);

  std::mt19937 rng(41);
  std::uniform_real_distribution<double> ang(-0.5, 0.5);
  for (int i = 0; i < 500; ++i) {
    const double y1 = ang(rng), y2 = ang(rng), p1 = ang(rng), p2 = ang(rng);
    const auto fwd = rotation_angles(y1, y2, p1, p2);
    const auto rev = rotation_angles(y2, y1, p2, p1);
    CHECK(fwd.beta_x_rad == rev.beta_x_rad);
    CHECK(fwd.beta_y_rad == rev.beta_y_rad);
    CHECK(fwd.beta_x_rad >= 0.0);
    CHECK(fwd.beta_y_rad >= 0.0);
  }
}

TEST_CASE("displacement per compensation strategy") {
  const VehicleStatic v1(4.0, 0.0, 1.4);
  const VehicleStatic v2(4.0, 0.0, 1.7);

  SUBCASE("no compensation, aligned and unperturbed laterally") {
    const auto d = displacement(v1, VehicleState::at_rest(v1, 0.0, 0.0), v2,
                                VehicleState::at_rest(v2, 0.0, 20.0),
                                CompensationStrategy::none());
    CHECK(d.dx_m == 0.0);
    CHECK(close(d.dy_m, 0.3, 1e-12));
  }
  SUBCASE("static compensation with zero strokes is perfectly aligned") {
    const auto d = displacement(v1, VehicleState::at_rest(v1, 0.0, 0.0), v2,
                                VehicleState::at_rest(v2, 0.0, 20.0),
                                CompensationStrategy::static_comp());
    CHECK(d.dx_m == 0.0);
    CHECK(d.dy_m == 0.0);
  }
  SUBCASE("dynamic with a constant trace and identity quantizer cancels") {
    const PerturbationTrace trace(100.0, -1.0,
                                  std::vector<double>(500, 0.0123));
    const auto strat =
        CompensationStrategy::dynamic(0.02, Quantizer::identity());
    const auto s2 = VehicleState::perturbed(v2, 1.0, 20.0, 0.0, 0.0123);
    const auto d = displacement(v1, VehicleState::at_rest(v1, 1.0, 0.0), v2, s2,
                                strat, nullptr, &trace);
    CHECK(d.dy_m == 0.0);
    CHECK(d.dx_m == 0.0);
  }
  SUBCASE("lateral offset with transmitter yaw at 50 m") {
    // Instantaneous x2 - x1 of 0.5 m while the transmitter carries a 0.05 m
    // stroke on a 4 m body: the induced yaw walks the beam 1.25 m sideways.
    const VehicleStatic w2(4.0, 0.55, 1.4);
    const auto s1 = VehicleState::perturbed(v1, 0.0, 0.0, 0.05, 0.0);
    const auto s2 = VehicleState::at_rest(w2, 0.0, 50.0);
    CHECK(s2.x_m - s1.x_m == 0.5);
    const auto d = displacement(v1, s1, w2, s2, CompensationStrategy::none());
    CHECK(close(d.dx_m, -0.75, 1e-12));
  }
  SUBCASE("dynamic without history errors") {
    const PerturbationTrace trace(100.0, 0.0, std::vector<double>(500, 0.0));
    const auto strat =
        CompensationStrategy::dynamic(0.02, Quantizer::identity());
    const auto s2 = VehicleState::perturbed(v2, 0.01, 20.0, 0.0, 0.0);
    CHECK_THROWS_AS(displacement(v1, VehicleState::at_rest(v1, 0.01, 0.0), v2,
                                 s2, strat, nullptr, &trace),
                    DomainError);
  }
}

TEST_CASE("dynamic displacement vanishes as the update period shrinks") {
  const VehicleStatic v1(4.0, 0.0, 1.4);
  const VehicleStatic v2(4.0, 0.0, 1.7);
  // ramp stroke: value v * t
  const double slope = 0.004;
  std::vector<double> samples;
  const double fs = 1000.0;
  for (int i = 0; i <= 3000; ++i) {
    samples.push_back(slope * (static_cast<double>(i) / fs - 1.0));
  }
  const PerturbationTrace trace(fs, -1.0, std::move(samples));

  double prev = 1e9;
  for (const double dt : {0.2, 0.02, 0.002}) {
    const auto strat = CompensationStrategy::dynamic(dt, Quantizer::identity());
    const double t = 1.23456;
    const auto s2 =
        VehicleState::perturbed(v2, t, 20.0, 0.0, trace.value_at(t));
    const auto d = displacement(v1, VehicleState::at_rest(v1, t, 0.0), v2, s2,
                                strat, nullptr, &trace);
    CHECK(std::fabs(d.dy_m) <= slope * dt * (1.0 + 1e-9));
    CHECK(std::fabs(d.dy_m) <= prev + 1e-18);
    prev = std::fabs(d.dy_m);
  }
  // on the update grid the compensation is exact
  const auto strat = CompensationStrategy::dynamic(0.01, Quantizer::identity());
  const double t = 1.25;  // 125 * 0.01
  const auto s2 = VehicleState::perturbed(v2, t, 20.0, 0.0, trace.value_at(t));
  const auto d = displacement(v1, VehicleState::at_rest(v1, t, 0.0), v2, s2,
                              strat, nullptr, &trace);
  CHECK(d.dy_m == 0.0);
}

TEST_CASE("laser selection") {
  SUBCASE("zero azimuth picks the center of a symmetric array") {
    const LaserArray array(5, 20.0 * kPi / 180.0);
    const auto sel = select_laser(0.0, array);
    CHECK(sel.index == 2);
    CHECK(sel.residual_steer_rad == 0.0);
  }
  SUBCASE("12 degrees lands on the 20-degree element") {
    const LaserArray array(5, 20.0 * kPi / 180.0);
    const auto sel = select_laser(12.0 * kPi / 180.0, array);
    CHECK(sel.index == 3);
    CHECK(close(sel.residual_steer_rad, -8.0 * kPi / 180.0, 1e-12));
    CHECK(std::fabs(sel.residual_steer_rad) <= array.mems_range_rad);
  }
  SUBCASE("single boresight cannot reach 15 degrees") {
    const LaserArray array(1, 20.0 * kPi / 180.0);
    CHECK_THROWS_AS(select_laser(15.0 * kPi / 180.0, array), DomainError);
  }
  SUBCASE("residual never exceeds the MEMS range on success") {
    std::mt19937 rng(51);
    std::uniform_real_distribution<double> az(-0.9, 0.9);
    const LaserArray array(7, 15.0 * kPi / 180.0);
    int successes = 0;
    for (int i = 0; i < 3000; ++i) {
      try {
        const auto sel = select_laser(az(rng), array);
        CHECK(std::fabs(sel.residual_steer_rad) <= array.mems_range_rad);
        CHECK(sel.index >= 0);
        CHECK(sel.index < array.n_lasers);
        ++successes;
      } catch (const DomainError&) {
        // outside the array's reach
      }
    }
    CHECK(successes > 0);
  }
}

TEST_SUITE_END();
