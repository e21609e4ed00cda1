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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fsolink/beam.hpp"
#include "fsolink/dynamics.hpp"
#include "fsolink/geometry.hpp"
#include "fsolink/kernels/link_kernel.hpp"
#include "fsolink/receiver.hpp"

namespace fsolink {

/// Where a vehicle's per-axis strokes come from: an AR model (seeded per grid
/// point), a measured trace file, or nothing (axis pinned to zero).
struct PerturbationSource {
  enum class Kind { None, Model, TraceFile };

  Kind kind = Kind::None;
  std::optional<ARModel> model;
  std::string trace_file;

  static PerturbationSource none() { return {}; }
  static PerturbationSource from_model(ARModel m);
  static PerturbationSource from_file(std::string path);
};

struct VehicleConfig {
  VehicleStatic body{4.0, 0.0, 1.5};
  PerturbationSource perturbation_x;
  PerturbationSource perturbation_y;
};

/// Beam emission geometry; the emitted power comes from the sweep grid.
struct BeamConfig {
  double wavelength_m = 1550e-9;
  double waist_x_m = 1e-3;
  double waist_y_m = 1e-3;
};

/// Full scenario description consumed by the sweep drivers and the CLI.
struct ScenarioConfig {
  VehicleConfig vehicle1;
  VehicleConfig vehicle2;
  BeamConfig beam;
  ReceiverParams rx{Aperture(1e-3, 1e-3), 1e-7, 0.8, 1550e-9, 50e-9, 20e-12,
                    1e9};
  CompensationStrategy strategy;
  LaserArray laser_array{5, 20.0 * 3.14159265358979323846 / 180.0};
  std::vector<double> z_list_m;
  std::vector<double> p0_list_w;
  double duration_s = 200.0;
  double timestep_s = 1e-3;
  std::uint64_t seed = 1;
  double i_b_w_per_m2 = 5.58;
  std::string spectrum_file;  // when set, i_b was integrated from this file
  PowerMethod power_method = PowerMethod::ExactIntegral;
  std::vector<double> dy_grid_m;  // displacement-sweep grid
  kern::Backend backend = kern::Backend::Auto;

  /// Semantic invariants (positivity, dynamic update period vs timestep, ...).
  /// Throws DomainError with a field-name message.
  void validate() const;
};

/// One simulated timestep. Field order is the timeseries CSV column order.
struct LinkSample {
  double t_s;
  double z_m;
  double p0_w;
  double dx_m;
  double dy_m;
  double beta_x_rad;
  double beta_y_rad;
  double p_r_w;
  double snr;
  double r_bit_per_s;
};

struct Summary {
  double mean_r_bps;
  double p5_r_bps;
  double p95_r_bps;
  double mean_pr_w;
};

struct SweepRow {
  CompensationStrategy::Kind strategy;
  double p0_w;
  double z_m;
  double mean_r_bps;
  double p5_r_bps;
  double p95_r_bps;
  double mean_pr_w;
};

struct SweepResult {
  std::vector<SweepRow> rows;
};

struct DisplacementRow {
  double p0_w;
  double z_m;
  double delta_m;
  double r_bps;
};

/// Simulates one (distance, power) grid point with the configured strategy.
/// Deterministic: perturbation streams derive from (seed, stream_salt), so a
/// grid point reproduces identically no matter where or when it runs.
std::vector<LinkSample> run_scenario(const ScenarioConfig& cfg, double z_m,
                                     double p0_w,
                                     std::uint64_t stream_salt = 0);

/// Mean plus nearest-rank 5th/95th percentiles of throughput, mean received
/// power. Throws DomainError on an empty input.
Summary summarize(std::span<const LinkSample> samples);

/// Cross product z_list x p0_list x {None, Static, Dynamic}, the Dynamic arm
/// using the configured update period and quantizer. The three strategies at
/// one grid point share the same perturbation realization so they are
/// compared on identical dynamics. Rows sorted by (strategy, p0, z).
SweepResult sweep(const ScenarioConfig& cfg);

/// Throughput for statically imposed vertical displacements (no strokes, no
/// rotations) over (p0_list x z_list x dy_grid).
std::vector<DisplacementRow> displacement_sweep(const ScenarioConfig& cfg,
                                                std::span<const double> dy_grid_m,
                                                std::span<const double> z_list_m);

}  // namespace fsolink
