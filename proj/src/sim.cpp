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

#include "fsolink/sim.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <atomic>
#include <mutex>
#include <thread>

#include "fsolink/csvout.hpp"
#include "fsolink/error.hpp"
#include "fsolink/rng.hpp"

namespace fsolink {

namespace {

void require_cfg(bool ok, const std::string& message) {
  if (!ok) throw DomainError(message);
}

// Stream ids within one grid point: (vehicle, axis) pairs. Strategies share
// the same streams so they are compared on identical stroke realizations.
enum StreamSlot : std::uint64_t {
  kStreamV1X = 0,
  kStreamV1Y = 1,
  kStreamV2X = 2,
  kStreamV2Y = 3,
  kStreamsPerGridPoint = 4,
};

std::optional<PerturbationTrace> resolve_axis(const PerturbationSource& src,
                                              double duration_s,
                                              double lead_s,
                                              std::uint64_t master_seed,
                                              std::uint64_t stream_id) {
  switch (src.kind) {
    case PerturbationSource::Kind::None:
      return std::nullopt;
    case PerturbationSource::Kind::TraceFile:
      return PerturbationTrace::load_csv(src.trace_file);
    case PerturbationSource::Kind::Model: {
      const ARModel& m = *src.model;
      const double fs = m.sample_rate_hz();
      const auto lead_samples =
          static_cast<std::size_t>(std::ceil(lead_s * fs)) + 1;
      auto n = lead_samples +
               static_cast<std::size_t>(std::ceil(duration_s * fs)) + 2;
      // ar_generate requires more output than its warm-up transient; surplus
      // samples past the scenario horizon are harmless.
      n = std::max<std::size_t>(n, 100 * m.order() + 1);
      const double t0 = -static_cast<double>(lead_samples) / fs;
      return ar_generate(m, n, derive_stream_seed(master_seed, stream_id), t0);
    }
  }
  return std::nullopt;
}

double trace_value(const std::optional<PerturbationTrace>& t, double time_s) {
  return t ? t->value_at(time_s) : 0.0;
}

}  // namespace

PerturbationSource PerturbationSource::from_model(ARModel m) {
  PerturbationSource s;
  s.kind = Kind::Model;
  s.model = std::move(m);
  return s;
}

PerturbationSource PerturbationSource::from_file(std::string path) {
  PerturbationSource s;
  s.kind = Kind::TraceFile;
  s.trace_file = std::move(path);
  return s;
}

void ScenarioConfig::validate() const {
  require_cfg(std::isfinite(duration_s) && duration_s > 0.0,
              "duration_s must be positive");
  require_cfg(std::isfinite(timestep_s) && timestep_s > 0.0,
              "timestep_s must be positive");
  require_cfg(duration_s >= timestep_s,
              "duration_s must cover at least one timestep_s");
  require_cfg(!z_list_m.empty(), "z_list_m must not be empty");
  for (double z : z_list_m) {
    require_cfg(std::isfinite(z) && z > 0.0, "z_list_m entries must be positive");
  }
  require_cfg(!p0_list_w.empty(), "p0_list_w must not be empty");
  for (double p : p0_list_w) {
    require_cfg(std::isfinite(p) && p > 0.0,
                "p0_list_w entries must be positive");
  }
  require_cfg(std::isfinite(i_b_w_per_m2) && i_b_w_per_m2 >= 0.0,
              "i_b_w_per_m2 must be non-negative");
  require_cfg(beam.wavelength_m > 0.0, "beam.wavelength_m must be positive");
  require_cfg(beam.waist_x_m > 0.0 && beam.waist_y_m > 0.0,
              "beam waists must be positive");
  require_cfg(beam.wavelength_m < beam.waist_x_m / 10.0 &&
                  beam.wavelength_m < beam.waist_y_m / 10.0,
              "beam waists must span at least 10 wavelengths");
  if (strategy.kind == CompensationStrategy::Kind::Dynamic) {
    require_cfg(strategy.delta_t_s > 0.0, "strategy.delta_t_s must be positive");
    require_cfg(strategy.delta_t_s >= timestep_s,
                "strategy.delta_t_s must be at least timestep_s");
  }
  for (double d : dy_grid_m) {
    require_cfg(std::isfinite(d), "dy_grid_m entries must be finite");
  }
}

std::vector<LinkSample> run_scenario(const ScenarioConfig& cfg, double z_m,
                                     double p0_w, std::uint64_t stream_salt) {
  cfg.validate();
  require_cfg(std::isfinite(z_m) && z_m > 0.0, "z_m must be positive");
  require_cfg(std::isfinite(p0_w) && p0_w > 0.0, "p0_w must be positive");

  const bool dynamic =
      cfg.strategy.kind == CompensationStrategy::Kind::Dynamic;
  const bool steered = cfg.strategy.kind != CompensationStrategy::Kind::None;

  // A steered transmitter must first acquire the line of sight with one of
  // its array elements; a fixed boresight (no compensation) skips this.
  if (steered) {
    const VehicleState s1 = VehicleState::at_rest(cfg.vehicle1.body, 0.0, 0.0);
    const VehicleState s2 = VehicleState::at_rest(cfg.vehicle2.body, 0.0, z_m);
    const PointingAngles aim = pointing_angles(s1, s2);
    try {
      select_laser(aim.azimuth_rad, cfg.laser_array);
    } catch (const DomainError& e) {
      throw ModelError("laser selection failed at z=" + format_double(z_m) +
                       " m: " + e.what());
    }
  }

  const auto n_steps = static_cast<std::size_t>(
      std::llround(cfg.duration_s / cfg.timestep_s));
  require_cfg(n_steps >= 1, "scenario must span at least one timestep");

  const double lead_s = dynamic ? cfg.strategy.delta_t_s : 0.0;
  const std::uint64_t base = stream_salt * kStreamsPerGridPoint;
  const auto t_x1 = resolve_axis(cfg.vehicle1.perturbation_x, cfg.duration_s,
                                 lead_s, cfg.seed, base + kStreamV1X);
  const auto t_y1 = resolve_axis(cfg.vehicle1.perturbation_y, cfg.duration_s,
                                 lead_s, cfg.seed, base + kStreamV1Y);
  const auto t_x2 = resolve_axis(cfg.vehicle2.perturbation_x, cfg.duration_s,
                                 lead_s, cfg.seed, base + kStreamV2X);
  const auto t_y2 = resolve_axis(cfg.vehicle2.perturbation_y, cfg.duration_s,
                                 lead_s, cfg.seed, base + kStreamV2Y);

  std::vector<double> pert1x(n_steps, 0.0), pert2x(n_steps, 0.0),
      comp_x(n_steps, 0.0), pert1y(n_steps, 0.0), pert2y(n_steps, 0.0),
      comp_y(n_steps, 0.0);

  for (std::size_t i = 0; i < n_steps; ++i) {
    const double t = static_cast<double>(i) * cfg.timestep_s;
    try {
      if (!dynamic) {
        pert1x[i] = trace_value(t_x1, t);
        pert1y[i] = trace_value(t_y1, t);
      }
      pert2x[i] = trace_value(t_x2, t);
      pert2y[i] = trace_value(t_y2, t);
      if (dynamic) {
        if (t_x2) {
          comp_x[i] = quantize(sample_delayed(*t_x2, t, cfg.strategy.delta_t_s),
                               cfg.strategy.quantizer);
        }
        if (t_y2) {
          comp_y[i] = quantize(sample_delayed(*t_y2, t, cfg.strategy.delta_t_s),
                               cfg.strategy.quantizer);
        }
      }
    } catch (const DomainError& e) {
      throw ModelError("perturbation sampling failed at t=" + format_double(t) +
                       " s (step " + std::to_string(i) + "): " + e.what());
    }
  }

  const BeamParams beam(p0_w, cfg.beam.wavelength_m, cfg.beam.waist_x_m,
                        cfg.beam.waist_y_m);
  kern::LinkBatchParams params{
      beam,
      cfg.rx,
      cfg.power_method,
      z_m,
      0.0,
      0.0,
      0.5 * cfg.vehicle1.body.length_m,
      0.5 * cfg.vehicle2.body.length_m,
      cfg.i_b_w_per_m2};
  if (cfg.strategy.kind == CompensationStrategy::Kind::None) {
    params.offset_x_m =
        cfg.vehicle2.body.rest_lateral_m - cfg.vehicle1.body.rest_lateral_m;
    params.offset_y_m =
        cfg.vehicle2.body.rest_height_m - cfg.vehicle1.body.rest_height_m;
  }

  std::vector<double> dx(n_steps), dy(n_steps), bx(n_steps), by(n_steps),
      pr(n_steps), s(n_steps), r(n_steps);
  kern::LinkBatchIn in{pert1x, pert2x, comp_x, pert1y, pert2y, comp_y};
  kern::LinkBatchOut out{dx, dy, bx, by, pr, s, r};
  try {
    kern::run_link_batch(in, out, params, cfg.backend);
  } catch (const ModelError& e) {
    throw ModelError("link evaluation failed at z=" + format_double(z_m) +
                     " m, p0=" + format_double(p0_w) + " W: " + e.what());
  }

  std::vector<LinkSample> samples(n_steps);
  for (std::size_t i = 0; i < n_steps; ++i) {
    samples[i] = LinkSample{static_cast<double>(i) * cfg.timestep_s,
                            z_m,
                            p0_w,
                            dx[i],
                            dy[i],
                            bx[i],
                            by[i],
                            pr[i],
                            s[i],
                            r[i]};
  }
  return samples;
}

Summary summarize(std::span<const LinkSample> samples) {
  if (samples.empty()) throw DomainError("cannot summarize an empty sample list");
  const auto n = samples.size();
  std::vector<double> r(n);
  double r_sum = 0.0, pr_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    r[i] = samples[i].r_bit_per_s;
    r_sum += samples[i].r_bit_per_s;
    pr_sum += samples[i].p_r_w;
  }
  std::sort(r.begin(), r.end());
  // Nearest-rank percentile: smallest value with cumulative share >= p.
  const auto rank = [&](double p) {
    auto k = static_cast<std::size_t>(
        std::ceil(p * static_cast<double>(n)));
    k = std::clamp<std::size_t>(k, 1, n);
    return r[k - 1];
  };
  return Summary{r_sum / static_cast<double>(n), rank(0.05), rank(0.95),
                 pr_sum / static_cast<double>(n)};
}

SweepResult sweep(const ScenarioConfig& cfg) {
  cfg.validate();
  const CompensationStrategy::Kind kinds[] = {
      CompensationStrategy::Kind::None, CompensationStrategy::Kind::Static,
      CompensationStrategy::Kind::Dynamic};

  struct Task {
    CompensationStrategy::Kind kind;
    double p0_w;
    double z_m;
    std::uint64_t salt;
  };
  std::vector<Task> tasks;
  for (const auto kind : kinds) {
    for (std::size_t ip = 0; ip < cfg.p0_list_w.size(); ++ip) {
      for (std::size_t iz = 0; iz < cfg.z_list_m.size(); ++iz) {
        // Same salt for the three strategies at one grid point.
        const std::uint64_t salt = iz * cfg.p0_list_w.size() + ip;
        tasks.push_back({kind, cfg.p0_list_w[ip], cfg.z_list_m[iz], salt});
      }
    }
  }

  std::vector<SweepRow> rows(tasks.size());
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::atomic<std::size_t> next{0};

  const auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      try {
        ScenarioConfig point_cfg = cfg;
        point_cfg.strategy.kind = tasks[i].kind;
        const auto samples =
            run_scenario(point_cfg, tasks[i].z_m, tasks[i].p0_w, tasks[i].salt);
        const Summary sum = summarize(samples);
        rows[i] = SweepRow{tasks[i].kind,    tasks[i].p0_w, tasks[i].z_m,
                           sum.mean_r_bps,   sum.p5_r_bps,  sum.p95_r_bps,
                           sum.mean_pr_w};
      } catch (...) {
        std::scoped_lock lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const auto n_threads =
      std::min<std::size_t>(hw, std::max<std::size_t>(1, tasks.size()));
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);

  return SweepResult{std::move(rows)};
}

std::vector<DisplacementRow> displacement_sweep(
    const ScenarioConfig& cfg, std::span<const double> dy_grid_m,
    std::span<const double> z_list_m) {
  cfg.validate();
  std::vector<DisplacementRow> rows;
  rows.reserve(cfg.p0_list_w.size() * z_list_m.size() * dy_grid_m.size());
  const RotationAngles no_rotation{};
  for (const double p0 : cfg.p0_list_w) {
    const BeamParams beam(p0, cfg.beam.wavelength_m, cfg.beam.waist_x_m,
                          cfg.beam.waist_y_m);
    for (const double z : z_list_m) {
      for (const double delta : dy_grid_m) {
        const double pr = received_power(beam, z, Displacement{0.0, delta},
                                         no_rotation, cfg.rx.aperture,
                                         cfg.power_method);
        const double s = snr(pr, cfg.rx, cfg.i_b_w_per_m2);
        rows.push_back(
            DisplacementRow{p0, z, delta, throughput(s, cfg.rx.bandwidth_hz)});
      }
    }
  }
  return rows;
}

}  // namespace fsolink
