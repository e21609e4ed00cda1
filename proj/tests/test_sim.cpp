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

#include <doctest.h>

#include "fsolink/config.hpp"
#include "fsolink/error.hpp"
#include "fsolink/sim.hpp"

using namespace fsolink;

namespace {

bool close(double a, double b, double rel) {
  return std::fabs(a - b) <= rel * std::max(std::fabs(a), std::fabs(b));
}

// short-run config, no strokes anywhere
ScenarioConfig quiet_config() {
  ScenarioConfig cfg = default_config();
  cfg.vehicle1.perturbation_y = PerturbationSource::none();
  cfg.vehicle2.perturbation_y = PerturbationSource::none();
  cfg.duration_s = 0.05;
  cfg.timestep_s = 1e-3;
  cfg.z_list_m = {5.0, 50.0};
  cfg.p0_list_w = {0.01};
  return cfg;
}

}  // namespace

TEST_SUITE_BEGIN("sim");

TEST_CASE("config validation") {
  ScenarioConfig cfg = default_config();
  CHECK_NOTHROW(cfg.validate());

  SUBCASE("update period below the timestep") {
    cfg.strategy = CompensationStrategy::dynamic(0.0005);
    cfg.timestep_s = 1e-3;
    CHECK_THROWS_AS(cfg.validate(), DomainError);
  }
  SUBCASE("empty grids") {
    cfg.z_list_m.clear();
    CHECK_THROWS_AS(cfg.validate(), DomainError);
  }
  SUBCASE("bad timing") {
    cfg.timestep_s = 0.0;
    CHECK_THROWS_AS(cfg.validate(), DomainError);
  }
}

TEST_CASE("a quiet world is perfectly static") {
  for (const auto kind :
       {CompensationStrategy::Kind::Static, CompensationStrategy::Kind::Dynamic}) {
    ScenarioConfig cfg = quiet_config();
    cfg.strategy.kind = kind;
    const auto samples = run_scenario(cfg, 50.0, 0.01);
    REQUIRE(samples.size() == 50);
    for (const auto& s : samples) {
      CHECK(s.dx_m == 0.0);
      CHECK(s.dy_m == 0.0);
      CHECK(s.beta_x_rad == 0.0);
      CHECK(s.beta_y_rad == 0.0);
      CHECK(s.r_bit_per_s == samples.front().r_bit_per_s);
      CHECK(s.p_r_w == samples.front().p_r_w);
    }
  }
}

TEST_CASE("aligned link reproduces the reference chain") {
  ScenarioConfig cfg = quiet_config();
  cfg.strategy.kind = CompensationStrategy::Kind::Static;
  cfg.power_method = PowerMethod::PointApprox;
  const auto samples = run_scenario(cfg, 50.0, 0.01);
  // frozen from scripts/link_budget_reference.py
  CHECK(close(samples.front().p_r_w, 1.04439168772e-5, 1e-10));
  CHECK(close(samples.front().snr, 268.382116196, 1e-9));
  CHECK(close(samples.front().r_bit_per_s, 4.036755132886e9, 1e-9));
}

TEST_CASE("uncompensated platoon misses by the rest height difference") {
  ScenarioConfig cfg = quiet_config();
  cfg.strategy.kind = CompensationStrategy::Kind::None;
  const auto samples = run_scenario(cfg, 50.0, 0.01);
  CHECK(close(samples.front().dy_m, 0.3, 1e-12));
  CHECK(samples.front().dx_m == 0.0);
  // 30 cm against a 2.5 cm spot: nothing arrives
  CHECK(samples.front().r_bit_per_s < 1.0);
}

TEST_CASE("dynamic tracking error is bounded by the stroke slope") {
  ScenarioConfig cfg = quiet_config();
  cfg.strategy = CompensationStrategy::dynamic(0.001, Quantizer::identity());
  cfg.timestep_s = 1e-3;
  cfg.duration_s = 1.0;
  // slow stroke: AR(1) close to a random walk, tiny innovations
  cfg.vehicle2.perturbation_y =
      PerturbationSource::from_model(ARModel({0.999}, 1e-5, 1000.0));
  const auto samples = run_scenario(cfg, 50.0, 0.01);
  // with updates every timestep, the residual is at most one innovation's
  // reach plus interpolation slack
  for (const auto& s : samples) {
    CHECK(std::fabs(s.dy_m) < 5e-4);
  }
}

TEST_CASE("per-sample throughput never beats the aligned link") {
  ScenarioConfig cfg = default_config();
  cfg.duration_s = 2.0;
  cfg.timestep_s = 1e-3;
  const auto dynamic_samples = run_scenario(cfg, 50.0, 0.01);

  ScenarioConfig quiet = quiet_config();
  quiet.strategy.kind = CompensationStrategy::Kind::Static;
  const double aligned = run_scenario(quiet, 50.0, 0.01).front().r_bit_per_s;
  for (const auto& s : dynamic_samples) {
    CHECK(s.r_bit_per_s <= aligned * (1.0 + 1e-12));
  }
}

TEST_CASE("runs are deterministic and salt-sensitive") {
  ScenarioConfig cfg = default_config();
  cfg.duration_s = 0.5;
  const auto a = run_scenario(cfg, 20.0, 0.01, 3);
  const auto b = run_scenario(cfg, 20.0, 0.01, 3);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].dy_m == b[i].dy_m);
    CHECK(a[i].r_bit_per_s == b[i].r_bit_per_s);
  }
  const auto c = run_scenario(cfg, 20.0, 0.01, 4);
  bool any_diff = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    any_diff = any_diff || (a[i].dy_m != c[i].dy_m);
  }
  CHECK(any_diff);
}

TEST_CASE("summaries") {
  const auto mk = [](double r, double pr) {
    LinkSample s{};
    s.r_bit_per_s = r;
    s.p_r_w = pr;
    return s;
  };
  SUBCASE("single sample") {
    const LinkSample s = mk(2e9, 1e-5);
    const auto sum = summarize(std::vector<LinkSample>{s});
    CHECK(sum.mean_r_bps == 2e9);
    CHECK(sum.p5_r_bps == 2e9);
    CHECK(sum.p95_r_bps == 2e9);
    CHECK(sum.mean_pr_w == 1e-5);
  }
  SUBCASE("two samples") {
    const std::vector<LinkSample> v{mk(2e9, 1e-5), mk(4e9, 3e-5)};
    const auto sum = summarize(v);
    CHECK(sum.mean_r_bps == 3e9);
    CHECK(sum.p5_r_bps == 2e9);
    CHECK(sum.p95_r_bps == 4e9);
    CHECK(sum.mean_pr_w == 2e-5);
  }
  SUBCASE("constant list collapses") {
    const std::vector<LinkSample> v(40, mk(1e9, 1e-6));
    const auto sum = summarize(v);
    CHECK(sum.p5_r_bps == 1e9);
    CHECK(sum.p95_r_bps == 1e9);
    CHECK(sum.mean_r_bps == 1e9);
  }
  SUBCASE("empty input rejected") {
    CHECK_THROWS_AS(summarize(std::vector<LinkSample>{}), DomainError);
  }
}

TEST_CASE("sweep runs the full strategy grid in order") {
  ScenarioConfig cfg = quiet_config();
  cfg.duration_s = 0.02;
  cfg.z_list_m = {5.0, 10.0, 15.0};
  cfg.p0_list_w = {1e-3, 1e-2};
  const auto result = sweep(cfg);
  REQUIRE(result.rows.size() == 3 * 2 * 3);
  // sorted by (strategy, p0, z); quiet world: dynamic == static per cell
  std::size_t idx = 0;
  for (const auto kind :
       {CompensationStrategy::Kind::None, CompensationStrategy::Kind::Static,
        CompensationStrategy::Kind::Dynamic}) {
    for (const double p0 : cfg.p0_list_w) {
      for (const double z : cfg.z_list_m) {
        const auto& row = result.rows[idx++];
        CHECK(row.strategy == kind);
        CHECK(row.p0_w == p0);
        CHECK(row.z_m == z);
        CHECK(row.p5_r_bps <= row.p95_r_bps);
      }
    }
  }
  // static and dynamic coincide without strokes; none pays for the 0.3 m miss
  for (std::size_t i = 0; i < 6; ++i) {
    const auto& none_row = result.rows[i];
    const auto& static_row = result.rows[i + 6];
    const auto& dynamic_row = result.rows[i + 12];
    CHECK(static_row.mean_r_bps == dynamic_row.mean_r_bps);
    CHECK(none_row.mean_r_bps < static_row.mean_r_bps);
  }
}

TEST_CASE("strategy ordering holds on a short default-model run") {
  ScenarioConfig cfg = default_config();
  cfg.duration_s = 30.0;
  cfg.timestep_s = 0.01;
  cfg.z_list_m = {25.0};
  cfg.p0_list_w = {0.01};
  const auto result = sweep(cfg);
  REQUIRE(result.rows.size() == 3);
  const double none_r = result.rows[0].mean_r_bps;
  const double static_r = result.rows[1].mean_r_bps;
  const double dynamic_r = result.rows[2].mean_r_bps;
  CHECK(dynamic_r >= static_r);
  CHECK(static_r >= none_r);
  CHECK(dynamic_r > 0.0);
}

TEST_CASE("displacement sweep") {
  ScenarioConfig cfg = quiet_config();
  const std::vector<double> grid{0.0, 0.01, 0.02, 0.05};
  const std::vector<double> zs{5.0, 50.0};
  const auto rows = displacement_sweep(cfg, grid, zs);
  REQUIRE(rows.size() == 1 * 2 * 4);

  // delta = 0 equals the aligned chain
  ScenarioConfig aligned_cfg = quiet_config();
  aligned_cfg.strategy.kind = CompensationStrategy::Kind::Static;
  const double aligned50 =
      run_scenario(aligned_cfg, 50.0, 0.01).front().r_bit_per_s;
  CHECK(rows[4].z_m == 50.0);
  CHECK(rows[4].delta_m == 0.0);
  CHECK(close(rows[4].r_bps, aligned50, 1e-12));

  // monotone non-increasing along each displacement row
  for (std::size_t base = 0; base < rows.size(); base += grid.size()) {
    for (std::size_t i = 1; i < grid.size(); ++i) {
      CHECK(rows[base + i].r_bps <= rows[base + i - 1].r_bps * (1.0 + 1e-12));
    }
  }

  // a 5 cm miss at 5 m kills the link outright
  CHECK(rows[3].z_m == 5.0);
  CHECK(rows[3].delta_m == 0.05);
  CHECK(rows[3].r_bps < 1e-6 * rows[0].r_bps);
}

TEST_CASE("mean throughput decays with distance for an aligned link") {
  ScenarioConfig cfg = quiet_config();
  cfg.strategy.kind = CompensationStrategy::Kind::Static;
  cfg.z_list_m = {5.0, 10.0, 20.0, 40.0, 80.0};
  const auto result = sweep(cfg);
  // static rows: indices 5..9
  for (std::size_t i = 6; i < 10; ++i) {
    CHECK(result.rows[i].mean_r_bps < result.rows[i - 1].mean_r_bps);
  }
}

TEST_CASE("unreachable pointing is reported") {
  ScenarioConfig cfg = quiet_config();
  // huge lateral offset: azimuth far outside the array's span
  cfg.vehicle2.body = VehicleStatic(4.0, 30.0, 1.7);
  cfg.strategy.kind = CompensationStrategy::Kind::Static;
  CHECK_THROWS_AS(run_scenario(cfg, 10.0, 0.01), ModelError);
  // the fixed frontal boresight does not steer at all
  cfg.strategy.kind = CompensationStrategy::Kind::None;
  CHECK_NOTHROW(run_scenario(cfg, 10.0, 0.01));
}

TEST_CASE("file-backed strokes reach the simulation") {
  const std::string path = "/tmp/fsolink_sim_trace.csv";
  {
    // constant 5 mm lift, covering t < 0 for the dynamic lead-in
    std::vector<double> samples(400, 0.005);
    PerturbationTrace(100.0, -1.0, std::move(samples)).write_csv(path, "dy_m");
  }
  ScenarioConfig cfg = quiet_config();
  cfg.strategy.kind = CompensationStrategy::Kind::Static;
  cfg.vehicle2.perturbation_y = PerturbationSource::from_file(path);
  const auto samples = run_scenario(cfg, 50.0, 0.01);
  for (const auto& s : samples) {
    CHECK(close(s.dy_m, 0.005 - 0.0, 1e-12));
  }

  // a trace that starts at t = 0 cannot serve a dynamic lead-in
  {
    std::vector<double> samples2(400, 0.005);
    PerturbationTrace(100.0, 0.0, std::move(samples2)).write_csv(path, "dy_m");
  }
  cfg.strategy = CompensationStrategy::dynamic(0.02);
  cfg.timestep_s = 1e-3;
  CHECK_THROWS_AS(run_scenario(cfg, 50.0, 0.01), ModelError);
}

TEST_SUITE_END();
