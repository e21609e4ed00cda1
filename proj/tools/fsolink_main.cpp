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

#include <optional>
#include <string>

#include <CLI11.hpp>

#include "fsolink/cli.hpp"
#include "fsolink/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Laser vehicle-to-vehicle link simulator"};
  app.set_version_flag("--version", fsolink::kToolVersion);
  app.require_subcommand(1);

  std::string config_path = "data/default_config.json";
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed;
  int order = 10;
  std::string trace_path;

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "Scenario config JSON");
    cmd->add_option("--out", out_dir, "Output directory");
    cmd->add_option("--seed", seed, "Override the config seed");
  };

  auto* sweep = app.add_subcommand(
      "sweep", "Throughput vs distance/power for all compensation strategies");
  add_common(sweep);

  auto* displacement = app.add_subcommand(
      "displacement", "Throughput vs imposed vertical displacement");
  add_common(displacement);

  auto* timeseries = app.add_subcommand(
      "timeseries", "Per-timestep link samples for one scenario run");
  add_common(timeseries);

  auto* fit = app.add_subcommand("fit-ar",
                                 "Fit an AR model to a stroke trace CSV");
  fit->add_option("trace", trace_path, "Trace CSV (time_s,dy_m)")->required();
  fit->add_option("--order", order, "AR model order");
  fit->add_option("--out", out_dir, "Output directory");

  CLI11_PARSE(app, argc, argv);

  if (sweep->parsed()) return fsolink::cli::cmd_sweep(config_path, out_dir, seed);
  if (displacement->parsed()) {
    return fsolink::cli::cmd_displacement(config_path, out_dir, seed);
  }
  if (timeseries->parsed()) {
    return fsolink::cli::cmd_timeseries(config_path, out_dir, seed);
  }
  if (fit->parsed()) return fsolink::cli::cmd_fit_ar(trace_path, order, out_dir);
  return 1;
}
