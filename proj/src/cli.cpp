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

#include "fsolink/cli.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <vector>

#include <json.hpp>

#include "fsolink/config.hpp"
#include "fsolink/csvout.hpp"
#include "fsolink/error.hpp"
#include "fsolink/sim.hpp"
#include "fsolink/version.hpp"

namespace fsolink::cli {

namespace {

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void ensure_out_dir(const std::string& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory: " + out_dir);
}

// The manifest records everything needed to reproduce the data files; the
// timestamp is informational only and not part of the config hash.
void write_manifest(const std::string& out_dir, const ScenarioConfig& cfg,
                    const std::vector<std::string>& outputs) {
  nlohmann::json manifest{{"config_hash", config_hash(cfg)},
                          {"seed", cfg.seed},
                          {"tool_version", kToolVersion},
                          {"timestamp", utc_timestamp()},
                          {"outputs", outputs},
                          {"resolved_config", resolved_config_json(cfg)}};
  const std::string path = out_dir + "/manifest.json";
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open output file: " + path);
  out << manifest.dump(2) << '\n';
  if (!out) throw IoError("write failed: " + path);
}

const char* strategy_label(CompensationStrategy::Kind kind) {
  switch (kind) {
    case CompensationStrategy::Kind::None: return "none";
    case CompensationStrategy::Kind::Static: return "static";
    case CompensationStrategy::Kind::Dynamic: return "dynamic";
  }
  return "?";
}

int run_guarded(const char* command, const std::function<void()>& body) {
  try {
    body();
    return kExitOk;
  } catch (const ConfigError& e) {
    std::cerr << command << ": " << e.what() << '\n';
    return kExitConfig;
  } catch (const IoError& e) {
    std::cerr << command << ": " << e.what() << '\n';
    return kExitIo;
  } catch (const ModelError& e) {
    std::cerr << command << ": " << e.what() << '\n';
    return kExitModel;
  } catch (const DomainError& e) {
    std::cerr << command << ": " << e.what() << '\n';
    return kExitModel;
  } catch (const std::exception& e) {
    std::cerr << command << ": unexpected error: " << e.what() << '\n';
    return kExitModel;
  }
}

}  // namespace

int cmd_sweep(const std::string& config_path, const std::string& out_dir,
              std::optional<std::uint64_t> seed_override) {
  return run_guarded("sweep", [&] {
    const ScenarioConfig cfg = load_config(config_path, seed_override);
    const SweepResult result = sweep(cfg);
    ensure_out_dir(out_dir);
    CsvWriter csv(out_dir + "/sweep.csv",
                  "strategy,p0_w,z_m,mean_r_bps,p5_r_bps,p95_r_bps,mean_pr_w");
    for (const SweepRow& row : result.rows) {
      csv.field(strategy_label(row.strategy));
      csv.field(row.p0_w);
      csv.field(row.z_m);
      csv.field(row.mean_r_bps);
      csv.field(row.p5_r_bps);
      csv.field(row.p95_r_bps);
      csv.field(row.mean_pr_w);
      csv.end_row();
    }
    csv.close();
    write_manifest(out_dir, cfg, {"sweep.csv"});
  });
}

int cmd_displacement(const std::string& config_path, const std::string& out_dir,
                     std::optional<std::uint64_t> seed_override) {
  return run_guarded("displacement", [&] {
    const ScenarioConfig cfg = load_config(config_path, seed_override);
    if (cfg.dy_grid_m.empty()) {
      throw ConfigError("dy_grid_m", "displacement grid must not be empty");
    }
    const auto rows = displacement_sweep(cfg, cfg.dy_grid_m, cfg.z_list_m);
    ensure_out_dir(out_dir);
    CsvWriter csv(out_dir + "/displacement.csv", "p0_w,z_m,delta_m,r_bps");
    for (const DisplacementRow& row : rows) {
      csv.field(row.p0_w);
      csv.field(row.z_m);
      csv.field(row.delta_m);
      csv.field(row.r_bps);
      csv.end_row();
    }
    csv.close();
    write_manifest(out_dir, cfg, {"displacement.csv"});
  });
}

int cmd_timeseries(const std::string& config_path, const std::string& out_dir,
                   std::optional<std::uint64_t> seed_override) {
  return run_guarded("timeseries", [&] {
    const ScenarioConfig cfg = load_config(config_path, seed_override);
    // Single run at the first configured grid point.
    const auto samples = run_scenario(cfg, cfg.z_list_m.front(),
                                      cfg.p0_list_w.front(), /*stream_salt=*/0);
    ensure_out_dir(out_dir);
    CsvWriter csv(out_dir + "/timeseries.csv",
                  "t_s,z_m,p0_w,dx_m,dy_m,beta_x_rad,beta_y_rad,p_r_w,snr,"
                  "r_bit_per_s");
    for (const LinkSample& s : samples) {
      csv.field(s.t_s);
      csv.field(s.z_m);
      csv.field(s.p0_w);
      csv.field(s.dx_m);
      csv.field(s.dy_m);
      csv.field(s.beta_x_rad);
      csv.field(s.beta_y_rad);
      csv.field(s.p_r_w);
      csv.field(s.snr);
      csv.field(s.r_bit_per_s);
      csv.end_row();
    }
    csv.close();
    write_manifest(out_dir, cfg, {"timeseries.csv"});
  });
}

int cmd_fit_ar(const std::string& trace_path, int order,
               const std::string& out_dir) {
  return run_guarded("fit-ar", [&] {
    PerturbationTrace trace = [&] {
      try {
        return PerturbationTrace::load_csv(trace_path);
      } catch (const DomainError& e) {
        // A malformed trace is a configuration problem, not a model failure.
        throw ConfigError("trace", e.what());
      }
    }();
    if (order < 1) throw ConfigError("order", "must be at least 1");
    // ar_fit reports usage problems (order, length) as DomainError and
    // numerical failures (singular, non-stationary) as ModelError.
    ARModel model = [&] {
      try {
        return ar_fit(trace, order);
      } catch (const DomainError& e) {
        throw ConfigError("trace", e.what());
      }
    }();
    ensure_out_dir(out_dir);
    const std::string path = out_dir + "/ar_model.json";
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open output file: " + path);
    out << ar_model_to_json(model).dump(2) << '\n';
    if (!out) throw IoError("write failed: " + path);
  });
}

}  // namespace fsolink::cli
