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
#include <string>

namespace fsolink::cli {

// Exit codes shared by every subcommand:
//   0 success, 2 configuration error, 3 I/O error, 4 numerical/model error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitModel = 4;

/// Runs the full strategy sweep and writes `sweep.csv` + `manifest.json`
/// into out_dir.
int cmd_sweep(const std::string& config_path, const std::string& out_dir,
              std::optional<std::uint64_t> seed_override = {});

/// Writes `displacement.csv` (+ manifest): throughput vs imposed vertical
/// displacement over the configured grid.
int cmd_displacement(const std::string& config_path, const std::string& out_dir,
                     std::optional<std::uint64_t> seed_override = {});

/// Writes `timeseries.csv` (+ manifest): every link sample of a single run at
/// the first configured distance and power, under the configured strategy.
int cmd_timeseries(const std::string& config_path, const std::string& out_dir,
                   std::optional<std::uint64_t> seed_override = {});

/// Fits an AR model of the given order to a stroke trace file and writes
/// `ar_model.json` into out_dir.
int cmd_fit_ar(const std::string& trace_path, int order,
               const std::string& out_dir);

}  // namespace fsolink::cli
