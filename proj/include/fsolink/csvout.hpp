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

#include <fstream>
#include <string>
#include <string_view>
#include <vector>

namespace fsolink {

/// Shortest decimal representation that round-trips to the same double.
/// Locale-free, '.' separator.
std::string format_double(double value);

/// Deterministic CSV writer: comma separator, '\n' line endings, binary
/// stream so output is byte-stable. Values are never quoted (the emitted
/// vocabulary never needs it).
class CsvWriter {
 public:
  CsvWriter(const std::string& path, std::string_view header);

  void field(double value);
  void field(std::string_view value);
  void end_row();
  void close();

 private:
  std::ofstream out_;
  std::string path_;
  bool row_started_ = false;
};

}  // namespace fsolink
