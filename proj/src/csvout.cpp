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

#include "fsolink/csvout.hpp"

#include <charconv>
#include <system_error>

#include "fsolink/error.hpp"

namespace fsolink {

std::string format_double(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  if (res.ec != std::errc()) throw DomainError("number formatting failed");
  return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(const std::string& path, std::string_view header)
    : out_(path, std::ios::binary | std::ios::trunc), path_(path) {
  if (!out_) throw IoError("cannot open output file: " + path);
  out_ << header << '\n';
}

void CsvWriter::field(double value) { field(format_double(value)); }

void CsvWriter::field(std::string_view value) {
  if (row_started_) out_ << ',';
  out_ << value;
  row_started_ = true;
}

void CsvWriter::end_row() {
  out_ << '\n';
  row_started_ = false;
}

void CsvWriter::close() {
  out_.close();
  if (out_.fail()) throw IoError("write failed: " + path_);
}

}  // namespace fsolink
