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

// Regenerates data/reference_dy.csv, the bundled synthetic vertical-stroke
// recording: 200 s at 100 Hz from a cascade of damped resonances, scaled to
// 4.2 mm rms (peaks around +-1.5 cm, dominant content near 0.18 Hz). The
// shipped default AR(10) model is `fsolink fit-ar` run on this file.

#include <cmath>
#include <cstdio>
#include <vector>

#include "fsolink/dynamics.hpp"

namespace {

constexpr double kSampleRateHz = 100.0;
constexpr double kDurationS = 200.0;
constexpr double kTargetRmsM = 0.0042;
constexpr std::uint64_t kSeed = 20260810;

// (pole radius, resonance frequency in Hz); low-pass dominated so the strokes
// stay trackable at slow signaling rates.
constexpr struct {
  double radius;
  double freq_hz;
} kPoles[] = {
    {0.997, 0.18}, {0.988, 0.40}, {0.960, 0.90}, {0.880, 2.0}, {0.700, 5.0},
};

std::vector<double> cascade_coefficients() {
  std::vector<double> poly{1.0};
  for (const auto& p : kPoles) {
    const double theta = 2.0 * M_PI * p.freq_hz / kSampleRateHz;
    const double quad[3] = {1.0, -2.0 * p.radius * std::cos(theta),
                            p.radius * p.radius};
    std::vector<double> next(poly.size() + 2, 0.0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      for (int k = 0; k < 3; ++k) next[i + k] += poly[i] * quad[k];
    }
    poly = std::move(next);
  }
  std::vector<double> a(poly.size() - 1);
  for (std::size_t i = 1; i < poly.size(); ++i) a[i - 1] = -poly[i];
  return a;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string out = argc > 1 ? argv[1] : "data/reference_dy.csv";
  const auto coeffs = cascade_coefficients();
  const auto n = static_cast<std::size_t>(kDurationS * kSampleRateHz) + 1;

  // Two passes: measure the unit-innovation scale, then hit the target rms.
  const fsolink::ARModel probe(coeffs, 1.0, kSampleRateHz);
  const auto probe_trace = fsolink::ar_generate(probe, 200000, kSeed);
  double sumsq = 0.0;
  for (const double v : probe_trace.samples()) sumsq += v * v;
  const double unit_rms =
      std::sqrt(sumsq / static_cast<double>(probe_trace.samples().size()));

  const fsolink::ARModel model(coeffs, kTargetRmsM / unit_rms, kSampleRateHz);
  const auto trace = fsolink::ar_generate(model, n, kSeed);
  trace.write_csv(out, "dy_m");

  double s2 = 0.0, peak = 0.0;
  for (const double v : trace.samples()) {
    s2 += v * v;
    peak = std::max(peak, std::fabs(v));
  }
  std::printf("wrote %s: %zu samples, rms %.3f mm, peak %.3f mm\n", out.c_str(),
              trace.samples().size(),
              1e3 * std::sqrt(s2 / static_cast<double>(trace.samples().size())),
              1e3 * peak);
  return 0;
}
