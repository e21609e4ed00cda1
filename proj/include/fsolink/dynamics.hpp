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

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace fsolink {

/// Stationarity test for AR coefficients a1..ap in the convention
///   x[n] = a1 x[n-1] + ... + ap x[n-p] + w[n].
/// Runs the Levinson step-down recursion; the model is stationary iff every
/// reflection coefficient has magnitude < 1.
bool is_stationary(const std::vector<double>& coefficients);

/// Autoregressive process descriptor. Construction rejects non-stationary
/// coefficient sets.
class ARModel {
 public:
  ARModel(std::vector<double> coefficients, double noise_std,
          double sample_rate_hz);

  int order() const { return static_cast<int>(coefficients_.size()); }
  const std::vector<double>& coefficients() const { return coefficients_; }
  double noise_std() const { return noise_std_; }
  double sample_rate_hz() const { return sample_rate_hz_; }

 private:
  std::vector<double> coefficients_;
  double noise_std_;
  double sample_rate_hz_;
};

/// Uniformly sampled perturbation stroke time series. Immutable after
/// construction; freely shareable across workers.
class PerturbationTrace {
 public:
  PerturbationTrace(double sample_rate_hz, double t0_s,
                    std::vector<double> samples);

  double sample_rate_hz() const { return sample_rate_hz_; }
  double t0_s() const { return t0_s_; }
  double t_end_s() const;
  const std::vector<double>& samples() const { return samples_; }

  /// Linear interpolation between samples; throws DomainError outside
  /// [t0_s, t_end_s].
  double value_at(double t_s) const;

  /// Reads a two-column CSV with header `time_s,dy_m` (or `time_s,dx_m`).
  /// Timestamps must be uniformly spaced; anything else is rejected.
  static PerturbationTrace load_csv(const std::string& path);

  /// Writes `time_s,<value_header>` rows with round-trip-exact numbers.
  void write_csv(const std::string& path, const std::string& value_header) const;

 private:
  double sample_rate_hz_;
  double t0_s_;
  std::vector<double> samples_;
};

struct Quantizer {
  enum class Mode { MidRise, Identity };

  int bits = 16;
  double range_m = 0.1;  // symmetric full scale: levels span (-range, +range)
  Mode mode = Mode::MidRise;

  Quantizer() = default;
  Quantizer(int bits, double range_m, Mode mode);

  double step() const;

  static Quantizer identity() { return {1, 1.0, Mode::Identity}; }
};

/// Generates `n` samples of the AR process after discarding a warm-up
/// transient of 100 * order samples. Deterministic given the seed. The first
/// emitted sample is stamped t0_s; callers that need history before t = 0
/// (signaling delays) pass a negative t0_s.
PerturbationTrace ar_generate(const ARModel& model, std::size_t n,
                              std::uint64_t seed, double t0_s = 0.0);

/// Yule-Walker fit via Levinson-Durbin on biased sample autocovariances of
/// the mean-removed trace. Requires at least 10 * order samples. Throws
/// ModelError when the autocovariance system is singular (constant trace) or
/// the recursion leaves the stationary region.
ARModel ar_fit(const PerturbationTrace& trace, int order);

/// Mid-rise uniform quantization to the nearest reconstruction level
/// (step = 2 * range / 2^bits); out-of-range inputs clamp to the outermost
/// level. Identity mode passes the value through unchanged.
double quantize(double value_m, const Quantizer& q);

/// Value available over the signaling channel at time t: the trace sampled at
/// the most recent signaling instant k * delta_t_s <= t (zero-order hold
/// between updates). Requires history back to t - delta_t_s.
double sample_delayed(const PerturbationTrace& trace, double t_s,
                      double delta_t_s);

/// Signaling channel rate in bit/s for `values_per_update` quantized values
/// refreshed every delta_t_s.
double signaling_overhead(int values_per_update, int bits, double delta_t_s);

/// Default vertical-stroke model: an order-10 fit of the bundled reference
/// trace (data/reference_dy.csv), cm-scale strokes with sub-Hz dominant
/// content sampled at 100 Hz. Overridable through the scenario config.
const ARModel& default_vertical_model();

}  // namespace fsolink
