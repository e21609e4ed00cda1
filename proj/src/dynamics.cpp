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

#include "fsolink/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "fsolink/csvout.hpp"
#include "fsolink/error.hpp"
#include "fsolink/rng.hpp"

namespace fsolink {

namespace {

void require(bool ok, const char* message) {
  if (!ok) throw DomainError(message);
}

constexpr int kWarmupPerOrder = 100;

}  // namespace

bool is_stationary(const std::vector<double>& coefficients) {
  // Levinson step-down: peel reflection coefficients off the prediction
  // polynomial; the model is stationary iff all of them lie inside the unit
  // circle.
  std::vector<double> a = coefficients;
  for (int m = static_cast<int>(a.size()); m >= 1; --m) {
    const double k = a[m - 1];
    if (!std::isfinite(k) || std::fabs(k) >= 1.0) return false;
    if (m == 1) break;
    const double denom = 1.0 - k * k;
    std::vector<double> prev(m - 1);
    for (int i = 1; i <= m - 1; ++i) {
      prev[i - 1] = (a[i - 1] + k * a[m - i - 1]) / denom;
    }
    a = std::move(prev);
  }
  return true;
}

ARModel::ARModel(std::vector<double> coefficients, double noise_std,
                 double sample_rate_hz)
    : coefficients_(std::move(coefficients)), noise_std_(noise_std),
      sample_rate_hz_(sample_rate_hz) {
  for (double c : coefficients_) {
    require(std::isfinite(c), "AR coefficients must be finite");
  }
  require(std::isfinite(noise_std) && noise_std >= 0.0,
          "AR innovation std must be non-negative");
  require(std::isfinite(sample_rate_hz) && sample_rate_hz > 0.0,
          "AR sample rate must be positive");
  require(is_stationary(coefficients_),
          "autoregressive model is not stationary");
}

PerturbationTrace::PerturbationTrace(double sample_rate_hz, double t0_s,
                                     std::vector<double> samples)
    : sample_rate_hz_(sample_rate_hz), t0_s_(t0_s), samples_(std::move(samples)) {
  require(std::isfinite(sample_rate_hz) && sample_rate_hz > 0.0,
          "trace sample rate must be positive");
  require(std::isfinite(t0_s), "trace start time must be finite");
  require(!samples_.empty(), "trace must not be empty");
  for (double s : samples_) {
    require(std::isfinite(s), "trace samples must be finite");
  }
}

double PerturbationTrace::t_end_s() const {
  return t0_s_ + static_cast<double>(samples_.size() - 1) / sample_rate_hz_;
}

double PerturbationTrace::value_at(double t_s) const {
  const double eps = 1e-9 / sample_rate_hz_;
  if (t_s < t0_s_ - eps || t_s > t_end_s() + eps) {
    throw DomainError("trace sampled outside its support");
  }
  double pos = (t_s - t0_s_) * sample_rate_hz_;
  pos = std::clamp(pos, 0.0, static_cast<double>(samples_.size() - 1));
  auto i = static_cast<std::size_t>(pos);
  double frac = pos - static_cast<double>(i);
  // Snap to the grid so on-grid queries are exact despite rounding in pos.
  if (frac < 1e-9) {
    frac = 0.0;
  } else if (frac > 1.0 - 1e-9) {
    ++i;
    frac = 0.0;
  }
  if (i + 1 >= samples_.size()) return samples_.back();
  return samples_[i] + frac * (samples_[i + 1] - samples_[i]);
}

PerturbationTrace PerturbationTrace::load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open trace file: " + path);
  std::string line;
  if (!std::getline(in, line) ||
      (line != "time_s,dy_m" && line != "time_s,dx_m")) {
    throw DomainError("trace file must start with header 'time_s,dy_m' or "
                      "'time_s,dx_m': " + path);
  }
  std::vector<double> times, values;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    double t = 0.0, v = 0.0;
    char comma = 0;
    if (!(row >> t >> comma >> v) || comma != ',') {
      throw DomainError("malformed trace row " + std::to_string(line_no) +
                        " in " + path);
    }
    times.push_back(t);
    values.push_back(v);
  }
  if (times.size() < 2) {
    throw DomainError("trace needs at least two samples: " + path);
  }
  const double dt = times[1] - times[0];
  require(dt > 0.0, "trace timestamps must increase");
  for (std::size_t i = 1; i < times.size(); ++i) {
    const double step = times[i] - times[i - 1];
    if (std::fabs(step - dt) > 1e-6 * dt) {
      throw DomainError("trace sampling is not uniform at row " +
                        std::to_string(i + 1) + ": " + path);
    }
  }
  return PerturbationTrace(1.0 / dt, times.front(), std::move(values));
}

void PerturbationTrace::write_csv(const std::string& path,
                                  const std::string& value_header) const {
  CsvWriter w(path, "time_s," + value_header);
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    w.field(t0_s_ + static_cast<double>(i) / sample_rate_hz_);
    w.field(samples_[i]);
    w.end_row();
  }
  w.close();
}

Quantizer::Quantizer(int b, double range, Mode m)
    : bits(b), range_m(range), mode(m) {
  require(b >= 1 && b <= 56, "quantizer bits must be in [1, 56]");
  require(std::isfinite(range) && range > 0.0,
          "quantizer range must be positive");
}

double Quantizer::step() const {
  return std::ldexp(2.0 * range_m, -bits);
}

PerturbationTrace ar_generate(const ARModel& model, std::size_t n,
                              std::uint64_t seed, double t0_s) {
  require(n > 0, "must generate at least one sample");
  const auto order = static_cast<std::size_t>(model.order());
  const std::size_t warmup = kWarmupPerOrder * order;
  require(n > warmup, "requested length must exceed the warm-up transient");

  NormalSampler normal(seed);
  const auto& a = model.coefficients();
  std::vector<double> history(order, 0.0);  // history[0] = x[n-1]
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < warmup + n; ++i) {
    double x = model.noise_std() * normal();
    for (std::size_t j = 0; j < order; ++j) x += a[j] * history[j];
    if (order > 0) {
      for (std::size_t j = order - 1; j > 0; --j) history[j] = history[j - 1];
      history[0] = x;
    }
    if (i >= warmup) out.push_back(x);
  }
  return PerturbationTrace(model.sample_rate_hz(), t0_s, std::move(out));
}

ARModel ar_fit(const PerturbationTrace& trace, int order) {
  require(order >= 1, "fit order must be at least 1");
  const auto& x = trace.samples();
  const auto n = x.size();
  if (n < static_cast<std::size_t>(10 * order)) {
    throw DomainError("trace too short: need at least 10 samples per AR order");
  }

  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(n);

  // Biased sample autocovariances of the mean-removed trace.
  std::vector<double> c(static_cast<std::size_t>(order) + 1, 0.0);
  for (std::size_t lag = 0; lag <= static_cast<std::size_t>(order); ++lag) {
    double acc = 0.0;
    for (std::size_t i = lag; i < n; ++i) {
      acc += (x[i] - mean) * (x[i - lag] - mean);
    }
    c[lag] = acc / static_cast<double>(n);
  }
  // A constant trace leaves only rounding residue after mean removal; treat
  // variance far below the mean's rounding floor as singular.
  const double floor = 1e-12 * (std::fabs(mean) + 1e-30);
  if (!(c[0] > floor * floor) || !std::isfinite(c[0])) {
    throw ModelError("singular autocovariance system (constant trace?)");
  }

  // Levinson-Durbin on the Toeplitz system.
  std::vector<double> a;  // prediction coefficients a1..am
  double error = c[0];
  for (int m = 1; m <= order; ++m) {
    double acc = c[static_cast<std::size_t>(m)];
    for (int i = 1; i < m; ++i) {
      acc -= a[static_cast<std::size_t>(i - 1)] * c[static_cast<std::size_t>(m - i)];
    }
    const double k = acc / error;
    if (!std::isfinite(k) || std::fabs(k) >= 1.0) {
      throw ModelError("autocovariance system is singular or non-stationary");
    }
    std::vector<double> next(static_cast<std::size_t>(m));
    for (int i = 1; i < m; ++i) {
      next[static_cast<std::size_t>(i - 1)] =
          a[static_cast<std::size_t>(i - 1)] - k * a[static_cast<std::size_t>(m - i - 1)];
    }
    next[static_cast<std::size_t>(m - 1)] = k;
    a = std::move(next);
    error *= (1.0 - k * k);
    if (!(error > 0.0) || !std::isfinite(error)) {
      throw ModelError("prediction error collapsed; autocovariances singular");
    }
  }
  return ARModel(std::move(a), std::sqrt(error), trace.sample_rate_hz());
}

double quantize(double value_m, const Quantizer& q) {
  if (q.mode == Quantizer::Mode::Identity) return value_m;
  const double step = q.step();
  const double top = q.range_m - 0.5 * step;  // outermost reconstruction level
  const double level = (std::floor(value_m / step) + 0.5) * step;
  return std::clamp(level, -top, top);
}

double sample_delayed(const PerturbationTrace& trace, double t_s,
                      double delta_t_s) {
  require(std::isfinite(t_s), "sample time must be finite");
  require(std::isfinite(delta_t_s) && delta_t_s > 0.0,
          "signaling period must be positive");
  const double eps = 1e-9 / trace.sample_rate_hz();
  if (t_s - delta_t_s < trace.t0_s() - eps) {
    throw DomainError("insufficient trace history for the signaling delay");
  }
  // Most recent signaling instant at or before t, with a guard so times that
  // are mathematically on the update grid do not fall one period back.
  const double q = t_s / delta_t_s;
  double k = std::floor(q);
  if (q - k > 1.0 - 1e-9) k += 1.0;
  return trace.value_at(k * delta_t_s);
}

double signaling_overhead(int values_per_update, int bits, double delta_t_s) {
  require(values_per_update > 0, "values per update must be positive");
  require(bits > 0, "bits per value must be positive");
  require(std::isfinite(delta_t_s) && delta_t_s > 0.0,
          "signaling period must be positive");
  return static_cast<double>(values_per_update * bits) / delta_t_s;
}

const ARModel& default_vertical_model() {
  // Order-10 fit (ar_fit) of the bundled synthetic stroke recording
  // data/reference_dy.csv; regenerate with tools/gen_reference_trace and
  // `fsolink fit-ar`.
  static const ARModel model(
      std::vector<double>{1.3849984410283127, -0.06909727220777119,
                          -0.06897594063703254, -0.0687796420473419,
                          -0.06850697977873506, -0.06815850199866974,
                          -0.06773433636935518, -0.0672354250792262,
                          -0.06666292043262187, 0.1600436537896685},
      2.4901481777404e-06, 100.0);
  return model;
}

}  // namespace fsolink
