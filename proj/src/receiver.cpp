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

#include "fsolink/receiver.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "fsolink/error.hpp"

namespace fsolink {

namespace {

void require(bool ok, const char* message) {
  if (!ok) throw DomainError(message);
}

}  // namespace

ReceiverParams::ReceiverParams(Aperture ap, double pd_area, double responsivity,
                               double filter_center, double filter_bw,
                               double nep, double bandwidth)
    : aperture(ap), pd_area_m2(pd_area), responsivity_a_per_w(responsivity),
      filter_center_m(filter_center), filter_bw_m(filter_bw),
      nep_w_per_sqrthz(nep), bandwidth_hz(bandwidth) {
  require(pd_area > 0.0, "photodetector area must be positive");
  require(responsivity > 0.0, "responsivity must be positive");
  require(filter_center > 0.0, "optical filter center must be positive");
  require(filter_bw > 0.0, "optical filter bandwidth must be positive");
  require(nep > 0.0, "NEP must be positive");
  require(bandwidth > 0.0, "bandwidth must be positive");
}

SolarSpectrum::SolarSpectrum(std::vector<double> wavelength,
                             std::vector<double> irradiance)
    : wavelength_m_(std::move(wavelength)), irradiance_(std::move(irradiance)) {
  require(wavelength_m_.size() == irradiance_.size(),
          "spectrum columns must have equal length");
  require(wavelength_m_.size() >= 2, "spectrum needs at least two samples");
  for (std::size_t i = 0; i < wavelength_m_.size(); ++i) {
    require(std::isfinite(wavelength_m_[i]) && wavelength_m_[i] > 0.0,
            "spectrum wavelengths must be positive");
    require(std::isfinite(irradiance_[i]) && irradiance_[i] >= 0.0,
            "spectral irradiance must be non-negative");
    if (i > 0) {
      require(wavelength_m_[i] > wavelength_m_[i - 1],
              "spectrum wavelengths must be strictly increasing");
    }
  }
}

SolarSpectrum SolarSpectrum::load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open spectrum file: " + path);
  std::string line;
  if (!std::getline(in, line) || line != "wavelength_nm,irradiance_w_m2_nm") {
    throw DomainError("spectrum file must start with header "
                      "'wavelength_nm,irradiance_w_m2_nm': " + path);
  }
  std::vector<double> wl, ir;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    double nm = 0.0, w = 0.0;
    char comma = 0;
    if (!(row >> nm >> comma >> w) || comma != ',') {
      throw DomainError("malformed spectrum row " + std::to_string(line_no) +
                        " in " + path);
    }
    wl.push_back(nm * 1e-9);
    ir.push_back(w * 1e9);  // W/m^2/nm -> W/m^2/m
  }
  return SolarSpectrum(std::move(wl), std::move(ir));
}

double background_irradiance(const SolarSpectrum& spectrum, double center_m,
                             double bandwidth_m) {
  require(center_m > 0.0 && bandwidth_m > 0.0,
          "filter band must be positive");
  const double lo = center_m - 0.5 * bandwidth_m;
  const double hi = center_m + 0.5 * bandwidth_m;
  if (lo < spectrum.min_wavelength_m() || hi > spectrum.max_wavelength_m()) {
    throw DomainError("optical filter band extends outside the spectrum support");
  }

  const auto& wl = spectrum.wavelength_m();
  const auto& ir = spectrum.irradiance();
  const auto interp = [&](std::size_t i, double w) {
    const double f = (w - wl[i]) / (wl[i + 1] - wl[i]);
    return ir[i] + f * (ir[i + 1] - ir[i]);
  };

  // Trapezoids over interior knots, with the edge panels clipped at the band
  // boundaries. Exact for piecewise-linear spectra.
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < wl.size(); ++i) {
    const double a = std::max(wl[i], lo);
    const double b = std::min(wl[i + 1], hi);
    if (a >= b) continue;
    const double fa = (a == wl[i]) ? ir[i] : interp(i, a);
    const double fb = (b == wl[i + 1]) ? ir[i + 1] : interp(i, b);
    total += 0.5 * (fa + fb) * (b - a);
  }
  return total;
}

double snr(double p_r_w, const ReceiverParams& rx, double i_b_w_per_m2) {
  require(std::isfinite(p_r_w) && p_r_w >= 0.0,
          "received power must be non-negative");
  require(std::isfinite(i_b_w_per_m2) && i_b_w_per_m2 >= 0.0,
          "background irradiance must be non-negative");
  const double eta = rx.responsivity_a_per_w;
  const double b = rx.bandwidth_hz;
  const double signal_current = p_r_w * eta;
  const double shot = 2.0 * kElectronCharge * b *
                      (i_b_w_per_m2 * rx.aperture.area_m2() * eta + p_r_w * eta);
  const double circuit = rx.nep_w_per_sqrthz * rx.nep_w_per_sqrthz * eta * eta * b;
  return signal_current * signal_current / (shot + circuit);
}

double throughput(double snr_value, double bandwidth_hz) {
  require(std::isfinite(snr_value) && snr_value >= 0.0,
          "SNR must be non-negative");
  return 0.5 * bandwidth_hz * std::log2(1.0 + snr_value);
}

}  // namespace fsolink
