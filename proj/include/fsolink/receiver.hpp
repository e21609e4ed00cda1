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

#include <string>
#include <vector>

#include "fsolink/beam.hpp"

namespace fsolink {

/// 2019 SI exact elementary charge [C].
inline constexpr double kElectronCharge = 1.602176634e-19;

/// PIN photodetection chain parameters. pd_area_m2 documents the photodiode
/// active area behind the focusing lens; background light is collected over
/// the full aperture, so pd_area_m2 does not enter the SNR.
struct ReceiverParams {
  Aperture aperture;
  double pd_area_m2;
  double responsivity_a_per_w;
  double filter_center_m;
  double filter_bw_m;
  double nep_w_per_sqrthz;
  double bandwidth_hz;

  ReceiverParams(Aperture aperture, double pd_area_m2,
                 double responsivity_a_per_w, double filter_center_m,
                 double filter_bw_m, double nep_w_per_sqrthz,
                 double bandwidth_hz);
};

/// Sampled solar spectral irradiance vs wavelength, strictly ascending.
class SolarSpectrum {
 public:
  SolarSpectrum(std::vector<double> wavelength_m,
                std::vector<double> irradiance_w_per_m2_per_m);

  const std::vector<double>& wavelength_m() const { return wavelength_m_; }
  const std::vector<double>& irradiance() const { return irradiance_; }
  double min_wavelength_m() const { return wavelength_m_.front(); }
  double max_wavelength_m() const { return wavelength_m_.back(); }

  /// Reads a two-column CSV with header `wavelength_nm,irradiance_w_m2_nm`.
  static SolarSpectrum load_csv(const std::string& path);

 private:
  std::vector<double> wavelength_m_;
  std::vector<double> irradiance_;
};

/// Background irradiance collected through an optical filter: trapezoidal
/// integral of the spectrum over [center - bw/2, center + bw/2]. Exact for
/// piecewise-linear spectra, so a flat spectrum gives irradiance * bandwidth.
/// The band must lie within the spectrum support.
double background_irradiance(const SolarSpectrum& spectrum, double center_m,
                             double bandwidth_m);

/// Electrical SNR after the photodetector: squared signal current over shot
/// noise (background + signal) plus NEP-equivalent circuit noise.
double snr(double p_r_w, const ReceiverParams& rx, double i_b_w_per_m2);

/// Shannon-capacity throughput for an intensity-modulated link [bit/s].
double throughput(double snr_value, double bandwidth_hz);

}  // namespace fsolink
