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

#include <cmath>
#include <cstdio>
#include <string>

#include <doctest.h>

#include "fsolink/error.hpp"
#include "fsolink/receiver.hpp"

using namespace fsolink;

namespace {

bool close(double a, double b, double rel) {
  return std::fabs(a - b) <= rel * std::max(std::fabs(a), std::fabs(b));
}

ReceiverParams reference_rx() {
  return ReceiverParams(Aperture(1e-3, 1e-3), 1e-7, 0.8, 1550e-9, 50e-9,
                        20e-12, 1e9);
}

SolarSpectrum flat_spectrum(double w_per_m2_per_nm, double lo_nm,
                            double hi_nm, double step_nm = 5.0) {
  std::vector<double> wl, ir;
  for (double nm = lo_nm; nm <= hi_nm + 1e-9; nm += step_nm) {
    wl.push_back(nm * 1e-9);
    ir.push_back(w_per_m2_per_nm * 1e9);
  }
  return SolarSpectrum(std::move(wl), std::move(ir));
}

}  // namespace

TEST_SUITE_BEGIN("receiver");

TEST_CASE("spectrum validation") {
  CHECK_THROWS_AS(SolarSpectrum({1e-6, 1e-6}, {1.0, 1.0}), DomainError);
  CHECK_THROWS_AS(SolarSpectrum({1e-6, 2e-6}, {1.0, -1.0}), DomainError);
  CHECK_THROWS_AS(SolarSpectrum({1e-6}, {1.0}), DomainError);
}

TEST_CASE("background irradiance band integral") {
  SUBCASE("flat spectrum reproduces irradiance times bandwidth") {
    const auto flat = flat_spectrum(0.1116, 200.0, 2000.0);
    const double ib = background_irradiance(flat, 1550e-9, 50e-9);
    CHECK(close(ib, 5.58, 1e-12));
  }
  SUBCASE("zero spectrum integrates to zero") {
    const auto zero = flat_spectrum(0.0, 200.0, 2000.0);
    CHECK(background_irradiance(zero, 1550e-9, 50e-9) == 0.0);
  }
  SUBCASE("triangular spectrum matches the analytic area") {
    // spike rising 1000->1550 nm and falling 1550->2100 nm, peak 1 W/m^2/nm
    std::vector<double> wl, ir;
    for (double nm = 1000.0; nm <= 2100.0 + 1e-9; nm += 2.5) {
      wl.push_back(nm * 1e-9);
      const double up = (nm - 1000.0) / 550.0;
      const double down = (2100.0 - nm) / 550.0;
      ir.push_back(std::max(0.0, std::min(up, down)) * 1e9);
    }
    const SolarSpectrum tri(std::move(wl), std::move(ir));
    // band 1500..1600 nm: peak region; analytic integral of the triangle
    // over [1500,1550] + [1550,1600], in W/m^2
    const double exact = 2.0 * (50.0 * (1.0 + (1.0 - 50.0 / 550.0)) / 2.0);
    const double ib = background_irradiance(tri, 1550e-9, 100e-9);
    CHECK(close(ib, exact, 1e-12));
  }
  SUBCASE("band outside the support is rejected") {
    const auto flat = flat_spectrum(0.1116, 1500.0, 1600.0);
    CHECK_THROWS_AS(background_irradiance(flat, 1550e-9, 200e-9), DomainError);
    CHECK_THROWS_AS(background_irradiance(flat, 1400e-9, 50e-9), DomainError);
  }
}

TEST_CASE("spectrum file round trip") {
  const std::string path = "/tmp/fsolink_test_spectrum.csv";
  {
    std::FILE* f = std::fopen(path.c_str(), "w");
    REQUIRE(f != nullptr);
    std::fputs("wavelength_nm,irradiance_w_m2_nm\n", f);
    for (double nm = 200.0; nm <= 2000.0; nm += 5.0) {
      std::fprintf(f, "%.1f,0.1116\n", nm);
    }
    std::fclose(f);
  }
  const auto spec = SolarSpectrum::load_csv(path);
  CHECK(close(background_irradiance(spec, 1550e-9, 50e-9), 5.58, 1e-12));
  CHECK_THROWS_AS(SolarSpectrum::load_csv("/nonexistent/spectrum.csv"),
                  IoError);
}

TEST_CASE("snr reference chain") {
  const auto rx = reference_rx();
  SUBCASE("dark, signal-free receiver has zero SNR") {
    CHECK(snr(0.0, rx, 0.0) == 0.0);
  }
  SUBCASE("reference operating point") {
    // received power from the 50 m aligned beam (point approximation);
    // frozen from scripts/link_budget_reference.py
    const double s = snr(1.04439168772e-5, rx, 5.58);
    CHECK(close(s, 268.382116196, 1e-9));
    CHECK(close(throughput(s, 1e9), 4.036755132886e9, 1e-9));
  }
  SUBCASE("negative inputs rejected") {
    CHECK_THROWS_AS(snr(-1.0, rx, 0.0), DomainError);
    CHECK_THROWS_AS(snr(1e-6, rx, -1.0), DomainError);
  }
}

TEST_CASE("snr scaling behaviour") {
  const auto rx = reference_rx();
  SUBCASE("strictly increasing in received power") {
    double prev = -1.0;
    for (double p = 0.0; p < 1e-4; p += 5e-6) {
      const double s = snr(p, rx, 5.58);
      CHECK(s > prev);
      prev = s;
    }
  }
  SUBCASE("larger bandwidth always hurts") {
    const ReceiverParams wide(Aperture(1e-3, 1e-3), 1e-7, 0.8, 1550e-9, 50e-9,
                              20e-12, 2e9);
    for (double p = 1e-9; p < 1e-3; p *= 10.0) {
      CHECK(snr(p, wide, 5.58) < snr(p, rx, 5.58));
    }
  }
  SUBCASE("tenfold NEP scales the circuit noise term a hundredfold") {
    // with background light off and a tiny signal, shot noise is negligible
    // and SNR is inversely proportional to NEP^2
    const ReceiverParams noisy(Aperture(1e-3, 1e-3), 1e-7, 0.8, 1550e-9, 50e-9,
                               200e-12, 1e9);
    const double p = 1e-9;
    const double ratio = snr(p, rx, 0.0) / snr(p, noisy, 0.0);
    CHECK(close(ratio, 100.0, 1e-3));
  }
  SUBCASE("halving NEP quadruples SNR in the circuit-noise limit") {
    const ReceiverParams quiet(Aperture(1e-3, 1e-3), 1e-7, 0.8, 1550e-9, 50e-9,
                               10e-12, 1e9);
    const double p = 1e-9;
    CHECK(close(snr(p, quiet, 0.0) / snr(p, rx, 0.0), 4.0, 1e-4));
  }
}

TEST_CASE("throughput") {
  CHECK(throughput(0.0, 1e9) == 0.0);
  CHECK(throughput(3.0, 1e9) == 1e9);  // log2(4) = 2 exactly
  CHECK(close(throughput(268.382116196, 1e9), 4.036755132886e9, 1e-9));
  CHECK_THROWS_AS(throughput(-0.1, 1e9), DomainError);

  double prev = -1.0;
  for (double s = 0.0; s < 1e4; s = s * 1.7 + 1.0) {
    const double r = throughput(s, 1e9);
    CHECK(r > prev);
    prev = r;
  }
}

TEST_SUITE_END();
