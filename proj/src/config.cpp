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

#include "fsolink/config.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <set>

#include "fsolink/error.hpp"

namespace fsolink {

namespace {

using nlohmann::json;

std::string join_key(const std::string& base, const std::string& key) {
  return base.empty() ? key : base + "." + key;
}

// Tracks which keys of an object were consumed; anything left over is
// reported as an unknown key (catching typos in physics parameters).
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_, "expected a JSON object");
  }

  const json* find(const std::string& key) {
    seen_.insert(key);
    const auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  bool has_value(const std::string& key) {
    const json* v = find(key);
    return v != nullptr && !v->is_null();
  }

  double number(const std::string& key, double fallback) {
    const json* v = find(key);
    if (v == nullptr || v->is_null()) return fallback;
    if (!v->is_number()) throw ConfigError(join_key(path_, key), "expected a number");
    return v->get<double>();
  }

  std::int64_t integer(const std::string& key, std::int64_t fallback) {
    const json* v = find(key);
    if (v == nullptr || v->is_null()) return fallback;
    if (!v->is_number_integer() && !v->is_number_unsigned()) {
      throw ConfigError(join_key(path_, key), "expected an integer");
    }
    return v->get<std::int64_t>();
  }

  std::uint64_t unsigned_integer(const std::string& key, std::uint64_t fallback) {
    const json* v = find(key);
    if (v == nullptr || v->is_null()) return fallback;
    if (!v->is_number_unsigned() && !(v->is_number_integer() && v->get<std::int64_t>() >= 0)) {
      throw ConfigError(join_key(path_, key), "expected a non-negative integer");
    }
    return v->get<std::uint64_t>();
  }

  std::string text(const std::string& key, const std::string& fallback) {
    const json* v = find(key);
    if (v == nullptr || v->is_null()) return fallback;
    if (!v->is_string()) throw ConfigError(join_key(path_, key), "expected a string");
    return v->get<std::string>();
  }

  std::vector<double> number_array(const std::string& key,
                                   std::vector<double> fallback) {
    const json* v = find(key);
    if (v == nullptr || v->is_null()) return fallback;
    if (!v->is_array()) throw ConfigError(join_key(path_, key), "expected an array");
    std::vector<double> out;
    out.reserve(v->size());
    for (const auto& e : *v) {
      if (!e.is_number()) {
        throw ConfigError(join_key(path_, key), "expected an array of numbers");
      }
      out.push_back(e.get<double>());
    }
    return out;
  }

  std::string key_path(const std::string& key) const {
    return join_key(path_, key);
  }

  void done() const {
    for (const auto& item : j_.items()) {
      if (!seen_.count(item.key())) {
        throw ConfigError(join_key(path_, item.key()), "unknown key");
      }
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

std::string resolve_path(const std::string& base_dir, const std::string& path) {
  const std::filesystem::path p(path);
  if (p.is_absolute() || base_dir.empty()) return path;
  return (std::filesystem::path(base_dir) / p).string();
}

PerturbationSource parse_axis_source(ObjectReader& r, const std::string& axis,
                                     const std::string& base_dir,
                                     const PerturbationSource& fallback) {
  const std::string model_key = "ar_model_" + axis;
  const std::string trace_key = "trace_file_" + axis;
  const json* model = r.find(model_key);
  const json* trace = r.find(trace_key);
  const bool have_model = model != nullptr && !model->is_null();
  const bool have_trace = trace != nullptr && !trace->is_null();
  if (have_model && have_trace) {
    throw ConfigError(r.key_path(model_key),
                      "give either an AR model or a trace file, not both");
  }
  if (have_model) {
    return PerturbationSource::from_model(
        ar_model_from_json(*model, r.key_path(model_key)));
  }
  if (have_trace) {
    if (!trace->is_string()) {
      throw ConfigError(r.key_path(trace_key), "expected a file path string");
    }
    return PerturbationSource::from_file(
        resolve_path(base_dir, trace->get<std::string>()));
  }
  // Explicit null disables the axis; an absent key keeps the default.
  if ((model != nullptr && model->is_null()) ||
      (trace != nullptr && trace->is_null())) {
    return PerturbationSource::none();
  }
  return fallback;
}

VehicleConfig parse_vehicle(const json& j, const std::string& path,
                            const std::string& base_dir,
                            const VehicleConfig& fallback) {
  ObjectReader r(j, path);
  const double length = r.number("length_m", fallback.body.length_m);
  const double lateral = r.number("rest_lateral_m", fallback.body.rest_lateral_m);
  const double height = r.number("rest_height_m", fallback.body.rest_height_m);
  VehicleConfig out;
  try {
    out.body = VehicleStatic(length, lateral, height);
  } catch (const DomainError& e) {
    throw ConfigError(path, e.what());
  }
  out.perturbation_x = parse_axis_source(r, "x", base_dir, fallback.perturbation_x);
  out.perturbation_y = parse_axis_source(r, "y", base_dir, fallback.perturbation_y);
  r.done();
  return out;
}

Quantizer parse_quantizer(const json& j, const std::string& path) {
  ObjectReader r(j, path);
  const auto bits = static_cast<int>(r.integer("bits", 16));
  const double range = r.number("range_m", 0.1);
  const std::string mode = r.text("mode", "MidRise");
  r.done();
  Quantizer::Mode m;
  if (mode == "MidRise") {
    m = Quantizer::Mode::MidRise;
  } else if (mode == "Identity") {
    m = Quantizer::Mode::Identity;
  } else {
    throw ConfigError(join_key(path, "mode"),
                      "expected 'MidRise' or 'Identity'");
  }
  try {
    return Quantizer(bits, range, m);
  } catch (const DomainError& e) {
    throw ConfigError(path, e.what());
  }
}

CompensationStrategy parse_strategy(const json& j, const std::string& path,
                                    const CompensationStrategy& fallback) {
  ObjectReader r(j, path);
  const std::string kind = r.text("kind", "");
  CompensationStrategy out = fallback;
  if (kind == "None") {
    out.kind = CompensationStrategy::Kind::None;
  } else if (kind == "Static") {
    out.kind = CompensationStrategy::Kind::Static;
  } else if (kind == "Dynamic") {
    out.kind = CompensationStrategy::Kind::Dynamic;
  } else if (!kind.empty()) {
    throw ConfigError(join_key(path, "kind"),
                      "expected 'None', 'Static' or 'Dynamic'");
  }
  out.delta_t_s = r.number("delta_t_s", fallback.delta_t_s);
  if (!(out.delta_t_s > 0.0)) {
    throw ConfigError(join_key(path, "delta_t_s"), "must be positive");
  }
  if (const json* q = r.find("quantizer"); q != nullptr && !q->is_null()) {
    out.quantizer = parse_quantizer(*q, join_key(path, "quantizer"));
  }
  r.done();
  return out;
}

}  // namespace

nlohmann::json ar_model_to_json(const ARModel& model) {
  return json{{"order", model.order()},
              {"coefficients", model.coefficients()},
              {"noise_std", model.noise_std()},
              {"sample_rate_hz", model.sample_rate_hz()}};
}

ARModel ar_model_from_json(const nlohmann::json& j, const std::string& key) {
  ObjectReader r(j, key);
  const auto order = static_cast<int>(r.integer("order", -1));
  const std::vector<double> coeffs = r.number_array("coefficients", {});
  const double noise_std = r.number("noise_std", -1.0);
  const double fs = r.number("sample_rate_hz", -1.0);
  r.done();
  if (order < 0) throw ConfigError(join_key(key, "order"), "missing");
  if (static_cast<std::size_t>(order) != coeffs.size()) {
    throw ConfigError(join_key(key, "coefficients"),
                      "length must equal 'order'");
  }
  try {
    return ARModel(coeffs, noise_std, fs);
  } catch (const DomainError& e) {
    throw ConfigError(key, e.what());
  }
}

ScenarioConfig default_config() {
  ScenarioConfig cfg;
  cfg.vehicle1.body = VehicleStatic(4.0, 0.0, 1.4);
  cfg.vehicle1.perturbation_x = PerturbationSource::none();
  cfg.vehicle1.perturbation_y =
      PerturbationSource::from_model(default_vertical_model());
  cfg.vehicle2.body = VehicleStatic(4.0, 0.0, 1.7);
  cfg.vehicle2.perturbation_x = PerturbationSource::none();
  cfg.vehicle2.perturbation_y =
      PerturbationSource::from_model(default_vertical_model());
  cfg.beam = BeamConfig{1550e-9, 1e-3, 1e-3};
  cfg.rx = ReceiverParams(Aperture(1e-3, 1e-3), 1e-7, 0.8, 1550e-9, 50e-9,
                          20e-12, 1e9);
  cfg.strategy = CompensationStrategy::dynamic(0.02, Quantizer{});
  cfg.laser_array = LaserArray(5, 20.0 * 3.14159265358979323846 / 180.0);
  cfg.z_list_m.clear();
  for (int z = 5; z <= 100; z += 5) cfg.z_list_m.push_back(z);
  cfg.p0_list_w = {1e-3, 1e-2};
  cfg.duration_s = 200.0;
  cfg.timestep_s = 1e-3;
  cfg.seed = 1;
  cfg.i_b_w_per_m2 = 5.58;
  cfg.power_method = PowerMethod::ExactIntegral;
  cfg.dy_grid_m.clear();
  for (int mm = 0; mm <= 100; ++mm) cfg.dy_grid_m.push_back(mm * 1e-3);
  cfg.backend = kern::Backend::Auto;
  return cfg;
}

ScenarioConfig config_from_json(const nlohmann::json& j,
                                const std::string& base_dir) {
  const ScenarioConfig defaults = default_config();
  ScenarioConfig cfg = defaults;
  ObjectReader r(j, "");

  if (const json* v = r.find("vehicle1"); v != nullptr && !v->is_null()) {
    cfg.vehicle1 = parse_vehicle(*v, "vehicle1", base_dir, defaults.vehicle1);
  }
  if (const json* v = r.find("vehicle2"); v != nullptr && !v->is_null()) {
    cfg.vehicle2 = parse_vehicle(*v, "vehicle2", base_dir, defaults.vehicle2);
  }
  if (const json* v = r.find("beam"); v != nullptr && !v->is_null()) {
    ObjectReader b(*v, "beam");
    cfg.beam.wavelength_m = b.number("wavelength_m", defaults.beam.wavelength_m);
    cfg.beam.waist_x_m = b.number("waist_x_m", defaults.beam.waist_x_m);
    cfg.beam.waist_y_m = b.number("waist_y_m", defaults.beam.waist_y_m);
    b.done();
  }
  if (const json* v = r.find("rx"); v != nullptr && !v->is_null()) {
    ObjectReader x(*v, "rx");
    Aperture ap = defaults.rx.aperture;
    if (const json* a = x.find("aperture"); a != nullptr && !a->is_null()) {
      ObjectReader ar(*a, "rx.aperture");
      const double lx = ar.number("len_x_m", ap.len_x_m);
      const double ly = ar.number("len_y_m", ap.len_y_m);
      ar.done();
      try {
        ap = Aperture(lx, ly);
      } catch (const DomainError& e) {
        throw ConfigError("rx.aperture", e.what());
      }
    }
    const double pd = x.number("pd_area_m2", defaults.rx.pd_area_m2);
    const double eta = x.number("responsivity_a_per_w", defaults.rx.responsivity_a_per_w);
    const double fc = x.number("filter_center_m", defaults.rx.filter_center_m);
    const double fb = x.number("filter_bw_m", defaults.rx.filter_bw_m);
    const double nep = x.number("nep_w_per_sqrthz", defaults.rx.nep_w_per_sqrthz);
    const double bw = x.number("bandwidth_hz", defaults.rx.bandwidth_hz);
    x.done();
    try {
      cfg.rx = ReceiverParams(ap, pd, eta, fc, fb, nep, bw);
    } catch (const DomainError& e) {
      throw ConfigError("rx", e.what());
    }
  }
  if (const json* v = r.find("strategy"); v != nullptr && !v->is_null()) {
    cfg.strategy = parse_strategy(*v, "strategy", defaults.strategy);
  }
  if (const json* v = r.find("laser_array"); v != nullptr && !v->is_null()) {
    ObjectReader la(*v, "laser_array");
    const auto n = static_cast<int>(la.integer("n_lasers", defaults.laser_array.n_lasers));
    const double spacing =
        la.number("boresight_spacing_rad", defaults.laser_array.boresight_spacing_rad);
    const double range =
        la.number("mems_range_rad", defaults.laser_array.mems_range_rad);
    la.done();
    try {
      cfg.laser_array = LaserArray(n, spacing, range);
    } catch (const DomainError& e) {
      throw ConfigError("laser_array", e.what());
    }
  }

  cfg.z_list_m = r.number_array("z_list_m", defaults.z_list_m);
  cfg.p0_list_w = r.number_array("p0_list_w", defaults.p0_list_w);
  cfg.duration_s = r.number("duration_s", defaults.duration_s);
  cfg.timestep_s = r.number("timestep_s", defaults.timestep_s);
  cfg.seed = r.unsigned_integer("seed", defaults.seed);
  cfg.dy_grid_m = r.number_array("dy_grid_m", defaults.dy_grid_m);

  const bool have_ib = r.has_value("i_b_w_per_m2");
  const bool have_spectrum = r.has_value("spectrum_file");
  if (have_ib && have_spectrum) {
    throw ConfigError("i_b_w_per_m2",
                      "give either a constant irradiance or a spectrum_file, not both");
  }
  if (have_spectrum) {
    cfg.spectrum_file = resolve_path(base_dir, r.text("spectrum_file", ""));
    try {
      const SolarSpectrum spectrum = SolarSpectrum::load_csv(cfg.spectrum_file);
      cfg.i_b_w_per_m2 = background_irradiance(spectrum, cfg.rx.filter_center_m,
                                               cfg.rx.filter_bw_m);
    } catch (const DomainError& e) {
      throw ConfigError("spectrum_file", e.what());
    }
  } else {
    cfg.i_b_w_per_m2 = r.number("i_b_w_per_m2", defaults.i_b_w_per_m2);
  }

  const std::string method = r.text("power_method", "");
  if (method == "ExactIntegral") {
    cfg.power_method = PowerMethod::ExactIntegral;
  } else if (method == "PointApprox") {
    cfg.power_method = PowerMethod::PointApprox;
  } else if (!method.empty()) {
    throw ConfigError("power_method",
                      "expected 'ExactIntegral' or 'PointApprox'");
  }

  const std::string backend = r.text("backend", "");
  if (!backend.empty()) {
    try {
      cfg.backend = kern::backend_from_name(backend);
    } catch (const DomainError& e) {
      throw ConfigError("backend", e.what());
    }
  }

  r.done();
  try {
    cfg.validate();
  } catch (const DomainError& e) {
    throw ConfigError("<config>", e.what());
  }
  return cfg;
}

ScenarioConfig load_config(const std::string& path,
                           std::optional<std::uint64_t> seed_override) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("<config>", std::string("JSON parse error: ") + e.what());
  }
  const std::string base_dir =
      std::filesystem::path(path).parent_path().string();
  ScenarioConfig cfg = config_from_json(j, base_dir);
  if (seed_override) {
    cfg.seed = *seed_override;
  }
  return cfg;
}

nlohmann::json resolved_config_json(const ScenarioConfig& cfg) {
  const auto source_json = [](const PerturbationSource& s, json& vehicle,
                              const std::string& axis) {
    if (s.kind == PerturbationSource::Kind::Model) {
      vehicle["ar_model_" + axis] = ar_model_to_json(*s.model);
    } else if (s.kind == PerturbationSource::Kind::TraceFile) {
      vehicle["trace_file_" + axis] = s.trace_file;
    } else {
      vehicle["ar_model_" + axis] = nullptr;
    }
  };
  const auto vehicle_json = [&](const VehicleConfig& v) {
    json out{{"length_m", v.body.length_m},
             {"rest_lateral_m", v.body.rest_lateral_m},
             {"rest_height_m", v.body.rest_height_m}};
    source_json(v.perturbation_x, out, "x");
    source_json(v.perturbation_y, out, "y");
    return out;
  };

  const char* kind = "Static";
  if (cfg.strategy.kind == CompensationStrategy::Kind::None) kind = "None";
  if (cfg.strategy.kind == CompensationStrategy::Kind::Dynamic) kind = "Dynamic";

  json j{
      {"vehicle1", vehicle_json(cfg.vehicle1)},
      {"vehicle2", vehicle_json(cfg.vehicle2)},
      {"beam",
       {{"wavelength_m", cfg.beam.wavelength_m},
        {"waist_x_m", cfg.beam.waist_x_m},
        {"waist_y_m", cfg.beam.waist_y_m}}},
      {"rx",
       {{"aperture",
         {{"len_x_m", cfg.rx.aperture.len_x_m},
          {"len_y_m", cfg.rx.aperture.len_y_m}}},
        {"pd_area_m2", cfg.rx.pd_area_m2},
        {"responsivity_a_per_w", cfg.rx.responsivity_a_per_w},
        {"filter_center_m", cfg.rx.filter_center_m},
        {"filter_bw_m", cfg.rx.filter_bw_m},
        {"nep_w_per_sqrthz", cfg.rx.nep_w_per_sqrthz},
        {"bandwidth_hz", cfg.rx.bandwidth_hz}}},
      {"strategy",
       {{"kind", kind},
        {"delta_t_s", cfg.strategy.delta_t_s},
        {"quantizer",
         {{"bits", cfg.strategy.quantizer.bits},
          {"range_m", cfg.strategy.quantizer.range_m},
          {"mode", cfg.strategy.quantizer.mode == Quantizer::Mode::MidRise
                       ? "MidRise"
                       : "Identity"}}}}},
      {"laser_array",
       {{"n_lasers", cfg.laser_array.n_lasers},
        {"boresight_spacing_rad", cfg.laser_array.boresight_spacing_rad},
        {"mems_range_rad", cfg.laser_array.mems_range_rad}}},
      {"z_list_m", cfg.z_list_m},
      {"p0_list_w", cfg.p0_list_w},
      {"duration_s", cfg.duration_s},
      {"timestep_s", cfg.timestep_s},
      {"seed", cfg.seed},
      {"i_b_w_per_m2", cfg.i_b_w_per_m2},
      {"power_method", cfg.power_method == PowerMethod::ExactIntegral
                           ? "ExactIntegral"
                           : "PointApprox"},
      {"dy_grid_m", cfg.dy_grid_m},
      {"backend", kern::backend_name(cfg.backend)},
  };
  if (!cfg.spectrum_file.empty()) j["spectrum_file"] = cfg.spectrum_file;
  return j;
}

std::string config_hash(const ScenarioConfig& cfg) {
  const std::string dump = resolved_config_json(cfg).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a 64
  for (const unsigned char c : dump) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  static const char* hex = "0123456789abcdef";
  for (int i = 15; i >= 0; --i) {
    buf[i] = hex[h & 0xf];
    h >>= 4;
  }
  buf[16] = '\0';
  return std::string(buf);
}

}  // namespace fsolink
