// SPDX-License-Identifier: Apache-2.0
//
// hstbeam: location-aware beam-forming toolkit for high-speed rail links

#include "cli/run_config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <utility>

namespace hstbeam::cli {

namespace {

using nlohmann::json;

constexpr double kPi = 3.14159265358979323846;

const std::map<std::string, std::set<std::string>> kSchema = {
    {"array",
     {"element_count", "beam_count", "spacing_over_lambda", "carrier_frequency_hz", "array_type",
      "beamwidth_constant"}},
    {"geometry", {"h_m", "rail_origin_m"}},
    {"error", {"sigma_m"}},
    {"optimizer", {"p_th", "n_max", "theta_b_rad", "theta_b_deg"}},
    {"traversal", {"speed_mps", "time_step_s", "start_m", "end_m", "seed"}},
    {"sweeps",
     {"theta_points", "theta_min_rad", "theta_max_rad", "sigma_points", "sigma_min_m",
      "sigma_max_m", "p_th_list", "theta_h_points", "theta_h_min_rad", "theta_h_max_rad",
      "target_directivity"}},
    {"codebook", {"angular_resolution_rad"}},
    {"output", {"directory", "precision"}},
};

bool is_power_of_two(std::uint64_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Typed, path-addressed lookups into the merged JSON tree. Every problem is
// recorded against its dotted path; getters fall back so validation can
// keep going and report everything at once.
class Reader {
 public:
  Reader(const json &root, std::vector<std::string> &errors) : root_(root), errors_(errors) {}

  void fail(const std::string &path, const std::string &msg) {
    errors_.push_back(path + ": " + msg);
  }

  const json *find(const std::string &path) const {
    const std::size_t dot = path.find('.');
    const std::string section = path.substr(0, dot);
    const std::string key = path.substr(dot + 1);
    const auto sec = root_.find(section);
    if (sec == root_.end() || !sec->is_object()) return nullptr;
    const auto val = sec->find(key);
    return val == sec->end() ? nullptr : &*val;
  }

  bool present(const std::string &path) const {
    const json *v = find(path);
    return v != nullptr && !v->is_null();
  }

  double number(const std::string &path, double fallback,
                const std::function<bool(double)> &ok, const std::string &domain_msg) {
    const json *v = find(path);
    if (v == nullptr) return fallback;
    if (!v->is_number()) {
      fail(path, "must be a number");
      return fallback;
    }
    const double value = v->get<double>();
    if (!std::isfinite(value) || !ok(value)) {
      fail(path, domain_msg);
      return fallback;
    }
    return value;
  }

  std::optional<double> nullable_number(const std::string &path,
                                        const std::function<bool(double)> &ok,
                                        const std::string &domain_msg) {
    const json *v = find(path);
    if (v == nullptr || v->is_null()) return std::nullopt;
    if (!v->is_number()) {
      fail(path, "must be a number or null");
      return std::nullopt;
    }
    const double value = v->get<double>();
    if (!std::isfinite(value) || !ok(value)) {
      fail(path, domain_msg);
      return std::nullopt;
    }
    return value;
  }

  std::uint64_t unsigned_integer(const std::string &path, std::uint64_t fallback,
                                 const std::function<bool(std::uint64_t)> &ok,
                                 const std::string &domain_msg) {
    const auto value = nullable_unsigned(path, ok, domain_msg, false);
    return value.value_or(fallback);
  }

  std::optional<std::uint64_t> nullable_unsigned(const std::string &path,
                                                 const std::function<bool(std::uint64_t)> &ok,
                                                 const std::string &domain_msg,
                                                 bool allow_null = true) {
    const json *v = find(path);
    if (v == nullptr) return std::nullopt;
    if (v->is_null()) {
      if (!allow_null) fail(path, "must be a nonnegative integer");
      return std::nullopt;
    }
    std::uint64_t value = 0;
    if (v->is_number_unsigned()) {
      value = v->get<std::uint64_t>();
    } else if (v->is_number_integer()) {
      const auto s = v->get<std::int64_t>();
      if (s < 0) {
        fail(path, "must be a nonnegative integer");
        return std::nullopt;
      }
      value = static_cast<std::uint64_t>(s);
    } else if (v->is_number_float()) {
      const double d = v->get<double>();
      if (!std::isfinite(d) || d < 0.0 || d != std::floor(d) || d > 1.8e19) {
        fail(path, "must be a nonnegative integer");
        return std::nullopt;
      }
      value = static_cast<std::uint64_t>(d);
    } else {
      fail(path, "must be a nonnegative integer");
      return std::nullopt;
    }
    if (!ok(value)) {
      fail(path, domain_msg);
      return std::nullopt;
    }
    return value;
  }

  std::string text(const std::string &path, std::string fallback) {
    const json *v = find(path);
    if (v == nullptr) return fallback;
    if (!v->is_string()) {
      fail(path, "must be a string");
      return fallback;
    }
    return v->get<std::string>();
  }

  std::vector<double> number_list(const std::string &path, std::vector<double> fallback,
                                  const std::function<bool(double)> &ok,
                                  const std::string &domain_msg) {
    const json *v = find(path);
    if (v == nullptr) return fallback;
    if (!v->is_array() || v->empty()) {
      fail(path, "must be a nonempty array of numbers");
      return fallback;
    }
    std::vector<double> values;
    values.reserve(v->size());
    for (const auto &item : *v) {
      if (!item.is_number()) {
        fail(path, "must be a nonempty array of numbers");
        return fallback;
      }
      const double value = item.get<double>();
      if (!std::isfinite(value) || !ok(value)) {
        fail(path, domain_msg);
        return fallback;
      }
      values.push_back(value);
    }
    return values;
  }

 private:
  const json &root_;
  std::vector<std::string> &errors_;
};

void check_unknown_keys(const json &root, std::vector<std::string> &errors) {
  for (const auto &[section, value] : root.items()) {
    const auto schema = kSchema.find(section);
    if (schema == kSchema.end()) {
      errors.push_back(section + ": unknown config section");
      continue;
    }
    if (!value.is_object()) {
      errors.push_back(section + ": must be an object");
      continue;
    }
    for (const auto &[key, ignored] : value.items()) {
      (void)ignored;
      if (schema->second.find(key) == schema->second.end())
        errors.push_back(section + "." + key + ": unknown config key");
    }
  }
}

void apply_override(json &root, const std::string &spec, std::vector<std::string> &errors) {
  const std::size_t eq = spec.find('=');
  if (eq == std::string::npos || eq == 0) {
    errors.push_back("override '" + spec + "': expected key=value");
    return;
  }
  const std::string path = spec.substr(0, eq);
  const std::string raw = spec.substr(eq + 1);

  json value = json::parse(raw, nullptr, false);
  if (value.is_discarded()) value = raw;  // bare words become strings

  json *node = &root;
  std::size_t start = 0;
  while (true) {
    const std::size_t dot = path.find('.', start);
    const std::string part = path.substr(start, dot == std::string::npos ? std::string::npos
                                                                         : dot - start);
    if (part.empty()) {
      errors.push_back("override '" + spec + "': empty path segment");
      return;
    }
    if (dot == std::string::npos) {
      (*node)[part] = std::move(value);
      return;
    }
    json &child = (*node)[part];
    if (!child.is_object() && !child.is_null()) {
      errors.push_back("override '" + spec + "': '" + part + "' is not an object");
      return;
    }
    if (child.is_null()) child = json::object();
    node = &child;
    start = dot + 1;
  }
}

}  // namespace

std::optional<RunConfig> load_run_config(const std::optional<std::string> &config_path,
                                         const std::vector<std::string> &overrides,
                                         const std::optional<std::string> &output_override,
                                         std::vector<std::string> &errors) {
  json root = json::object();
  if (config_path) {
    std::ifstream in(*config_path);
    if (!in) {
      errors.push_back("config file '" + *config_path + "': cannot open");
      return std::nullopt;
    }
    try {
      root = json::parse(in);
    } catch (const json::parse_error &e) {
      errors.push_back("config file '" + *config_path + "': " + e.what());
      return std::nullopt;
    }
    if (!root.is_object()) {
      errors.push_back("config file '" + *config_path + "': top level must be an object");
      return std::nullopt;
    }
  }

  for (const std::string &spec : overrides) apply_override(root, spec, errors);
  if (output_override) root["output"]["directory"] = *output_override;
  if (!errors.empty()) return std::nullopt;

  check_unknown_keys(root, errors);
  Reader reader(root, errors);

  const auto positive = [](double v) { return v > 0.0; };
  const auto nonnegative = [](double v) { return v >= 0.0; };
  const auto open_angle = [](double v) { return v > 0.0 && v < kPi; };
  const auto open_unit = [](double v) { return v > 0.0 && v < 1.0; };
  const auto any_value = [](double) { return true; };

  const auto element_count = static_cast<std::uint32_t>(reader.unsigned_integer(
      "array.element_count", 64, [](std::uint64_t v) { return v >= 1 && v <= (1u << 20); },
      "must be an integer in [1, 2^20]"));
  const auto beam_count_opt = reader.nullable_unsigned(
      "array.beam_count", [](std::uint64_t v) { return v >= 1 && v <= (1u << 20); },
      "must be an integer in [1, 2^20]");
  const double spacing_over_lambda = reader.number("array.spacing_over_lambda", 0.5, positive,
                                                   "must be a positive number");
  const double carrier = reader.number("array.carrier_frequency_hz", 2.4e9, positive,
                                       "must be a positive number");
  const std::string type_name = reader.text("array.array_type", "broadside");
  ArrayType array_type = ArrayType::kBroadside;
  if (type_name == "broadside") {
    array_type = ArrayType::kBroadside;
  } else if (type_name == "ordinary_endfire") {
    array_type = ArrayType::kOrdinaryEndFire;
  } else {
    reader.fail("array.array_type", "must be 'broadside' or 'ordinary_endfire'");
  }
  const double beamwidth_constant = reader.number("array.beamwidth_constant", 2.782, positive,
                                                  "must be a positive number");

  const double h_m = reader.number("geometry.h_m", 50.0, positive, "must be a positive number");
  const double rail_origin = reader.number("geometry.rail_origin_m", 0.0, any_value,
                                           "must be a finite number");

  const double sigma = reader.number("error.sigma_m", 1.0, nonnegative,
                                     "must be a nonnegative number");

  const double p_th = reader.number("optimizer.p_th", 0.8, open_unit,
                                    "must lie strictly between 0 and 1");
  const auto n_max = static_cast<std::uint32_t>(reader.unsigned_integer(
      "optimizer.n_max", 1024,
      [](std::uint64_t v) { return v <= (1u << 24) && is_power_of_two(v); },
      "must be a power of two no larger than 2^24"));
  double theta_b = kPi / 4.0;
  const bool has_rad = reader.present("optimizer.theta_b_rad");
  const bool has_deg = reader.present("optimizer.theta_b_deg");
  if (has_rad && has_deg) {
    reader.fail("optimizer.theta_b_deg", "exclusive with optimizer.theta_b_rad");
  } else if (has_deg) {
    const double deg = reader.number("optimizer.theta_b_deg", 45.0,
                                     [](double v) { return v > 0.0 && v < 180.0; },
                                     "must lie strictly between 0 and 180");
    theta_b = deg * kPi / 180.0;
  } else {
    theta_b = reader.number("optimizer.theta_b_rad", kPi / 4.0, open_angle,
                            "must lie strictly between 0 and pi");
  }

  const double speed = reader.number("traversal.speed_mps", 135.0, positive,
                                     "must be a positive number");
  const double time_step = reader.number("traversal.time_step_s", 2e-4, positive,
                                         "must be a positive number");
  const auto start_m = reader.nullable_number("traversal.start_m", any_value,
                                              "must be a finite number or null");
  const auto end_m = reader.nullable_number("traversal.end_m", any_value,
                                            "must be a finite number or null");
  if (start_m && end_m && !(*start_m < *end_m))
    reader.fail("traversal.start_m", "must be less than traversal.end_m");
  const std::uint64_t seed = reader.unsigned_integer(
      "traversal.seed", 12345, [](std::uint64_t) { return true; }, "");

  const auto theta_points = static_cast<std::uint32_t>(reader.unsigned_integer(
      "sweeps.theta_points", 50, [](std::uint64_t v) { return v >= 2 && v <= 1000000; },
      "must be an integer in [2, 1000000]"));
  const auto theta_min = reader.nullable_number("sweeps.theta_min_rad", open_angle,
                                                "must lie strictly between 0 and pi, or null");
  const auto theta_max = reader.nullable_number("sweeps.theta_max_rad", open_angle,
                                                "must lie strictly between 0 and pi, or null");
  if (theta_min && theta_max && !(*theta_min < *theta_max))
    reader.fail("sweeps.theta_min_rad", "must be less than sweeps.theta_max_rad");

  const auto sigma_points = static_cast<std::uint32_t>(reader.unsigned_integer(
      "sweeps.sigma_points", 25, [](std::uint64_t v) { return v >= 2 && v <= 1000000; },
      "must be an integer in [2, 1000000]"));
  const double sigma_min = reader.number("sweeps.sigma_min_m", 0.1, nonnegative,
                                         "must be a nonnegative number");
  const double sigma_max = reader.number("sweeps.sigma_max_m", 10.0, positive,
                                         "must be a positive number");
  if (!(sigma_min < sigma_max))
    reader.fail("sweeps.sigma_min_m", "must be less than sweeps.sigma_max_m");
  const std::vector<double> p_th_list = reader.number_list(
      "sweeps.p_th_list", {0.7, 0.8, 0.9}, open_unit,
      "entries must lie strictly between 0 and 1");

  const auto theta_h_points = static_cast<std::uint32_t>(reader.unsigned_integer(
      "sweeps.theta_h_points", 100, [](std::uint64_t v) { return v >= 2 && v <= 1000000; },
      "must be an integer in [2, 1000000]"));
  const auto theta_h_min = reader.nullable_number("sweeps.theta_h_min_rad", open_angle,
                                                  "must lie strictly between 0 and pi, or null");
  const auto theta_h_max = reader.nullable_number("sweeps.theta_h_max_rad", open_angle,
                                                  "must lie strictly between 0 and pi, or null");
  if (theta_h_min && theta_h_max && !(*theta_h_min < *theta_h_max))
    reader.fail("sweeps.theta_h_min_rad", "must be less than sweeps.theta_h_max_rad");
  const double target_directivity = reader.number("sweeps.target_directivity", 64.0, positive,
                                                  "must be a positive number");

  const auto resolution = reader.nullable_number("codebook.angular_resolution_rad", positive,
                                                 "must be a positive number or null");

  const std::string directory = reader.text("output.directory", "out");
  if (directory.empty()) reader.fail("output.directory", "must be a nonempty string");
  const auto precision = static_cast<int>(reader.unsigned_integer(
      "output.precision", 9, [](std::uint64_t v) { return v >= 1 && v <= 17; },
      "must be an integer in [1, 17]"));

  if (!errors.empty()) return std::nullopt;

  RunConfig run;
  run.array = make_array_config(element_count, spacing_over_lambda, carrier, array_type,
                                beamwidth_constant);
  run.beam_count = beam_count_opt ? static_cast<std::uint32_t>(*beam_count_opt) : element_count;
  run.geometry = {h_m, rail_origin};
  run.error = {sigma};
  run.p_th = p_th;
  run.n_max = n_max;
  run.theta_b = theta_b;

  run.traversal.speed = speed;
  run.traversal.time_step = time_step;
  run.traversal_auto_start = !start_m.has_value();
  run.traversal_auto_end = !end_m.has_value();
  run.traversal.start_position = start_m.value_or(0.0);
  run.traversal.end_position = end_m.value_or(run.traversal.start_position + 1.0);
  run.traversal.error = run.error;
  run.traversal.seed = seed;

  run.theta_points = theta_points;
  run.theta_auto_min = !theta_min.has_value();
  run.theta_auto_max = !theta_max.has_value();
  run.theta_min = theta_min.value_or(0.0);
  run.theta_max = theta_max.value_or(0.0);

  run.sigma_points = sigma_points;
  run.sigma_min = sigma_min;
  run.sigma_max = sigma_max;
  run.p_th_list = p_th_list;

  run.theta_h_points = theta_h_points;
  run.theta_h_auto_min = !theta_h_min.has_value();
  run.theta_h_auto_max = !theta_h_max.has_value();
  run.theta_h_min = theta_h_min.value_or(0.0);
  run.theta_h_max = theta_h_max.value_or(0.0);
  run.target_directivity = target_directivity;

  run.resolution_auto = !resolution.has_value();
  run.angular_resolution = resolution.value_or(0.0);

  run.output_directory = directory;
  run.precision = precision;

  json resolved;
  resolved["array"] = {{"element_count", element_count},
                       {"beam_count", run.beam_count},
                       {"spacing_over_lambda", spacing_over_lambda},
                       {"carrier_frequency_hz", carrier},
                       {"array_type", type_name},
                       {"beamwidth_constant", beamwidth_constant}};
  resolved["geometry"] = {{"h_m", h_m}, {"rail_origin_m", rail_origin}};
  resolved["error"] = {{"sigma_m", sigma}};
  resolved["optimizer"] = {{"p_th", p_th}, {"n_max", n_max}, {"theta_b_rad", theta_b}};
  resolved["traversal"] = {{"speed_mps", speed},
                           {"time_step_s", time_step},
                           {"start_m", start_m ? json(*start_m) : json()},
                           {"end_m", end_m ? json(*end_m) : json()},
                           {"seed", seed}};
  resolved["sweeps"] = {{"theta_points", theta_points},
                        {"theta_min_rad", theta_min ? json(*theta_min) : json()},
                        {"theta_max_rad", theta_max ? json(*theta_max) : json()},
                        {"sigma_points", sigma_points},
                        {"sigma_min_m", sigma_min},
                        {"sigma_max_m", sigma_max},
                        {"p_th_list", p_th_list},
                        {"theta_h_points", theta_h_points},
                        {"theta_h_min_rad", theta_h_min ? json(*theta_h_min) : json()},
                        {"theta_h_max_rad", theta_h_max ? json(*theta_h_max) : json()},
                        {"target_directivity", target_directivity}};
  resolved["codebook"] = {
      {"angular_resolution_rad", resolution ? json(*resolution) : json()}};
  resolved["output"] = {{"directory", directory}, {"precision", precision}};
  run.resolved = std::move(resolved);
  return run;
}

}  // namespace hstbeam::cli
