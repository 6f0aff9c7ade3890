#pragma once
//
// Scenario configuration: one flat key/value description of a Monte Carlo
// experiment (network size, powers, mismatch level, sweep axis, seeding).
// Files use `key = value` lines with '#' comments; a comma-separated value
// turns the field into the experiment's sweep axis. Unknown keys are
// rejected.

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lrcc/estimator.hpp"

namespace lrcc::harness {

struct ScenarioConfig {
  int M = 8;
  int K = 3;
  double rho = 2.0;          // path-loss exponent
  double L_db = 10.0;        // reference path-loss gain at the destination
  double sigma_s_db = 3.0;   // shadowing spread
  std::vector<double> eps_max = {0.2};
  std::vector<double> P_T_dbw = {1.0};
  std::vector<double> snr_db = {10.0};
  double inr_db = 10.0;
  double interferer_power_ratio = 1.0;  // stronger over weaker; 1 = equal
  int snapshots = 100;
  int trials = 200;
  std::uint64_t seed = 1;
  estimator::CsiMode mode = estimator::CsiMode::kInstantaneous;
  std::vector<std::string> methods = {"lrcc", "perfect_csi", "non_robust"};
};

inline const std::vector<std::string>& known_methods() {
  static const std::vector<std::string> kMethods = {"lrcc", "perfect_csi",
                                                    "non_robust"};
  return kMethods;
}

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

inline double parse_double(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double v = std::stod(value, &used);
  if (used != value.size())
    throw std::invalid_argument("config key '" + key + "': bad number '" +
                                value + "'");
  return v;
}

inline std::vector<double> parse_double_list(const std::string& key,
                                             const std::string& value) {
  std::vector<double> out;
  for (const std::string& item : split(value, ','))
    out.push_back(parse_double(key, item));
  if (out.empty())
    throw std::invalid_argument("config key '" + key + "': empty list");
  return out;
}

inline int parse_int(const std::string& key, const std::string& value) {
  double v = parse_double(key, value);
  int i = static_cast<int>(v);
  if (static_cast<double>(i) != v)
    throw std::invalid_argument("config key '" + key + "': expected integer");
  return i;
}

}  // namespace detail

// Applies `key = value` assignments from config text on top of `config`.
inline ScenarioConfig parse_scenario_config(const std::string& text,
                                            ScenarioConfig config = {}) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string stripped = line.substr(0, line.find('#'));
    stripped = detail::trim(stripped);
    if (stripped.empty()) continue;
    std::size_t eq = stripped.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected 'key = value'");
    std::string key = detail::trim(stripped.substr(0, eq));
    std::string value = detail::trim(stripped.substr(eq + 1));
    if (key == "M") {
      config.M = detail::parse_int(key, value);
    } else if (key == "K") {
      config.K = detail::parse_int(key, value);
    } else if (key == "rho") {
      config.rho = detail::parse_double(key, value);
    } else if (key == "L_db") {
      config.L_db = detail::parse_double(key, value);
    } else if (key == "sigma_s_db") {
      config.sigma_s_db = detail::parse_double(key, value);
    } else if (key == "eps_max") {
      config.eps_max = detail::parse_double_list(key, value);
    } else if (key == "P_T_dbw") {
      config.P_T_dbw = detail::parse_double_list(key, value);
    } else if (key == "snr_db") {
      config.snr_db = detail::parse_double_list(key, value);
    } else if (key == "inr_db") {
      config.inr_db = detail::parse_double(key, value);
    } else if (key == "interferer_power_ratio") {
      config.interferer_power_ratio = detail::parse_double(key, value);
    } else if (key == "snapshots") {
      config.snapshots = detail::parse_int(key, value);
    } else if (key == "trials") {
      config.trials = detail::parse_int(key, value);
    } else if (key == "seed") {
      config.seed = static_cast<std::uint64_t>(std::stoull(value));
    } else if (key == "mode") {
      if (value == "instantaneous")
        config.mode = estimator::CsiMode::kInstantaneous;
      else if (value == "statistics")
        config.mode = estimator::CsiMode::kSecondOrderStatistics;
      else
        throw std::invalid_argument(
            "config key 'mode': expected 'instantaneous' or 'statistics', got '" +
            value + "'");
    } else if (key == "methods") {
      config.methods = detail::split(value, ',');
    } else {
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": unknown key '" + key + "'");
    }
  }
  return config;
}

inline ScenarioConfig load_scenario_config(const std::string& path,
                                           ScenarioConfig base = {}) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open config file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario_config(buffer.str(), std::move(base));
}

// Returns one message per offending field; empty means valid.
inline std::vector<std::string> validate(const ScenarioConfig& c) {
  std::vector<std::string> errors;
  if (c.M < 1) errors.push_back("M: must be >= 1");
  if (c.K < 1) errors.push_back("K: must be >= 1");
  if (c.rho < 2.0 || c.rho > 5.0) errors.push_back("rho: must lie in [2, 5]");
  if (c.sigma_s_db < 0.0) errors.push_back("sigma_s_db: must be >= 0");
  if (c.trials < 1) errors.push_back("trials: must be >= 1");
  if (c.snapshots < 1) errors.push_back("snapshots: must be >= 1");
  if (c.interferer_power_ratio <= 0.0)
    errors.push_back("interferer_power_ratio: must be > 0");
  if (c.interferer_power_ratio != 1.0 && c.K != 3)
    errors.push_back(
        "interferer_power_ratio: a ratio != 1 requires exactly two "
        "interferers (K = 3)");
  for (double e : c.eps_max)
    if (e <= 0.0) errors.push_back("eps_max: values must be > 0");
  int sweeps = (c.eps_max.size() > 1) + (c.P_T_dbw.size() > 1) +
               (c.snr_db.size() > 1);
  if (sweeps > 1)
    errors.push_back(
        "eps_max/P_T_dbw/snr_db: at most one field may carry a sweep");
  if (c.methods.empty()) errors.push_back("methods: at least one required");
  for (const std::string& m : c.methods) {
    bool known = false;
    for (const std::string& k : known_methods()) known |= (m == k);
    if (!known) errors.push_back("methods: unknown method '" + m + "'");
  }
  return errors;
}

inline void require_valid(const ScenarioConfig& c) {
  std::vector<std::string> errors = validate(c);
  if (errors.empty()) return;
  std::string msg = "invalid scenario config:";
  for (const std::string& e : errors) msg += "\n  - " + e;
  throw std::invalid_argument(msg);
}

}  // namespace lrcc::harness
