#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "quaysim/detail/text.hpp"
#include "quaysim/errors.hpp"
#include "quaysim/rational.hpp"
#include "quaysim/sim_time.hpp"
#include "quaysim/vessel.hpp"

namespace quaysim {

enum class SimMode : int { Recorded, Aggregate, Detailed };

enum class CalibrationLoss : int { Mape, TotalAbsolute };

inline std::string_view to_string(SimMode mode) {
  switch (mode) {
    case SimMode::Recorded: return "recorded";
    case SimMode::Aggregate: return "aggregate";
    case SimMode::Detailed: return "detailed";
  }
  return "?";
}

inline SimMode parse_mode(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "recorded") return SimMode::Recorded;
  if (lower == "aggregate") return SimMode::Aggregate;
  if (lower == "detailed") return SimMode::Detailed;
  throw InvalidValue("mode '" + std::string(text) + "'");
}

// Service-model knobs. The terminal's own productivity figures are not
// public, so these are the calibration degrees of freedom.
struct ServiceParams {
  Rational crane_rate_moves_per_min{1, 2};
  Rational interference_alpha{9, 10};
  int max_cranes_per_vessel = 4;
  long long moves_per_crane_threshold = 500;
  Rational truck_cycle_min{5};
  Rational yard_crane_service_min{2};

  friend bool operator==(const ServiceParams&, const ServiceParams&) = default;

  // Grid-search tie-break order: field order, ascending.
  friend bool operator<(const ServiceParams& a, const ServiceParams& b) {
    if (a.crane_rate_moves_per_min != b.crane_rate_moves_per_min)
      return a.crane_rate_moves_per_min < b.crane_rate_moves_per_min;
    if (a.interference_alpha != b.interference_alpha)
      return a.interference_alpha < b.interference_alpha;
    if (a.max_cranes_per_vessel != b.max_cranes_per_vessel)
      return a.max_cranes_per_vessel < b.max_cranes_per_vessel;
    if (a.moves_per_crane_threshold != b.moves_per_crane_threshold)
      return a.moves_per_crane_threshold < b.moves_per_crane_threshold;
    if (a.truck_cycle_min != b.truck_cycle_min) return a.truck_cycle_min < b.truck_cycle_min;
    return a.yard_crane_service_min < b.yard_crane_service_min;
  }
};

// Case-study defaults: 1040 m quay, 8 quay cranes, 12 yard cranes, 45
// trucks, epoch 2014-03-03 00:00.
struct ScenarioConfig {
  long long quay_length_m = 1040;
  int quay_cranes = 8;
  int yard_cranes = 12;
  int trucks = 45;
  ServiceParams service;
  Timestamp epoch{2014, 3, 3, 0, 0};
  SimMode mode = SimMode::Aggregate;
  std::uint64_t seed = 0;
  bool allow_overtake = false;
  bool resplit_per_move = false;
  bool stochastic_service = false;
  CalibrationLoss calibration_loss = CalibrationLoss::Mape;
};

namespace detail {

inline bool parse_bool(std::string_view v, std::string_view key) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw InvalidValue(std::string(key) + " = '" + std::string(v) + "' is not a boolean");
}

inline long long parse_ll(std::string_view v, std::string_view key) {
  long long out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size() || v.empty())
    throw InvalidValue(std::string(key) + " = '" + std::string(v) + "' is not an integer");
  return out;
}

inline Rational parse_positive_rational(std::string_view v, std::string_view key) {
  Rational r;
  try {
    r = Rational::parse(v);
  } catch (const Error&) {
    throw InvalidValue(std::string(key) + " = '" + std::string(v) + "' is not a number");
  }
  if (!(r > Rational{0})) throw InvalidValue(std::string(key) + " must be positive");
  return r;
}

}  // namespace detail

// Flat `key = value` document; `#` starts a comment. Absent keys keep the
// case-study defaults. Unknown keys throw in strict mode and are otherwise
// collected into `warnings`.
inline ScenarioConfig parse_config(std::string_view text, bool strict = false,
                                   std::vector<std::string>* warnings = nullptr) {
  ScenarioConfig cfg;
  detail::for_each_line(text, [&](std::string_view line, int line_no) {
    auto hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) return;

    auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw InvalidValue("config line " + std::to_string(line_no) + ": expected key = value");
    std::string key(detail::trim(line.substr(0, eq)));
    std::string_view value = detail::trim(line.substr(eq + 1));

    auto positive_int = [&](int lo = 1) {
      long long v = detail::parse_ll(value, key);
      if (v < lo) throw InvalidValue(key + " must be >= " + std::to_string(lo));
      return v;
    };

    if (key == "quay_length_m") {
      cfg.quay_length_m = positive_int();
    } else if (key == "quay_cranes") {
      cfg.quay_cranes = static_cast<int>(positive_int());
    } else if (key == "yard_cranes") {
      cfg.yard_cranes = static_cast<int>(positive_int());
    } else if (key == "trucks") {
      cfg.trucks = static_cast<int>(positive_int());
    } else if (key == "crane_rate_moves_per_min") {
      cfg.service.crane_rate_moves_per_min = detail::parse_positive_rational(value, key);
    } else if (key == "interference_alpha") {
      auto a = detail::parse_positive_rational(value, key);
      if (a > Rational{1}) throw InvalidValue("interference_alpha must be in (0, 1]");
      cfg.service.interference_alpha = a;
    } else if (key == "max_cranes_per_vessel") {
      cfg.service.max_cranes_per_vessel = static_cast<int>(positive_int());
    } else if (key == "moves_per_crane_threshold") {
      cfg.service.moves_per_crane_threshold = positive_int();
    } else if (key == "truck_cycle_min") {
      cfg.service.truck_cycle_min = detail::parse_positive_rational(value, key);
    } else if (key == "yard_crane_service_min") {
      cfg.service.yard_crane_service_min = detail::parse_positive_rational(value, key);
    } else if (key == "epoch") {
      try {
        cfg.epoch = Timestamp::parse(value);
      } catch (const MalformedTimestamp&) {
        throw InvalidValue("epoch '" + std::string(value) + "'");
      }
    } else if (key == "mode") {
      cfg.mode = parse_mode(value);
    } else if (key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(detail::parse_ll(value, key));
    } else if (key == "allow_overtake") {
      cfg.allow_overtake = detail::parse_bool(value, key);
    } else if (key == "resplit_per_move") {
      cfg.resplit_per_move = detail::parse_bool(value, key);
    } else if (key == "stochastic_service") {
      cfg.stochastic_service = detail::parse_bool(value, key);
    } else if (key == "calibration_loss") {
      if (value == "mape")
        cfg.calibration_loss = CalibrationLoss::Mape;
      else if (value == "total_abs")
        cfg.calibration_loss = CalibrationLoss::TotalAbsolute;
      else
        throw InvalidValue("calibration_loss '" + std::string(value) + "'");
    } else {
      if (strict) throw UnknownKey(key);
      if (warnings) warnings->push_back("unknown config key '" + key + "' ignored");
    }
  });
  return cfg;
}

inline ScenarioConfig load_config(const std::string& path, bool strict = false,
                                  std::vector<std::string>* warnings = nullptr) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot open config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), strict, warnings);
}

// Cross-checks a ship list against the scenario. A vessel longer than the
// quay can never berth and is rejected up front.
inline void validate_scenario(const std::vector<VesselCall>& vessels, const ScenarioConfig& cfg) {
  for (const auto& v : vessels)
    if (v.length_m > cfg.quay_length_m)
      throw VesselLongerThanQuay("ship " + std::to_string(v.id) + " (" +
                                 std::to_string(v.length_m) + " m) exceeds quay " +
                                 std::to_string(cfg.quay_length_m) + " m");
  if (cfg.mode == SimMode::Recorded)
    for (const auto& v : vessels)
      if (!v.recorded_op_start || !v.recorded_op_end)
        throw InvalidValue("recorded mode needs op_start/op_end for ship " +
                           std::to_string(v.id));
}

}  // namespace quaysim
