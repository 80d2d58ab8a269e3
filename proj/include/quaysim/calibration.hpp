#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "quaysim/detail/text.hpp"
#include "quaysim/errors.hpp"
#include "quaysim/kpi.hpp"
#include "quaysim/log_sheet.hpp"
#include "quaysim/rational.hpp"
#include "quaysim/scenario_config.hpp"
#include "quaysim/simulation.hpp"

namespace quaysim {

// Candidate values per service parameter. A missing dimension pins the
// base configuration's value.
struct ParamGrid {
  std::vector<Rational> crane_rate_moves_per_min;
  std::vector<Rational> interference_alpha;
  std::vector<long long> max_cranes_per_vessel;
  std::vector<long long> moves_per_crane_threshold;
  std::vector<Rational> truck_cycle_min;
  std::vector<Rational> yard_crane_service_min;

  std::size_t size() const {
    return crane_rate_moves_per_min.size() * interference_alpha.size() *
           max_cranes_per_vessel.size() * moves_per_crane_threshold.size() *
           truck_cycle_min.size() * yard_crane_service_min.size();
  }
};

namespace detail {

// "0.4" | "0.4, 0.5" | "0.3:1.0:0.05" (inclusive range)
inline std::vector<Rational> parse_grid_values(std::string_view value, std::string_view key) {
  std::vector<Rational> out;
  auto first_colon = value.find(':');
  if (first_colon != std::string_view::npos) {
    auto second_colon = value.find(':', first_colon + 1);
    if (second_colon == std::string_view::npos)
      throw InvalidValue(std::string(key) + ": range needs start:stop:step");
    Rational start = Rational::parse(trim(value.substr(0, first_colon)));
    Rational stop = Rational::parse(trim(value.substr(first_colon + 1, second_colon - first_colon - 1)));
    Rational step = Rational::parse(trim(value.substr(second_colon + 1)));
    if (!(step > Rational{0})) throw InvalidValue(std::string(key) + ": step must be positive");
    for (Rational v = start; v <= stop; v += step) {
      out.push_back(v);
      if (out.size() > 100000) throw InvalidValue(std::string(key) + ": range too large");
    }
    return out;
  }
  for (auto part : split_csv(value)) {
    auto t = trim(part);
    if (t.empty()) throw InvalidValue(std::string(key) + ": empty value");
    out.push_back(Rational::parse(t));
  }
  return out;
}

inline std::vector<long long> to_integers(const std::vector<Rational>& values,
                                          std::string_view key) {
  std::vector<long long> out;
  for (const auto& v : values) {
    if (!v.is_integer()) throw InvalidValue(std::string(key) + " must be integer");
    out.push_back(v.num());
  }
  return out;
}

}  // namespace detail

// Same `key = value` surface as the scenario config, with list/range values.
inline ParamGrid parse_grid(std::string_view text, const ServiceParams& defaults) {
  ParamGrid grid;
  detail::for_each_line(text, [&](std::string_view line, int line_no) {
    auto hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) return;
    auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw InvalidValue("grid line " + std::to_string(line_no) + ": expected key = value");
    std::string key(detail::trim(line.substr(0, eq)));
    auto values = detail::parse_grid_values(detail::trim(line.substr(eq + 1)), key);
    if (values.empty()) throw EmptyGrid(key);

    if (key == "crane_rate_moves_per_min")
      grid.crane_rate_moves_per_min = values;
    else if (key == "interference_alpha")
      grid.interference_alpha = values;
    else if (key == "max_cranes_per_vessel")
      grid.max_cranes_per_vessel = detail::to_integers(values, key);
    else if (key == "moves_per_crane_threshold")
      grid.moves_per_crane_threshold = detail::to_integers(values, key);
    else if (key == "truck_cycle_min")
      grid.truck_cycle_min = values;
    else if (key == "yard_crane_service_min")
      grid.yard_crane_service_min = values;
    else
      throw UnknownKey("grid key '" + key + "'");
  });

  if (grid.crane_rate_moves_per_min.empty())
    grid.crane_rate_moves_per_min = {defaults.crane_rate_moves_per_min};
  if (grid.interference_alpha.empty()) grid.interference_alpha = {defaults.interference_alpha};
  if (grid.max_cranes_per_vessel.empty())
    grid.max_cranes_per_vessel = {defaults.max_cranes_per_vessel};
  if (grid.moves_per_crane_threshold.empty())
    grid.moves_per_crane_threshold = {defaults.moves_per_crane_threshold};
  if (grid.truck_cycle_min.empty()) grid.truck_cycle_min = {defaults.truck_cycle_min};
  if (grid.yard_crane_service_min.empty())
    grid.yard_crane_service_min = {defaults.yard_crane_service_min};
  return grid;
}

inline ParamGrid load_grid(const std::string& path, const ServiceParams& defaults) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot open grid '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_grid(ss.str(), defaults);
}

// Targets file: CSV `vessel_id,target_min`.
inline std::map<int, long long> parse_targets(std::string_view text) {
  std::map<int, long long> targets;
  detail::for_each_line(text, [&](std::string_view line, int line_no) {
    if (detail::trim(line).empty()) return;
    if (line_no == 1 && detail::trim(line) == "vessel_id,target_min") return;
    auto fields = detail::split_csv(line);
    if (fields.size() != 2)
      throw InvalidValue("targets row " + std::to_string(line_no) + ": expected 2 fields");
    long long id = detail::parse_count(fields[0], "vessel_id", line_no);
    long long minutes = detail::parse_count(fields[1], "target_min", line_no);
    if (minutes == 0)
      throw InvalidValue("targets row " + std::to_string(line_no) + ": target_min must be > 0");
    targets[static_cast<int>(id)] = minutes;
  });
  return targets;
}

inline std::map<int, long long> load_targets(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot open targets '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_targets(ss.str());
}

struct CalibrationResult {
  ServiceParams best;
  Rational mape{0};  // MAPE at the best point, whatever the selection loss
  Rational loss{0};  // value of the configured selection loss at the best point
  std::size_t points_evaluated = 0;
  std::size_t points_skipped = 0;  // parameter points whose run never finished
};

// Mean absolute percentage error of simulated service minutes vs targets.
inline Rational mape_against_targets(const KpiReport& report,
                                     const std::map<int, long long>& targets) {
  Rational sum{0};
  for (const auto& row : report.rows) {
    Rational target{targets.at(row.vessel_id)};
    Rational err = Rational{row.service_min} - target;
    if (err < Rational{0}) err = -err;
    sum += err / target;
  }
  return sum / Rational{static_cast<long long>(report.rows.size())};
}

// Alternative loss: total absolute error in minutes.
inline Rational total_abs_against_targets(const KpiReport& report,
                                          const std::map<int, long long>& targets) {
  Rational sum{0};
  for (const auto& row : report.rows) {
    long long err = row.service_min - targets.at(row.vessel_id);
    sum += Rational{err < 0 ? -err : err};
  }
  return sum;
}

// Exhaustive deterministic sweep: every grid point is simulated in the
// configured mode and scored by MAPE. Ties keep the lexicographically
// smallest parameter tuple (the enumeration order).
inline CalibrationResult calibrate(const std::vector<VesselCall>& vessels,
                                   const std::map<int, long long>& targets, const ParamGrid& grid,
                                   const ScenarioConfig& base) {
  if (vessels.empty()) throw InvalidValue("no vessels to calibrate against");
  if (grid.size() == 0) throw EmptyGrid("no parameter points");
  for (const auto& v : vessels)
    if (!targets.count(v.id))
      throw VesselSetMismatch("no target for ship " + std::to_string(v.id));

  CalibrationResult result;
  bool have_best = false;

  for (const auto& rate : grid.crane_rate_moves_per_min)
    for (const auto& alpha : grid.interference_alpha)
      for (long long max_cranes : grid.max_cranes_per_vessel)
        for (long long threshold : grid.moves_per_crane_threshold)
          for (const auto& truck : grid.truck_cycle_min)
            for (const auto& yard : grid.yard_crane_service_min) {
              ServiceParams p;
              p.crane_rate_moves_per_min = rate;
              p.interference_alpha = alpha;
              p.max_cranes_per_vessel = static_cast<int>(max_cranes);
              p.moves_per_crane_threshold = threshold;
              p.truck_cycle_min = truck;
              p.yard_crane_service_min = yard;

              ScenarioConfig cfg = base;
              cfg.service = p;
              ++result.points_evaluated;
              try {
                KpiReport report = build_report(simulate(vessels, cfg), vessels, cfg);
                Rational mape = mape_against_targets(report, targets);
                Rational loss = base.calibration_loss == CalibrationLoss::TotalAbsolute
                                    ? total_abs_against_targets(report, targets)
                                    : mape;
                if (!have_best || loss < result.loss) {
                  have_best = true;
                  result.loss = loss;
                  result.mape = mape;
                  result.best = p;
                }
              } catch (const IncompleteTrace&) {
                ++result.points_skipped;
              }
            }

  if (!have_best) throw EmptyGrid("no parameter point produced a complete run");
  return result;
}

}  // namespace quaysim
