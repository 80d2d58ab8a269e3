#pragma once

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "quaysim/detail/text.hpp"
#include "quaysim/errors.hpp"
#include "quaysim/rational.hpp"
#include "quaysim/scenario_config.hpp"
#include "quaysim/simulation.hpp"
#include "quaysim/vessel.hpp"

namespace quaysim {

inline constexpr std::string_view kKpiHeader =
    "vessel_id,teu,moves,wait_min,service_min,turnaround_min,cranes_used";

struct KpiRow {
  int vessel_id = 0;
  long long teu = 0;
  long long moves = 0;
  SimTime berth_time = 0;
  SimTime service_start = 0;
  SimTime service_end = 0;
  long long wait_min = 0;
  long long service_min = 0;
  long long turnaround_min = 0;
  int cranes_used = 0;

  friend bool operator==(const KpiRow&, const KpiRow&) = default;
};

struct KpiReport {
  std::vector<KpiRow> rows;  // ordered by vessel_id
  long long total_service_min = 0;
  long long total_teu = 0;
  long long total_moves = 0;
  Rational utilization_quay_cranes{0};
  Rational utilization_yard_cranes{0};
  Rational utilization_trucks{0};
};

// Turns a finished run into per-vessel KPIs. Sums are integer arithmetic,
// utilizations exact rationals; nothing here can drift.
inline KpiReport build_report(const SimulationResult& result,
                              const std::vector<VesselCall>& vessels,
                              const ScenarioConfig& = {}) {
  if (result.pending_work)
    throw IncompleteTrace("run left pending work; no KPI report for a partial week");

  std::map<int, const VesselCall*> by_id;
  for (const auto& v : vessels) by_id[v.id] = &v;

  KpiReport report;
  for (const auto& o : result.outcomes) {
    if (!o.completed || !o.berth_time || !o.service_end)
      throw IncompleteTrace("ship " + std::to_string(o.vessel_id) + " never completed");
    const VesselCall& call = *by_id.at(o.vessel_id);
    KpiRow row;
    row.vessel_id = o.vessel_id;
    row.teu = teu(call);
    row.moves = total_moves(call);
    row.berth_time = *o.berth_time;
    row.service_start = *o.berth_time;  // operations begin at berthing
    row.service_end = *o.service_end;
    row.wait_min = *o.berth_time - call.arrival;
    row.service_min = row.service_end - row.service_start;
    row.turnaround_min = row.wait_min + row.service_min;
    row.cranes_used = o.peak_cranes;
    report.rows.push_back(row);
    report.total_service_min += row.service_min;
    report.total_teu += row.teu;
    report.total_moves += row.moves;
  }
  std::sort(report.rows.begin(), report.rows.end(),
            [](const KpiRow& a, const KpiRow& b) { return a.vessel_id < b.vessel_id; });

  auto utilization = [&](const PoolUsage& u) {
    if (result.makespan == 0 || u.capacity == 0) return Rational{0};
    return Rational{u.busy_minutes} / (Rational{u.capacity} * Rational{result.makespan});
  };
  report.utilization_quay_cranes = utilization(result.quay_crane_usage);
  report.utilization_yard_cranes = utilization(result.yard_crane_usage);
  report.utilization_trucks = utilization(result.truck_usage);
  return report;
}

struct VesselDelta {
  int vessel_id = 0;
  long long baseline_min = 0;
  long long candidate_min = 0;
  long long delta_min = 0;  // candidate - baseline
};

struct ComparisonResult {
  long long baseline_total_min = 0;
  long long candidate_total_min = 0;
  Rational reduction_fraction{0};  // 1 - candidate/baseline
  std::vector<VesselDelta> deltas;

  // Percent with one decimal, half-up: 0.512465 -> "51.2%".
  std::string percent() const {
    long long tenths = (reduction_fraction * Rational{1000}).round_half_up();
    std::string sign = tenths < 0 ? "-" : "";
    if (tenths < 0) tenths = -tenths;
    return sign + std::to_string(tenths / 10) + "." + std::to_string(tenths % 10) + "%";
  }
};

inline ComparisonResult compare(const KpiReport& baseline, const KpiReport& candidate) {
  if (baseline.rows.size() != candidate.rows.size())
    throw VesselSetMismatch("baseline has " + std::to_string(baseline.rows.size()) +
                            " vessels, candidate " + std::to_string(candidate.rows.size()));
  ComparisonResult out;
  for (std::size_t i = 0; i < baseline.rows.size(); ++i) {
    const KpiRow& b = baseline.rows[i];
    const KpiRow& c = candidate.rows[i];
    if (b.vessel_id != c.vessel_id)
      throw VesselSetMismatch("ship " + std::to_string(b.vessel_id) + " vs ship " +
                              std::to_string(c.vessel_id));
    out.deltas.push_back({b.vessel_id, b.service_min, c.service_min, c.service_min - b.service_min});
  }
  out.baseline_total_min = baseline.total_service_min;
  out.candidate_total_min = candidate.total_service_min;
  if (out.baseline_total_min > 0)
    out.reduction_fraction =
        Rational{1} - Rational{out.candidate_total_min} / Rational{out.baseline_total_min};
  return out;
}

// ---- KPI CSV (the `simulate --out` format; compare/plot read it back) ----

inline void write_kpi_csv(const KpiReport& report, std::ostream& out) {
  out << kKpiHeader << '\n';
  for (const auto& r : report.rows)
    out << r.vessel_id << ',' << r.teu << ',' << r.moves << ',' << r.wait_min << ','
        << r.service_min << ',' << r.turnaround_min << ',' << r.cranes_used << '\n';
}

inline KpiReport read_kpi_csv(std::string_view text) {
  KpiReport report;
  detail::for_each_line(text, [&](std::string_view line, int line_no) {
    if (detail::trim(line).empty()) return;
    if (line_no == 1) {
      if (detail::trim(line) != kKpiHeader)
        throw InvalidValue("KPI header mismatch; expected '" + std::string(kKpiHeader) + "'");
      return;
    }
    auto fields = detail::split_csv(line);
    if (fields.size() != 7)
      throw InvalidValue("KPI row " + std::to_string(line_no) + ": expected 7 fields");
    auto num = [&](std::string_view f) {
      long long v = 0;
      auto t = detail::trim(f);
      auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
      if (ec != std::errc{} || ptr != t.data() + t.size())
        throw InvalidValue("KPI row " + std::to_string(line_no) + ": bad number '" +
                           std::string(f) + "'");
      return v;
    };
    KpiRow r;
    r.vessel_id = static_cast<int>(num(fields[0]));
    r.teu = num(fields[1]);
    r.moves = num(fields[2]);
    r.wait_min = num(fields[3]);
    r.service_min = num(fields[4]);
    r.turnaround_min = num(fields[5]);
    r.cranes_used = static_cast<int>(num(fields[6]));
    report.rows.push_back(r);
    report.total_service_min += r.service_min;
    report.total_teu += r.teu;
    report.total_moves += r.moves;
  });
  std::sort(report.rows.begin(), report.rows.end(),
            [](const KpiRow& a, const KpiRow& b) { return a.vessel_id < b.vessel_id; });
  return report;
}

inline KpiReport load_kpi_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot open KPI report '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return read_kpi_csv(ss.str());
}

}  // namespace quaysim
