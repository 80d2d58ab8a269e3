#pragma once

#include <charconv>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "quaysim/detail/text.hpp"
#include "quaysim/errors.hpp"
#include "quaysim/sim_time.hpp"
#include "quaysim/vessel.hpp"

namespace quaysim {

inline constexpr std::string_view kLogSheetHeader =
    "ship_no,ship_name,agent,length_m,arrival,op_start,op_end,"
    "imp_20,imp_40,exp_20,exp_40,service_min,berth_pos_m";

// One raw line of the wide CSV layout, before model validation.
struct LogSheetRow {
  int ship_no = 0;
  std::string ship_name;
  std::string agent;
  long long length_m = 0;
  std::string arrival;
  std::string op_start;
  std::string op_end;
  long long imp_20 = 0, imp_40 = 0, exp_20 = 0, exp_40 = 0;
  std::optional<long long> service_min;
  std::optional<long long> berth_pos_m;
};

namespace detail {

inline long long parse_count(std::string_view field, std::string_view column, int line_no) {
  long long v = 0;
  auto t = trim(field);
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty())
    throw InvalidValue("row " + std::to_string(line_no) + ": bad " + std::string(column) + " '" +
                       std::string(field) + "'");
  if (v < 0)
    throw NegativeCount("row " + std::to_string(line_no) + ": " + std::string(column) + " = " +
                        std::to_string(v));
  return v;
}

}  // namespace detail

// Parses the ship log sheet. Every error names the offending file line;
// nothing is skipped silently.
inline std::vector<VesselCall> parse_log_sheet(std::string_view text, const Timestamp& epoch) {
  // Tolerate a UTF-8 BOM.
  if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

  std::vector<VesselCall> vessels;
  std::set<int> seen_ids;
  detail::for_each_line(text, [&](std::string_view line, int line_no) {
    if (detail::trim(line).empty()) return;
    if (line_no == 1) {
      if (detail::trim(line) != kLogSheetHeader)
        throw InvalidValue("log sheet header mismatch; expected '" + std::string(kLogSheetHeader) +
                           "'");
      return;
    }

    auto fields = detail::split_csv(line);
    if (fields.size() != 13)
      throw InvalidValue("row " + std::to_string(line_no) + ": expected 13 fields, got " +
                         std::to_string(fields.size()));

    VesselCall v;
    v.id = static_cast<int>(detail::parse_count(fields[0], "ship_no", line_no));
    if (!seen_ids.insert(v.id).second)
      throw DuplicateShipNo("row " + std::to_string(line_no) + ": ship_no " + std::to_string(v.id));
    v.name = std::string(detail::trim(fields[1]));
    v.agent = std::string(detail::trim(fields[2]));
    v.length_m = detail::parse_count(fields[3], "length_m", line_no);
    if (v.length_m == 0)
      throw InvalidValue("row " + std::to_string(line_no) + ": length_m must be positive");

    auto stamp = [&](std::string_view field, std::string_view column) -> SimTime {
      try {
        return to_sim_time(detail::trim(field), epoch);
      } catch (const MalformedTimestamp&) {
        throw MalformedTimestamp("row " + std::to_string(line_no) + ": " + std::string(column) +
                                 " '" + std::string(detail::trim(field)) + "'");
      } catch (const BeforeEpoch&) {
        throw BeforeEpoch("row " + std::to_string(line_no) + ": " + std::string(column) + " '" +
                          std::string(detail::trim(field)) + "'");
      }
    };

    SimTime op_start = stamp(fields[5], "op_start");
    SimTime op_end = stamp(fields[6], "op_end");
    if (op_end <= op_start)
      throw EndBeforeStart("row " + std::to_string(line_no) + ": op_end " + std::to_string(op_end) +
                           " <= op_start " + std::to_string(op_start));
    v.recorded_op_start = op_start;
    v.recorded_op_end = op_end;
    v.arrival = detail::trim(fields[4]).empty() ? op_start : stamp(fields[4], "arrival");

    long long imp20 = detail::parse_count(fields[7], "imp_20", line_no);
    long long imp40 = detail::parse_count(fields[8], "imp_40", line_no);
    long long exp20 = detail::parse_count(fields[9], "exp_20", line_no);
    long long exp40 = detail::parse_count(fields[10], "exp_40", line_no);
    if (imp20 > 0) v.groups.push_back({Flow::Import, BoxSize::Twenty, imp20});
    if (imp40 > 0) v.groups.push_back({Flow::Import, BoxSize::Forty, imp40});
    if (exp20 > 0) v.groups.push_back({Flow::Export, BoxSize::Twenty, exp20});
    if (exp40 > 0) v.groups.push_back({Flow::Export, BoxSize::Forty, exp40});

    if (!detail::trim(fields[11]).empty())
      v.recorded_service_min = detail::parse_count(fields[11], "service_min", line_no);
    if (!detail::trim(fields[12]).empty())
      v.recorded_berth_pos_m = detail::parse_count(fields[12], "berth_pos_m", line_no);

    vessels.push_back(std::move(v));
  });
  return vessels;
}

// Canonical serialization (ISO timestamps). parse_log_sheet of the output
// reproduces the vessel list exactly.
inline std::string serialize_log_sheet(const std::vector<VesselCall>& vessels,
                                       const Timestamp& epoch) {
  std::ostringstream out;
  out << kLogSheetHeader << '\n';
  for (const auto& v : vessels) {
    long long counts[4] = {0, 0, 0, 0};
    for (const auto& g : v.groups) {
      int idx = (g.flow == Flow::Export ? 2 : 0) + (g.size == BoxSize::Forty ? 1 : 0);
      counts[idx] += g.count;
    }
    out << v.id << ',' << v.name << ',' << v.agent << ',' << v.length_m << ',';
    if (!v.recorded_op_start || v.arrival != *v.recorded_op_start)
      out << format_sim_time(v.arrival, epoch);
    out << ',';
    out << (v.recorded_op_start ? format_sim_time(*v.recorded_op_start, epoch) : "") << ',';
    out << (v.recorded_op_end ? format_sim_time(*v.recorded_op_end, epoch) : "") << ',';
    out << counts[0] << ',' << counts[1] << ',' << counts[2] << ',' << counts[3] << ',';
    if (v.recorded_service_min) out << *v.recorded_service_min;
    out << ',';
    if (v.recorded_berth_pos_m) out << *v.recorded_berth_pos_m;
    out << '\n';
  }
  return out.str();
}

}  // namespace quaysim
