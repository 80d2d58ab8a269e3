#pragma once

#include <array>
#include <charconv>
#include <compare>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include "quaysim/errors.hpp"

namespace quaysim {

// Simulation clock: whole minutes since the scenario epoch.
using SimTime = std::int64_t;

inline constexpr SimTime kNoHorizon = std::numeric_limits<SimTime>::max();

namespace detail {

// Days since 1970-01-01 for a proleptic Gregorian date (Howard Hinnant's
// civil-days algorithm).
inline long long days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const long long era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<long long>(doe) - 719468;
}

inline bool parse_int(std::string_view s, int& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size() && !s.empty();
}

}  // namespace detail

// A calendar timestamp at minute resolution. Two input layouts are accepted:
// the log sheets' day-first "3/3/14 10:45 PM" and ISO "2014-03-03 22:45".
struct Timestamp {
  int year = 1970;
  int month = 1;
  int day = 1;
  int hour = 0;
  int minute = 0;

  auto operator<=>(const Timestamp&) const = default;

  long long total_minutes() const {
    return detail::days_from_civil(year, month, day) * 1440 + hour * 60 + minute;
  }

  bool valid() const {
    if (month < 1 || month > 12 || day < 1 || hour < 0 || hour > 23 || minute < 0 || minute > 59)
      return false;
    static constexpr std::array<int, 12> days{31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    int dim = days[month - 1];
    if (month == 2 && (year % 4 == 0 && (year % 100 != 0 || year % 400 == 0))) dim = 29;
    return day <= dim;
  }

  static Timestamp parse(std::string_view text);

  std::string iso() const {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d %02d:%02d", year, month, day, hour, minute);
    return buf;
  }
};

inline Timestamp Timestamp::parse(std::string_view text) {
  auto fail = [&] { throw MalformedTimestamp("'" + std::string(text) + "'"); };

  // Trim surrounding whitespace.
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r'))
    text.remove_suffix(1);
  if (text.empty()) fail();

  Timestamp ts;
  auto space = text.find_first_of(" T");
  if (space == std::string_view::npos) fail();
  std::string_view date = text.substr(0, space);
  std::string_view rest = text.substr(space + 1);

  bool iso = date.find('-') != std::string_view::npos;
  char date_sep = iso ? '-' : '/';
  auto p1 = date.find(date_sep);
  auto p2 = date.find(date_sep, p1 + 1);
  if (p1 == std::string_view::npos || p2 == std::string_view::npos) fail();
  int a, b, c;
  if (!detail::parse_int(date.substr(0, p1), a) ||
      !detail::parse_int(date.substr(p1 + 1, p2 - p1 - 1), b) ||
      !detail::parse_int(date.substr(p2 + 1), c))
    fail();
  if (iso) {
    ts.year = a;
    ts.month = b;
    ts.day = c;
  } else {
    // Day-first, as in "3/3/14" = 3 March 2014. Two-digit years are 20xx.
    ts.day = a;
    ts.month = b;
    ts.year = c < 100 ? 2000 + c : c;
  }

  // Optional trailing AM/PM marker.
  bool pm = false, am = false;
  if (rest.size() >= 3) {
    std::string_view tail = rest.substr(rest.size() - 2);
    if (tail == "AM" || tail == "am") am = true;
    if (tail == "PM" || tail == "pm") pm = true;
    if (am || pm) {
      rest.remove_suffix(2);
      while (!rest.empty() && rest.back() == ' ') rest.remove_suffix(1);
    }
  }

  auto colon = rest.find(':');
  if (colon == std::string_view::npos) fail();
  if (!detail::parse_int(rest.substr(0, colon), ts.hour) ||
      !detail::parse_int(rest.substr(colon + 1), ts.minute))
    fail();

  if (am || pm) {
    if (ts.hour < 1 || ts.hour > 12) fail();
    if (ts.hour == 12) ts.hour = 0;
    if (pm) ts.hour += 12;
  }
  if (!ts.valid()) fail();
  return ts;
}

// Minutes elapsed from the epoch to the given timestamp text.
inline SimTime to_sim_time(std::string_view text, const Timestamp& epoch) {
  Timestamp ts = Timestamp::parse(text);
  long long minutes = ts.total_minutes() - epoch.total_minutes();
  if (minutes < 0) throw BeforeEpoch("'" + std::string(text) + "' precedes the scenario epoch");
  return minutes;
}

// Inverse of to_sim_time, always in ISO form.
inline std::string format_sim_time(SimTime t, const Timestamp& epoch) {
  long long total = epoch.total_minutes() + t;
  long long days = total / 1440;
  int rem = static_cast<int>(total % 1440);

  // Civil date from day count (inverse of days_from_civil).
  long long z = days + 719468;
  const long long era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const long long y = static_cast<long long>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  const unsigned d = doy - (153 * mp + 2) / 5 + 1;
  const unsigned m = mp + (mp < 10 ? 3 : -9);

  Timestamp ts;
  ts.year = static_cast<int>(y + (m <= 2));
  ts.month = static_cast<int>(m);
  ts.day = static_cast<int>(d);
  ts.hour = rem / 60;
  ts.minute = rem % 60;
  return ts.iso();
}

}  // namespace quaysim
