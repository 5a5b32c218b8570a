#include "multicg/date.hpp"

#include <charconv>
#include <cstdio>

#include "multicg/error.hpp"

namespace multicg {

namespace {

using namespace std::chrono;

// Reads exactly `width` digits at text[pos].
std::optional<int> read_digits(std::string_view text, std::size_t pos,
                               std::size_t width) {
  if (pos + width > text.size()) return std::nullopt;
  int value = 0;
  for (std::size_t i = pos; i < pos + width; ++i) {
    char c = text[i];
    if (c < '0' || c > '9') return std::nullopt;
    value = value * 10 + (c - '0');
  }
  return value;
}

std::optional<year_month_day> read_ymd(std::string_view text) {
  if (text.size() < 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  auto y = read_digits(text, 0, 4);
  auto m = read_digits(text, 5, 2);
  auto d = read_digits(text, 8, 2);
  if (!y || !m || !d) return std::nullopt;
  year_month_day ymd{year{*y}, month{static_cast<unsigned>(*m)},
                     day{static_cast<unsigned>(*d)}};
  if (!ymd.ok()) return std::nullopt;
  return ymd;
}

}  // namespace

Date::Date(int y, unsigned m, unsigned d) {
  year_month_day ymd{year{y}, month{m}, day{d}};
  if (!ymd.ok()) throw InputError("invalid calendar date");
  days_ = sys_days{ymd};
}

Date Date::parse(std::string_view text) {
  auto ymd = text.size() == 10 ? read_ymd(text) : std::nullopt;
  if (!ymd) {
    throw InputError("invalid date '" + std::string(text) +
                     "', expected YYYY-MM-DD");
  }
  return Date(sys_days{*ymd});
}

Date Date::of(Timestamp ts) { return Date(floor<std::chrono::days>(ts)); }

std::string Date::to_string() const {
  year_month_day ymd{days_};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()));
  return buf;
}

std::optional<Timestamp> parse_timestamp(std::string_view text) {
  auto ymd = read_ymd(text);
  if (!ymd || text.size() < 20 || text[10] != 'T' || text[13] != ':' ||
      text[16] != ':') {
    return std::nullopt;
  }
  auto hh = read_digits(text, 11, 2);
  auto mm = read_digits(text, 14, 2);
  auto ss = read_digits(text, 17, 2);
  if (!hh || !mm || !ss || *hh > 23 || *mm > 59 || *ss > 60) {
    return std::nullopt;
  }
  std::string_view rest = text.substr(19);
  if (!rest.empty() && rest.front() == '.') {
    std::size_t i = 1;
    while (i < rest.size() && rest[i] >= '0' && rest[i] <= '9') ++i;
    if (i == 1) return std::nullopt;
    rest.remove_prefix(i);
  }
  if (rest != "Z" && rest != "+00:00") return std::nullopt;
  return time_point_cast<seconds>(sys_days{*ymd}) + hours{*hh} +
         minutes{*mm} + seconds{*ss};
}

std::string format_timestamp(Timestamp ts) {
  auto day_start = floor<std::chrono::days>(ts);
  hh_mm_ss hms{ts - day_start};
  char buf[16];
  std::snprintf(buf, sizeof buf, "T%02d:%02d:%02dZ",
                static_cast<int>(hms.hours().count()),
                static_cast<int>(hms.minutes().count()),
                static_cast<int>(hms.seconds().count()));
  return Date(day_start).to_string() + buf;
}

TimeWindow::TimeWindow(Date start, Date end) : start_(start), end_(end) {
  if (length() < 2) {
    throw InputError("time window " + start.to_string() + ".." +
                     end.to_string() + " must span at least two days");
  }
}

}  // namespace multicg
