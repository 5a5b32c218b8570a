#ifndef MULTICG_DATE_HPP_
#define MULTICG_DATE_HPP_

#include <chrono>
#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace multicg {

using Timestamp = std::chrono::sys_seconds;

/// A UTC calendar day.
class Date {
 public:
  Date() = default;
  Date(int year, unsigned month, unsigned day);
  explicit Date(std::chrono::sys_days days) : days_(days) {}

  /// Parses `YYYY-MM-DD`. Throws InputError on anything else.
  static Date parse(std::string_view text);
  static Date of(Timestamp ts);

  std::chrono::sys_days days() const { return days_; }
  std::string to_string() const;

  Date operator+(int n) const { return Date(days_ + std::chrono::days(n)); }
  Date operator-(int n) const { return Date(days_ - std::chrono::days(n)); }
  friend int operator-(Date a, Date b) {
    return static_cast<int>((a.days_ - b.days_).count());
  }
  friend auto operator<=>(const Date&, const Date&) = default;

 private:
  std::chrono::sys_days days_{};
};

/// Parses an ISO-8601 UTC timestamp such as `2012-10-25T09:00:00Z`.
/// Accepts fractional seconds and a `+00:00` suffix in place of `Z`;
/// returns nullopt for anything else.
std::optional<Timestamp> parse_timestamp(std::string_view text);
std::string format_timestamp(Timestamp ts);

/// Inclusive range of calendar days, at least two days long.
class TimeWindow {
 public:
  TimeWindow(Date start, Date end);

  Date start() const { return start_; }
  Date end() const { return end_; }
  int length() const { return (end_ - start_) + 1; }
  bool contains(Date d) const { return start_ <= d && d <= end_; }
  // Zero-based day offset of d; d must be inside the window.
  int offset(Date d) const { return d - start_; }

  friend bool operator==(const TimeWindow&, const TimeWindow&) = default;

 private:
  Date start_;
  Date end_;
};

}  // namespace multicg

#endif  // MULTICG_DATE_HPP_
