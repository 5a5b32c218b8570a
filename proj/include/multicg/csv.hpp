#ifndef MULTICG_CSV_HPP_
#define MULTICG_CSV_HPP_

#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace multicg::csv {

// Splits one comma-separated line. Double-quoted fields may contain commas
// and doubled quotes. A trailing '\r' is ignored.
std::vector<std::string> split_line(std::string_view line);

// Quotes a field only when it needs it.
std::string escape(std::string_view field);

// Next non-blank line, or nullopt at end of stream.
std::optional<std::string> next_line(std::istream& in);

std::optional<double> parse_double(std::string_view text);

// Shortest form with 10 significant digits, e.g. 0.8660254038.
std::string format_value(double v);

}  // namespace multicg::csv

#endif  // MULTICG_CSV_HPP_
