#pragma once

// Textual forms shared by the CLI and the export formats.

#include <charconv>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "chaindesign/chain.hpp"

namespace chaindesign {

class parse_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <class Range>
std::string join(const Range& values, std::string_view sep = ",") {
  std::ostringstream out;
  bool first = true;
  for (const auto& x : values) {
    if (!first) out << sep;
    out << x;
    first = false;
  }
  return out.str();
}

inline std::int64_t parse_int(std::string_view text) {
  std::int64_t value = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc{} || ptr != last) {
    throw parse_error("not an integer: '" + std::string(text) + "'");
  }
  return value;
}

/// "3,5,17" -> {3, 5, 17}
inline std::vector<std::int64_t> parse_int_list(std::string_view text) {
  std::vector<std::int64_t> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    out.push_back(parse_int(text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

inline ChainSpec parse_chain(std::string_view text) { return ChainSpec(parse_int_list(text)); }

inline std::string format_point(const Point& p) { return "(" + join(p.coords) + ")"; }

/// Level-i class with suffix (d_{i+1},...,d_s) prints as "C<i>(d_{i+1},...,d_s)".
inline std::string format_class(const ClassId& c) {
  return "C" + std::to_string(c.level) + "(" + join(c.suffix) + ")";
}

inline std::string format_rank(Rank r) { return "#" + std::to_string(r); }

/// Accepts "(d1,...,ds)" or "#r".
inline Rank parse_point(const ChainSpec& chain, std::string_view text) {
  if (!text.empty() && text.front() == '#') {
    const Rank r = parse_int(text.substr(1));
    require_rank(chain, r);
    return r;
  }
  if (text.size() < 2 || text.front() != '(' || text.back() != ')') {
    throw parse_error("point must look like (d1,...,ds) or #r: '" + std::string(text) + "'");
  }
  return rank_of(chain, Point{parse_int_list(text.substr(1, text.size() - 2))});
}

}  // namespace chaindesign
