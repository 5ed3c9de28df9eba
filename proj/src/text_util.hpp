#pragma once

// Small parsing/formatting helpers shared by the config and model parsers.

#include <charconv>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

namespace uavcpn::detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

// Whole-string decimal parse; "inf" and "+inf" accepted, nothing else
// non-numeric.
inline std::optional<double> parse_double(std::string_view s) {
  s = trim(s);
  if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc{} || ptr != end || s.empty()) return std::nullopt;
  return value;
}

// Shortest representation that parses back to the same double.
inline std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

}  // namespace uavcpn::detail
