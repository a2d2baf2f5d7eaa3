#pragma once

#include <charconv>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>

namespace tdtsw {

// Shortest decimal text that parses back to exactly `value`.
inline std::string format_shortest(double value) {
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc{}) return std::to_string(value);
  std::string text(buffer, end);
  if (text == "-0") text = "0";
  return text;
}

// Locale-independent parse of a complete decimal literal. Only '.' is accepted
// as a decimal separator; trailing garbage, "inf" and "nan" are rejected.
inline std::optional<double> parse_real(std::string_view text) {
  if (text.empty()) return std::nullopt;
  std::string_view body = text;
  if (body.front() == '+') body.remove_prefix(1);
  if (body.empty()) return std::nullopt;
  for (char c : body) {
    bool ok = (c >= '0' && c <= '9') || c == '.' || c == '-' || c == '+' || c == 'e' || c == 'E';
    if (!ok) return std::nullopt;
  }
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), value);
  if (ec != std::errc{} || ptr != body.data() + body.size()) return std::nullopt;
  return value;
}

}  // namespace tdtsw
