/* Text formatting helpers shared by the CSV and table writers.
 *
 * SPDX-FileCopyrightText: 2026 WordGraph contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <charconv>
#include <cmath>
#include <string>
#include <string_view>

namespace wordgraph {

/// Shortest decimal form that round-trips; "nan", "inf", "-inf" otherwise.
inline std::string format_double(double v) {
  if (std::isnan(v))
    return "nan";
  if (std::isinf(v))
    return v > 0 ? "inf" : "-inf";
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

/// Fixed-point with `digits` decimals, for human-readable tables.
inline std::string format_fixed(double v, int digits) {
  if (!std::isfinite(v))
    return format_double(v);
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, digits);
  return std::string(buf, end);
}

/// RFC 4180 quoting when the field needs it.
inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos)
    return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"')
      out += '"';
    out += c;
  }
  out += '"';
  return out;
}

} // namespace wordgraph
