#pragma once

#include <charconv>
#include <cstdio>
#include <string>
#include <system_error>

namespace dandelion {

// Shortest round-trip decimal form (std::to_chars), locale-free and
// byte-stable across platforms. Used for CSV and JSON-adjacent output.
inline std::string format_double(double v) {
  if (v == 0.0) v = 0.0;  // collapse -0
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// Fixed-precision decimal form for SVG attribute values.
inline std::string format_fixed(double v, int precision) {
  if (v == 0.0) v = 0.0;
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, precision);
  if (res.ec != std::errc()) {  // absurd magnitudes; keep output well-formed
    std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
    return std::string(buf);
  }
  return std::string(buf, res.ptr);
}

}  // namespace dandelion
