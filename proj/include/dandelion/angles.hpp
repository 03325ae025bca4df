#pragma once

#include <cmath>

#include "dandelion/errors.hpp"

namespace dandelion {

inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr double two_pi = 2.0 * pi;

/// Wrap any finite angle into [0, 2*pi). Exact multiples of 2*pi map to 0.
inline double normalize_heading(double angle) {
  if (!std::isfinite(angle)) throw NonFinite("angle is not finite");
  double r = std::fmod(angle, two_pi);
  if (r < 0.0) r += two_pi;
  if (r >= two_pi) r = 0.0;  // fmod result + 2*pi can round up to 2*pi
  return r;
}

// Signed shorter-arc difference to - from, in (-pi, pi]. Exactly opposite
// headings resolve to +pi.
inline double short_arc(double from, double to) {
  double d = std::fmod(to - from, two_pi);
  if (d > pi) d -= two_pi;
  if (d <= -pi) d += two_pi;
  return d;
}

/// Interpolate between two headings along the shorter circular arc.
/// u = 0 gives h0 (exactly, if h0 is already in range), u = 1 gives h1.
inline double lerp_heading(double h0, double h1, double u) {
  return normalize_heading(h0 + u * short_arc(h0, h1));
}

}  // namespace dandelion
