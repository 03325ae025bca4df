#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "dandelion/errors.hpp"

namespace dandelion {

struct Rgb8 {
  std::uint8_t r = 0, g = 0, b = 0;
  constexpr bool operator==(const Rgb8&) const = default;
};

// Straight (non-premultiplied) alpha throughout.
struct Rgba8 {
  std::uint8_t r = 0, g = 0, b = 0, a = 255;
  constexpr bool operator==(const Rgba8&) const = default;
};

// Round half-up to an 8-bit channel; input is a normalized [0,1] real.
inline std::uint8_t quantize8(double v) {
  double s = std::floor(v * 255.0 + 0.5);
  return static_cast<std::uint8_t>(std::clamp(s, 0.0, 255.0));
}

// Normalized working color for compositing chains.
struct ColorF {
  double r = 0, g = 0, b = 0, a = 0;
};

inline ColorF to_colorf(Rgba8 c) {
  return {c.r / 255.0, c.g / 255.0, c.b / 255.0, c.a / 255.0};
}

inline Rgba8 to_rgba8(ColorF c) {
  return {quantize8(c.r), quantize8(c.g), quantize8(c.b), quantize8(c.a)};
}

// Source-over in straight alpha, kept in reals so stacks of primitives can
// be quantized once at the end. Fully transparent / fully opaque sources
// short-circuit so they are exact identities.
inline ColorF composite_over_f(ColorF dst, ColorF src) {
  if (src.a <= 0.0) return dst;
  if (src.a >= 1.0) return src;
  double ao = src.a + dst.a * (1.0 - src.a);
  if (ao == 0.0) return {0, 0, 0, 0};
  double w = dst.a * (1.0 - src.a);
  return {(src.r * src.a + dst.r * w) / ao,
          (src.g * src.a + dst.g * w) / ao,
          (src.b * src.a + dst.b * w) / ao, ao};
}

/// 8-bit source-over: normalize, blend, quantize half-up.
inline Rgba8 composite_over(Rgba8 dst, Rgba8 src) {
  if (src.a == 255) return src;
  if (src.a == 0) return dst;
  return to_rgba8(composite_over_f(to_colorf(dst), to_colorf(src)));
}

struct ColorStop {
  double pos = 0.0;  // in [0,1]
  Rgb8 rgb;
};

struct ColorMap {
  enum class Mode { Continuous, Categorical };

  Mode mode = Mode::Continuous;
  std::vector<ColorStop> stops;  // Continuous: strictly increasing, 0..1
  std::vector<Rgb8> palette;     // Categorical: non-empty

  void check() const {
    if (mode == Mode::Continuous) {
      if (stops.size() < 2) throw InvalidParams("continuous colormap needs >= 2 stops");
      if (stops.front().pos != 0.0 || stops.back().pos != 1.0)
        throw InvalidParams("colormap stops must start at 0 and end at 1");
      for (std::size_t i = 1; i < stops.size(); ++i)
        if (!(stops[i - 1].pos < stops[i].pos))
          throw InvalidParams("colormap stop positions must be strictly increasing");
    } else {
      if (palette.empty()) throw InvalidParams("categorical palette is empty");
    }
  }

  // Piecewise-linear per channel; exact at stop positions. u clamped to [0,1].
  Rgb8 sample(double u) const {
    u = std::clamp(u, 0.0, 1.0);
    std::size_t hi = 1;
    while (hi + 1 < stops.size() && stops[hi].pos < u) ++hi;
    const ColorStop& s0 = stops[hi - 1];
    const ColorStop& s1 = stops[hi];
    if (u <= s0.pos) return s0.rgb;
    if (u >= s1.pos) return s1.rgb;
    double t = (u - s0.pos) / (s1.pos - s0.pos);
    auto ch = [t](std::uint8_t a, std::uint8_t b) {
      return quantize8((a + t * (double(b) - double(a))) / 255.0);
    };
    return {ch(s0.rgb.r, s1.rgb.r), ch(s0.rgb.g, s1.rgb.g), ch(s0.rgb.b, s1.rgb.b)};
  }

  Rgb8 swatch(int label) const {
    auto n = static_cast<long long>(palette.size());
    long long k = ((label % n) + n) % n;
    return palette[static_cast<std::size_t>(k)];
  }
};

// Default dark-to-bright ramp, defined numerically so every backend agrees
// byte for byte.
inline ColorMap default_time_colormap() {
  ColorMap m;
  m.mode = ColorMap::Mode::Continuous;
  m.stops = {{0.00, {13, 8, 135}},
             {0.25, {126, 3, 168}},
             {0.50, {204, 71, 120}},
             {0.75, {248, 149, 64}},
             {1.00, {240, 249, 33}}};
  return m;
}

// Default categorical palette: 8 high-contrast colors.
inline ColorMap default_label_colormap() {
  ColorMap m;
  m.mode = ColorMap::Mode::Categorical;
  m.palette = {{230, 25, 75},  {60, 180, 75},  {255, 225, 25}, {0, 130, 200},
               {245, 130, 48}, {145, 30, 180}, {70, 240, 240}, {240, 50, 230}};
  return m;
}

}  // namespace dandelion
