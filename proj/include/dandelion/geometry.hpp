#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "dandelion/angles.hpp"
#include "dandelion/color.hpp"
#include "dandelion/errors.hpp"
#include "dandelion/track.hpp"
#include "dandelion/vec.hpp"

namespace dandelion {

// Spotlight triangle: apex at the tracked position, base vertices on the
// circle of radius `length` about the apex, `half_angle` either side of the
// heading. The same cone parameters drive the attention analytics.
struct SpotlightParams {
  double length = 0.8;               // meters, apex to each base vertex
  double half_angle = 25.0 * pi / 180.0;  // radians, half the apex angle

  void check() const {
    if (!(length > 0.0)) throw InvalidParams("spotlight length must be positive");
    if (!(half_angle > 0.0 && half_angle < pi / 2.0))
      throw InvalidParams("spotlight half_angle must be in (0, pi/2)");
  }
};

struct SpotlightUnit {
  Vec2 apex;
  Vec2 base_a;
  Vec2 base_b;
  Rgb8 color;
  std::size_t source_index = 0;
};

inline SpotlightUnit spotlight_triangle(const TrackSample& sample, const SpotlightParams& params) {
  params.check();
  SpotlightUnit u;
  u.apex = {sample.x, sample.y};
  const double h = sample.heading;
  const double L = params.length;
  u.base_a = u.apex + Vec2{std::cos(h + params.half_angle), std::sin(h + params.half_angle)} * L;
  u.base_b = u.apex + Vec2{std::cos(h - params.half_angle), std::sin(h - params.half_angle)} * L;
  return u;
}

/// One polyline of apex positions per segment; segments shorter than two
/// samples contribute nothing. Lines never bridge a segment break.
inline std::vector<std::vector<Vec2>> trajectory_polylines(const Track& track) {
  std::vector<std::vector<Vec2>> lines;
  const auto& ss = track.samples;
  std::size_t start = 0;
  auto flush = [&](std::size_t end) {
    if (end - start >= 2) {
      std::vector<Vec2> line;
      line.reserve(end - start);
      for (std::size_t i = start; i < end; ++i) line.push_back({ss[i].x, ss[i].y});
      lines.push_back(std::move(line));
    }
    start = end;
  };
  for (std::size_t brk : track.segment_breaks) flush(brk);
  flush(ss.size());
  return lines;
}

// World-to-screen mapping. World is y-up meters; the screen is y-down
// pixels. This is the only place the flip happens.
struct Viewport {
  double world_x0 = 0.0;
  double world_y0 = 0.0;
  double world_width = 0.0;   // meters
  double world_height = 0.0;  // meters
  int pixel_width = 0;
  int pixel_height = 0;
  int margin = 0;  // px, identical on all sides

  double scale() const {  // px per meter, identical on both axes
    return (pixel_width - 2.0 * margin) / world_width;
  }
};

inline Viewport make_viewport(const ClassroomMap& map, int pixel_width, int margin = 40) {
  if (pixel_width <= 2 * margin) throw InvalidParams("pixel width must exceed twice the margin");
  Viewport vp;
  vp.world_width = map.width;
  vp.world_height = map.height;
  vp.pixel_width = pixel_width;
  vp.margin = margin;
  double s = vp.scale();
  vp.pixel_height = static_cast<int>(std::lround(2.0 * margin + map.height * s));
  return vp;
}

inline Vec2 world_to_screen(Vec2 p, const Viewport& vp) {
  double s = vp.scale();
  return {vp.margin + (p.x - vp.world_x0) * s,
          vp.pixel_height - vp.margin - (p.y - vp.world_y0) * s};
}

}  // namespace dandelion
