#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "dandelion/color.hpp"
#include "dandelion/geometry.hpp"
#include "dandelion/numfmt.hpp"
#include "dandelion/track.hpp"

namespace dandelion {

enum class Coding { Time, Label };

struct TrajectoryStroke {
  Rgb8 rgb{51, 51, 51};
  double width_px = 1.5;
  double opacity = 0.85;
};

struct BackgroundStyle {
  Rgb8 room{255, 255, 255};
  Rgb8 obstacle{205, 205, 205};
};

// Rendering knobs. The default per-unit alpha of 0.12 keeps a single pass
// visible while ~20 overlaps approach saturation (1 - 0.88^20 ~ 0.92).
struct Style {
  SpotlightParams spotlight;
  double alpha = 0.12;
  Coding coding = Coding::Time;
  ColorMap colormap = []{
    ColorMap m = default_time_colormap();
    m.palette = default_label_colormap().palette;  // both routes pre-filled
    return m;
  }();
  TrajectoryStroke trajectory;
  BackgroundStyle background;
  int supersample = 4;

  void check() const {
    spotlight.check();
    if (!(alpha > 0.0 && alpha <= 1.0)) throw InvalidParams("alpha must be in (0, 1]");
    if (supersample != 1 && supersample != 2 && supersample != 4 && supersample != 8)
      throw InvalidParams("supersample must be one of 1, 2, 4, 8");
    if (!(trajectory.width_px > 0.0)) throw InvalidParams("trajectory width must be positive");
    if (!(trajectory.opacity >= 0.0 && trajectory.opacity <= 1.0))
      throw InvalidParams("trajectory opacity must be in [0, 1]");
  }
};

// Scene primitives carry screen-space pixel coordinates. Opacity stays a
// real number all the way through; both backends quantize only at the very
// end (the rasterizer per pixel, the SVG writer per attribute).
struct PolyPrim {
  Polygon points;
  Rgb8 fill;
  double alpha = 1.0;
};

struct LinePrim {
  std::vector<Vec2> points;
  Rgb8 stroke;
  double width_px = 1.0;
  double opacity = 1.0;
};

struct TextPrim {
  enum class Anchor { Start, End };
  Vec2 anchor_pos;
  double size_px = 10.0;
  std::string text;
  Rgb8 fill{51, 51, 51};
  Anchor anchor = Anchor::Start;
};

using Primitive = std::variant<PolyPrim, LinePrim, TextPrim>;

// Layers drawn back-to-front in this fixed order.
enum LayerIndex : std::size_t {
  kLayerBackground = 0,
  kLayerObstacles,
  kLayerMarkers,  // spotlights or heatmap cells
  kLayerTrajectories,
  kLayerLegend,
  kLayerCount
};

struct Scene {
  Viewport viewport;
  std::array<std::vector<Primitive>, kLayerCount> layers;
};

/// Fill color for one sample. Time coding maps progress through the session
/// onto the continuous ramp; Label coding indexes the categorical palette.
inline Rgb8 color_for(const TrackSample& sample, const Track& track, const Style& style) {
  if (style.coding == Coding::Time) {
    double t0 = track.samples.front().t;
    double t1 = track.samples.back().t;
    // Zero-duration tracks (single sample) take the ramp start.
    double u = t1 > t0 ? std::clamp((sample.t - t0) / (t1 - t0), 0.0, 1.0) : 0.0;
    return style.colormap.sample(u);
  }
  if (!sample.label) throw MissingLabel("label coding requested but sample has no label");
  return style.colormap.swatch(*sample.label);
}

namespace detail {

inline Polygon screen_rect(Vec2 world_lo, Vec2 world_hi, const Viewport& vp) {
  return {world_to_screen({world_lo.x, world_lo.y}, vp),
          world_to_screen({world_hi.x, world_lo.y}, vp),
          world_to_screen({world_hi.x, world_hi.y}, vp),
          world_to_screen({world_lo.x, world_hi.y}, vp)};
}

inline Polygon pixel_rect(double x0, double y0, double x1, double y1) {
  return {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
}

// Legend strip geometry, laid out in the bottom margin band.
inline double legend_top(const Viewport& vp) {
  return static_cast<double>(vp.pixel_height) - vp.margin + 6.0;
}

inline void add_ramp_legend(Scene& scene, const ColorMap& map, const std::string& lo_text,
                            const std::string& hi_text) {
  const Viewport& vp = scene.viewport;
  auto& layer = scene.layers[kLayerLegend];
  const double y0 = legend_top(vp);
  const double y1 = y0 + 10.0;
  const double x0 = vp.margin;
  const double w = std::min(240.0, static_cast<double>(vp.pixel_width) - 2.0 * vp.margin);
  const int slices = 64;
  for (int i = 0; i < slices; ++i) {
    double u = (i + 0.5) / slices;
    layer.push_back(PolyPrim{pixel_rect(x0 + w * i / slices, y0, x0 + w * (i + 1) / slices, y1),
                             map.sample(u)});
  }
  layer.push_back(TextPrim{{x0, y1 + 12.0}, 10.0, lo_text});
  layer.push_back(TextPrim{{x0 + w, y1 + 12.0}, 10.0, hi_text, {51, 51, 51},
                           TextPrim::Anchor::End});
}

inline void add_swatch_legend(Scene& scene, const ColorMap& map, const std::set<int>& labels) {
  const Viewport& vp = scene.viewport;
  auto& layer = scene.layers[kLayerLegend];
  const double y0 = legend_top(vp);
  double x = vp.margin;
  for (int label : labels) {
    layer.push_back(PolyPrim{pixel_rect(x, y0, x + 12.0, y0 + 12.0), map.swatch(label)});
    layer.push_back(TextPrim{{x + 16.0, y0 + 10.0}, 10.0, std::to_string(label)});
    x += 56.0;
  }
}

}  // namespace detail

/// Assemble the layered diagram scene: room underlay, obstacles, one colored
/// spotlight per sample in time order (earlier drawn first, so later samples
/// sit on top), trajectory polylines, and a legend.
inline Scene build_scene(const Track& track, const ClassroomMap& map, const Style& style,
                         const Viewport& vp) {
  style.check();
  if (track.empty()) throw EmptyTrack();
  Scene scene;
  scene.viewport = vp;

  scene.layers[kLayerBackground].push_back(PolyPrim{
      detail::screen_rect({0, 0}, {map.width, map.height}, vp), style.background.room});

  for (const Polygon& obstacle : map.obstacles) {
    Polygon pts;
    pts.reserve(obstacle.size());
    for (Vec2 p : obstacle) pts.push_back(world_to_screen(p, vp));
    scene.layers[kLayerObstacles].push_back(
        PolyPrim{std::move(pts), style.background.obstacle});
  }

  for (std::size_t i = 0; i < track.samples.size(); ++i) {
    SpotlightUnit unit = spotlight_triangle(track.samples[i], style.spotlight);
    unit.source_index = i;
    unit.color = color_for(track.samples[i], track, style);
    scene.layers[kLayerMarkers].push_back(
        PolyPrim{{world_to_screen(unit.apex, vp), world_to_screen(unit.base_a, vp),
                  world_to_screen(unit.base_b, vp)},
                 unit.color, style.alpha});
  }

  for (const auto& line : trajectory_polylines(track)) {
    std::vector<Vec2> pts;
    pts.reserve(line.size());
    for (Vec2 p : line) pts.push_back(world_to_screen(p, vp));
    scene.layers[kLayerTrajectories].push_back(LinePrim{
        std::move(pts), style.trajectory.rgb, style.trajectory.width_px,
        style.trajectory.opacity});
  }

  if (style.coding == Coding::Time) {
    detail::add_ramp_legend(scene, style.colormap,
                            format_double(track.samples.front().t) + " s",
                            format_double(track.samples.back().t) + " s");
  } else {
    std::set<int> labels;
    for (const auto& s : track.samples)
      if (s.label) labels.insert(*s.label);
    detail::add_swatch_legend(scene, style.colormap, labels);
  }
  return scene;
}

// ---- Style JSON ----
// Keys: length_m, half_angle_deg, alpha, coding, colormap{stops|palette},
// trajectory{rgb,width_px,opacity}, supersample. Unknown keys are errors.

inline Style style_from_json(const nlohmann::json& j, Style base = {}) {
  static const std::set<std::string> known{"length_m",  "half_angle_deg", "alpha", "coding",
                                           "colormap",  "trajectory",     "supersample"};
  if (!j.is_object()) throw InvalidParams("style file must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key())) throw InvalidParams("unknown style key '" + it.key() + "'");
  try {
    Style s = base;
    if (j.contains("length_m")) s.spotlight.length = j.at("length_m").get<double>();
    if (j.contains("half_angle_deg"))
      s.spotlight.half_angle = j.at("half_angle_deg").get<double>() * pi / 180.0;
    if (j.contains("alpha")) s.alpha = j.at("alpha").get<double>();
    if (j.contains("coding")) {
      std::string c = j.at("coding").get<std::string>();
      if (c == "time") s.coding = Coding::Time;
      else if (c == "label") s.coding = Coding::Label;
      else throw InvalidParams("coding must be \"time\" or \"label\"");
    }
    if (j.contains("colormap")) {
      const auto& jc = j.at("colormap");
      for (auto it = jc.begin(); it != jc.end(); ++it)
        if (it.key() != "stops" && it.key() != "palette")
          throw InvalidParams("unknown colormap key '" + it.key() + "'");
      if (jc.contains("stops")) {
        s.colormap.stops.clear();
        for (const auto& js : jc.at("stops")) {
          const auto& rgb = js.at(1);
          s.colormap.stops.push_back({js.at(0).get<double>(),
                                      {rgb.at(0).get<std::uint8_t>(), rgb.at(1).get<std::uint8_t>(),
                                       rgb.at(2).get<std::uint8_t>()}});
        }
      }
      if (jc.contains("palette")) {
        s.colormap.palette.clear();
        for (const auto& jp : jc.at("palette"))
          s.colormap.palette.push_back({jp.at(0).get<std::uint8_t>(), jp.at(1).get<std::uint8_t>(),
                                        jp.at(2).get<std::uint8_t>()});
      }
    }
    if (j.contains("trajectory")) {
      const auto& jt = j.at("trajectory");
      for (auto it = jt.begin(); it != jt.end(); ++it)
        if (it.key() != "rgb" && it.key() != "width_px" && it.key() != "opacity")
          throw InvalidParams("unknown trajectory key '" + it.key() + "'");
      if (jt.contains("rgb")) {
        const auto& rgb = jt.at("rgb");
        s.trajectory.rgb = {rgb.at(0).get<std::uint8_t>(), rgb.at(1).get<std::uint8_t>(),
                            rgb.at(2).get<std::uint8_t>()};
      }
      if (jt.contains("width_px")) s.trajectory.width_px = jt.at("width_px").get<double>();
      if (jt.contains("opacity")) s.trajectory.opacity = jt.at("opacity").get<double>();
    }
    if (j.contains("supersample")) s.supersample = j.at("supersample").get<int>();
    s.check();
    ColorMap check_map = s.colormap;
    if (s.coding == Coding::Time) {
      check_map.mode = ColorMap::Mode::Continuous;
    } else {
      check_map.mode = ColorMap::Mode::Categorical;
    }
    check_map.check();
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidParams(std::string("bad style JSON: ") + e.what());
  }
}

}  // namespace dandelion
