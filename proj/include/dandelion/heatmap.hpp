#pragma once

#include <algorithm>
#include <cmath>

#include "dandelion/grid.hpp"
#include "dandelion/scene.hpp"

namespace dandelion {

inline constexpr double default_heatmap_cell_m = 0.1;
inline constexpr double default_heatmap_bandwidth_m = 0.35;

/// Conventional position-only density baseline: isotropic Gaussian kernel of
/// dwell time, evaluated at cell centers. Kernels are truncated at the room
/// boundary (cells only exist inside), with no renormalization, so density
/// near walls is biased low.
inline Grid kde_grid(const Track& track, const ClassroomMap& map,
                     double cell_size = default_heatmap_cell_m,
                     double bandwidth = default_heatmap_bandwidth_m) {
  if (!(bandwidth > 0.0)) throw InvalidParams("bandwidth must be positive");
  if (!track.interval) throw InvalidParams("kde_grid needs a resampled track");
  Grid grid = make_room_grid(map, cell_size);
  const double interval = *track.interval;
  const double inv_two_bw2 = 1.0 / (2.0 * bandwidth * bandwidth);
  const double norm = interval / (two_pi * bandwidth * bandwidth);
  for (const auto& s : track.samples) {
    for (int cy = 0; cy < grid.rows; ++cy) {
      for (int cx = 0; cx < grid.cols; ++cx) {
        Vec2 c = grid.cell_center(cx, cy);
        double d2 = (c.x - s.x) * (c.x - s.x) + (c.y - s.y) * (c.y - s.y);
        grid.at(cx, cy) += norm * std::exp(-d2 * inv_two_bw2);
      }
    }
  }
  return grid;
}

/// Figure-style baseline rendering: one opaque rectangle per cell, colored by
/// value relative to the grid maximum. An all-zero grid takes the ramp start
/// everywhere. The legend shows the min/max density.
inline Scene heatmap_scene(const Grid& grid, const ClassroomMap& map, const ColorMap& colormap,
                           const Viewport& vp) {
  ColorMap cm = colormap;
  cm.mode = ColorMap::Mode::Continuous;
  cm.check();
  Scene scene;
  scene.viewport = vp;

  scene.layers[kLayerBackground].push_back(PolyPrim{
      detail::screen_rect({0, 0}, {map.width, map.height}, vp), cm.sample(0.0)});

  const double max_v = grid.max_value();
  for (int cy = 0; cy < grid.rows; ++cy) {
    for (int cx = 0; cx < grid.cols; ++cx) {
      double x0 = grid.x0 + cx * grid.cell_size;
      double y0 = grid.y0 + cy * grid.cell_size;
      Vec2 lo{x0, y0};
      Vec2 hi{std::min(x0 + grid.cell_size, map.width), std::min(y0 + grid.cell_size, map.height)};
      Rgb8 c = cm.sample(max_v > 0.0 ? grid.at(cx, cy) / max_v : 0.0);
      scene.layers[kLayerMarkers].push_back(PolyPrim{detail::screen_rect(lo, hi, vp), c});
    }
  }

  detail::add_ramp_legend(scene, cm, format_double(0.0), format_double(max_v) + " s/m^2");
  return scene;
}

}  // namespace dandelion
