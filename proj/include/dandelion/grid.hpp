#pragma once

#include <cmath>
#include <cstddef>
#include <ostream>
#include <vector>

#include "dandelion/errors.hpp"
#include "dandelion/numfmt.hpp"
#include "dandelion/track.hpp"

namespace dandelion {

// Uniform cell grid over the room. Cells tile [x0, x0+cols*cell) x
// [y0, y0+rows*cell), half-open on the high edges; row 0 is the bottom row
// (lowest y). `values` meaning depends on the producer: seconds for
// occupancy/attention, seconds/m^2 for kernel density.
struct Grid {
  double cell_size = 0.0;
  double x0 = 0.0;
  double y0 = 0.0;
  int cols = 0;
  int rows = 0;
  std::vector<double> values;  // row-major, index = cy * cols + cx

  double& at(int cx, int cy) { return values[static_cast<std::size_t>(cy) * cols + cx]; }
  double at(int cx, int cy) const { return values[static_cast<std::size_t>(cy) * cols + cx]; }

  Vec2 cell_center(int cx, int cy) const {
    return {x0 + (cx + 0.5) * cell_size, y0 + (cy + 0.5) * cell_size};
  }

  double sum() const {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }

  double max_value() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, v);
    return m;
  }
};

inline Grid make_room_grid(const ClassroomMap& map, double cell_size) {
  if (!(cell_size > 0.0)) throw InvalidParams("cell_size must be positive");
  Grid g;
  g.cell_size = cell_size;
  g.cols = static_cast<int>(std::ceil(map.width / cell_size - 1e-12));
  g.rows = static_cast<int>(std::ceil(map.height / cell_size - 1e-12));
  g.values.assign(static_cast<std::size_t>(g.cols) * g.rows, 0.0);
  return g;
}

/// CSV matrix export, row 0 = top row (highest y), columns left to right.
inline void write_grid_csv(std::ostream& out, const Grid& grid) {
  for (int cy = grid.rows - 1; cy >= 0; --cy) {
    for (int cx = 0; cx < grid.cols; ++cx) {
      if (cx) out << ',';
      out << format_double(grid.at(cx, cy));
    }
    out << '\n';
  }
}

}  // namespace dandelion
