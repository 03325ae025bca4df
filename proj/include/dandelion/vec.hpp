#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace dandelion {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr bool operator==(const Vec2&) const = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }

// Closed polygon, vertices in order, last edge implicit (back to front()).
using Polygon = std::vector<Vec2>;

struct BBox {
  double x0 = std::numeric_limits<double>::infinity();
  double y0 = std::numeric_limits<double>::infinity();
  double x1 = -std::numeric_limits<double>::infinity();
  double y1 = -std::numeric_limits<double>::infinity();

  void expand(Vec2 p) {
    x0 = std::min(x0, p.x);
    y0 = std::min(y0, p.y);
    x1 = std::max(x1, p.x);
    y1 = std::max(y1, p.y);
  }
};

inline BBox bounding_box(const Polygon& poly) {
  BBox b;
  for (Vec2 p : poly) b.expand(p);
  return b;
}

inline Vec2 centroid(const Polygon& poly) {
  Vec2 c;
  if (poly.empty()) return c;
  for (Vec2 p : poly) c = c + p;
  return c * (1.0 / static_cast<double>(poly.size()));
}

// Even-odd crossing test. Edges are treated half-open in y so a point on a
// shared edge belongs to exactly one of two abutting polygons; for an
// axis-aligned rectangle this yields [x0,x1) x [y0,y1) membership.
inline bool polygon_contains(const Polygon& poly, Vec2 p) {
  if (poly.size() < 3) return false;
  bool inside = false;
  std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2 a = poly[j];
    const Vec2 b = poly[i];
    if ((a.y > p.y) != (b.y > p.y)) {
      double xcross = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < xcross) inside = !inside;
    }
  }
  return inside;
}

}  // namespace dandelion
