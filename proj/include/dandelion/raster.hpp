#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <variant>
#include <vector>

#include "dandelion/color.hpp"
#include "dandelion/errors.hpp"
#include "dandelion/scene.hpp"

namespace dandelion {

struct RasterImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // row-major RGBA, straight alpha

  Rgba8 at(int x, int y) const {
    const std::uint8_t* p = pixels.data() + 4 * (static_cast<std::size_t>(y) * width + x);
    return {p[0], p[1], p[2], p[3]};
  }
};

namespace detail {

struct DrawPoly {
  Polygon points;
  ColorF color;
  BBox box;
};

// Flatten scene layers back-to-front into fillable polygons. Polylines
// become one quad per segment; legend text is not rasterized (SVG carries
// the text elements).
inline std::vector<DrawPoly> flatten_scene(const Scene& scene) {
  std::vector<DrawPoly> out;
  auto add = [&out](Polygon pts, Rgb8 color, double alpha) {
    if (pts.size() < 3 || alpha <= 0.0) return;
    DrawPoly d{std::move(pts), {color.r / 255.0, color.g / 255.0, color.b / 255.0, alpha}, {}};
    d.box = bounding_box(d.points);
    out.push_back(std::move(d));
  };
  for (const auto& layer : scene.layers) {
    for (const auto& prim : layer) {
      if (const auto* poly = std::get_if<PolyPrim>(&prim)) {
        add(poly->points, poly->fill, poly->alpha);
      } else if (const auto* line = std::get_if<LinePrim>(&prim)) {
        const double half = line->width_px / 2.0;
        for (std::size_t i = 1; i < line->points.size(); ++i) {
          Vec2 p = line->points[i - 1], q = line->points[i];
          double len = distance(p, q);
          if (len < 1e-12) continue;
          Vec2 n{-(q.y - p.y) / len * half, (q.x - p.x) / len * half};
          add({p + n, q + n, q - n, p - n}, line->stroke, line->opacity);
        }
      }
    }
  }
  return out;
}

// x positions where polygon edges cross the horizontal line at y, using the
// same half-open predicate as polygon_contains so membership decisions are
// bit-identical to per-point evaluation.
inline void edge_crossings(const Polygon& poly, double y, std::vector<double>& out) {
  out.clear();
  std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2 a = poly[j];
    const Vec2 b = poly[i];
    if ((a.y > y) != (b.y > y)) out.push_back(a.x + (y - a.y) * (b.x - a.x) / (b.y - a.y));
  }
}

}  // namespace detail

/// Supersampled scanline rasterization. Every pixel is divided into
/// supersample^2 sub-samples at sub-pixel centers; a sub-sample takes a
/// polygon's color when its center is inside by the even-odd rule (boundary
/// ties fall to exactly one side via the half-open crossing test). Primitives
/// composite back-to-front in straight-alpha reals; the final pixel is the
/// arithmetic mean of its sub-samples, quantized half-up once.
inline RasterImage rasterize(const Scene& scene, const Style& style) {
  style.check();
  const int W = scene.viewport.pixel_width;
  const int H = scene.viewport.pixel_height;
  if (W <= 0 || H <= 0) throw InvalidParams("viewport has no pixels");
  if (static_cast<long long>(W) * H > 100'000'000LL)
    throw ImageTooLarge("image exceeds 1e8 pixels");
  const int ss = style.supersample;
  const int sub_w = W * ss;

  const std::vector<detail::DrawPoly> prims = detail::flatten_scene(scene);

  RasterImage img;
  img.width = W;
  img.height = H;
  img.pixels.resize(static_cast<std::size_t>(W) * H * 4);

  // One pixel row of sub-samples at a time keeps memory flat; draw order is
  // preserved because each sub-sample sees the primitives in list order.
  std::vector<ColorF> row(static_cast<std::size_t>(sub_w) * ss);
  std::vector<double> crossings;
  for (int py = 0; py < H; ++py) {
    std::fill(row.begin(), row.end(), ColorF{1.0, 1.0, 1.0, 1.0});  // opaque canvas

    for (const auto& prim : prims) {
      if (prim.box.y1 <= py || prim.box.y0 >= py + 1) continue;
      for (int sj = 0; sj < ss; ++sj) {
        const double y = py + (sj + 0.5) / ss;
        detail::edge_crossings(prim.points, y, crossings);
        if (crossings.size() < 2) continue;
        auto [lo_it, hi_it] = std::minmax_element(crossings.begin(), crossings.end());
        int i_lo = std::max(0, static_cast<int>(std::floor(*lo_it * ss - 0.5)) - 1);
        int i_hi = std::min(sub_w - 1, static_cast<int>(std::ceil(*hi_it * ss - 0.5)) + 1);
        ColorF* sub_row = row.data() + static_cast<std::size_t>(sj) * sub_w;
        for (int i = i_lo; i <= i_hi; ++i) {
          const double gx = (i + 0.5) / ss;
          int count = 0;
          for (double c : crossings) count += gx < c;
          if (count & 1) sub_row[i] = composite_over_f(sub_row[i], prim.color);
        }
      }
    }

    std::uint8_t* out = img.pixels.data() + static_cast<std::size_t>(py) * W * 4;
    const double inv = 1.0 / (ss * ss);
    for (int px = 0; px < W; ++px) {
      ColorF acc;
      for (int sj = 0; sj < ss; ++sj) {
        const ColorF* sub_row = row.data() + static_cast<std::size_t>(sj) * sub_w;
        for (int si = 0; si < ss; ++si) {
          const ColorF& c = sub_row[px * ss + si];
          acc.r += c.r;
          acc.g += c.g;
          acc.b += c.b;
          acc.a += c.a;
        }
      }
      out[4 * px + 0] = quantize8(acc.r * inv);
      out[4 * px + 1] = quantize8(acc.g * inv);
      out[4 * px + 2] = quantize8(acc.b * inv);
      out[4 * px + 3] = quantize8(acc.a * inv);
    }
  }
  return img;
}

}  // namespace dandelion
