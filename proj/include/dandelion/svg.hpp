#pragma once

#include <string>
#include <variant>

#include "dandelion/numfmt.hpp"
#include "dandelion/scene.hpp"

namespace dandelion {

namespace detail {

inline void append_hex_color(std::string& out, Rgb8 c) {
  static const char* digits = "0123456789abcdef";
  out += '#';
  for (std::uint8_t v : {c.r, c.g, c.b}) {
    out += digits[v >> 4];
    out += digits[v & 0x0F];
  }
}

inline void append_points(std::string& out, const std::vector<Vec2>& pts) {
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) out += ' ';
    out += format_fixed(pts[i].x, 3);
    out += ',';
    out += format_fixed(pts[i].y, 3);
  }
}

inline void append_escaped(std::string& out, const std::string& text) {
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
}

}  // namespace detail

/// Emit the scene as an SVG 1.1 document. Output is a pure function of the
/// scene: fixed number formatting (coordinates to 3 decimals, opacities to
/// 4), LF line endings, element order equal to layer/primitive order.
inline std::string emit_svg(const Scene& scene) {
  const Viewport& vp = scene.viewport;
  std::string out;
  out.reserve(1024 + 160 * (scene.layers[kLayerMarkers].size() + 16));
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"";
  out += std::to_string(vp.pixel_width);
  out += "\" height=\"";
  out += std::to_string(vp.pixel_height);
  out += "\" viewBox=\"0 0 ";
  out += std::to_string(vp.pixel_width);
  out += ' ';
  out += std::to_string(vp.pixel_height);
  out += "\">\n";
  out += "<rect width=\"";
  out += std::to_string(vp.pixel_width);
  out += "\" height=\"";
  out += std::to_string(vp.pixel_height);
  out += "\" fill=\"#ffffff\"/>\n";

  for (const auto& layer : scene.layers) {
    for (const auto& prim : layer) {
      if (const auto* poly = std::get_if<PolyPrim>(&prim)) {
        out += "<polygon points=\"";
        detail::append_points(out, poly->points);
        out += "\" fill=\"";
        detail::append_hex_color(out, poly->fill);
        out += "\" fill-opacity=\"";
        out += format_fixed(poly->alpha, 4);
        out += "\"/>\n";
      } else if (const auto* line = std::get_if<LinePrim>(&prim)) {
        out += "<polyline points=\"";
        detail::append_points(out, line->points);
        out += "\" fill=\"none\" stroke=\"";
        detail::append_hex_color(out, line->stroke);
        out += "\" stroke-width=\"";
        out += format_fixed(line->width_px, 3);
        out += "\" stroke-opacity=\"";
        out += format_fixed(line->opacity, 4);
        out += "\"/>\n";
      } else if (const auto* text = std::get_if<TextPrim>(&prim)) {
        out += "<text x=\"";
        out += format_fixed(text->anchor_pos.x, 3);
        out += "\" y=\"";
        out += format_fixed(text->anchor_pos.y, 3);
        out += "\" font-family=\"sans-serif\" font-size=\"";
        out += format_fixed(text->size_px, 3);
        out += "\" fill=\"";
        detail::append_hex_color(out, text->fill);
        out += "\"";
        if (text->anchor == TextPrim::Anchor::End) out += " text-anchor=\"end\"";
        out += ">";
        detail::append_escaped(out, text->text);
        out += "</text>\n";
      }
    }
  }
  out += "</svg>\n";
  return out;
}

}  // namespace dandelion
