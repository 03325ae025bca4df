#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "dandelion/ingest.hpp"
#include "dandelion/scene.hpp"
#include "dandelion/svg.hpp"

using namespace dandelion;

namespace {

ClassroomMap small_map() {
  ClassroomMap m;
  m.width = 4.0;
  m.height = 3.0;
  m.obstacles.push_back({{1, 1}, {2, 1}, {2, 2}, {1, 2}});
  return m;
}

Track three_samples() {
  Track t;
  t.interval = 2.0;
  t.samples = {{0.0, 1.0, 1.0, 0.0, 0}, {2.0, 2.0, 1.5, 1.0, 1}, {4.0, 3.0, 2.0, 2.0, 0}};
  return t;
}

}  // namespace

TEST_CASE("color_for maps time onto the ramp and labels onto the palette") {
  Track t = three_samples();
  Style style;
  style.alpha = 0.5;

  CHECK(color_for(t.samples[0], t, style) == style.colormap.sample(0.0));
  CHECK(color_for(t.samples[1], t, style) == style.colormap.sample(0.5));
  CHECK(color_for(t.samples[2], t, style) == style.colormap.sample(1.0));

  style.coding = Coding::Label;
  CHECK(color_for(t.samples[1], t, style) == style.colormap.swatch(1));

  TrackSample bare = t.samples[0];
  bare.label.reset();
  CHECK_THROWS_AS(color_for(bare, t, style), MissingLabel);

  // single-sample track takes the ramp start
  Track one;
  one.samples = {t.samples[0]};
  Style ts;
  CHECK(color_for(one.samples[0], one, ts) == ts.colormap.sample(0.0));
}

TEST_CASE("build_scene layers: room, obstacles, one spotlight per sample, lines, legend") {
  Track t = three_samples();
  ClassroomMap map = small_map();
  Style style;
  Viewport vp = make_viewport(map, 400);
  Scene scene = build_scene(t, map, style, vp);

  CHECK(scene.layers[kLayerBackground].size() == 1);
  CHECK(scene.layers[kLayerObstacles].size() == 1);
  REQUIRE(scene.layers[kLayerMarkers].size() == 3);
  REQUIRE(scene.layers[kLayerTrajectories].size() == 1);
  CHECK_FALSE(scene.layers[kLayerLegend].empty());

  // markers are triangles with the sample's color; first marker = first sample
  const auto& tri = std::get<PolyPrim>(scene.layers[kLayerMarkers][0]);
  REQUIRE(tri.points.size() == 3);
  Vec2 apex = world_to_screen({1.0, 1.0}, vp);
  CHECK(tri.points[0].x == Catch::Approx(apex.x));
  CHECK(tri.points[0].y == Catch::Approx(apex.y));
  CHECK(tri.alpha == style.alpha);  // opacity is not 8-bit-rounded at scene level

  // trajectory has one vertex per sample
  const auto& line = std::get<LinePrim>(scene.layers[kLayerTrajectories][0]);
  CHECK(line.points.size() == 3);

  // segment break splits the trajectory but not the markers
  Track broken = t;
  broken.segment_breaks = {1};
  Scene scene2 = build_scene(broken, map, style, vp);
  CHECK(scene2.layers[kLayerMarkers].size() == 3);
  CHECK(scene2.layers[kLayerTrajectories].size() == 1);  // 1-sample head dropped

  Track empty;
  CHECK_THROWS_AS(build_scene(empty, map, style, vp), EmptyTrack);
}

TEST_CASE("label coding draws one swatch per distinct label") {
  Track t = three_samples();
  ClassroomMap map = small_map();
  Style style;
  style.coding = Coding::Label;
  style.colormap.mode = ColorMap::Mode::Categorical;
  Scene scene = build_scene(t, map, style, make_viewport(map, 400));
  // labels {0, 1}: each contributes a swatch rect + a text
  CHECK(scene.layers[kLayerLegend].size() == 4);
}

TEST_CASE("emit_svg is deterministic and structurally sound") {
  Track t = three_samples();
  ClassroomMap map = small_map();
  Style style;
  Viewport vp = make_viewport(map, 400);
  std::string svg1 = emit_svg(build_scene(t, map, style, vp));
  std::string svg2 = emit_svg(build_scene(t, map, style, vp));
  CHECK(svg1 == svg2);

  CHECK(svg1.rfind("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n", 0) == 0);
  CHECK(svg1.find("<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\"") !=
        std::string::npos);
  CHECK(svg1.find("</svg>\n") == svg1.size() - 7);
  CHECK(svg1.find('\r') == std::string::npos);
  // lowercase hex colors only
  CHECK(svg1.find("#CDCDCD") == std::string::npos);
  CHECK(svg1.find("#cdcdcd") != std::string::npos);
  // coordinates carry exactly 3 decimals, opacities 4
  CHECK(svg1.find("fill-opacity=\"1.0000\"") != std::string::npos);
  CHECK(svg1.find("fill-opacity=\"0.1200\"") != std::string::npos);  // spotlight alpha, unrounded
  CHECK(svg1.find("stroke-opacity=\"0.8500\"") != std::string::npos);
  // legend endpoints with units
  CHECK(svg1.find(">0 s</text>") != std::string::npos);
  CHECK(svg1.find(">4 s</text>") != std::string::npos);
  CHECK(svg1.find("text-anchor=\"end\"") != std::string::npos);

  // element order follows layer order: background rect before first triangle
  auto bg = svg1.find("<polygon");
  auto line = svg1.find("<polyline");
  CHECK(bg < line);
}

TEST_CASE("style JSON applies overrides and rejects unknown keys") {
  Style def;
  nlohmann::json j = nlohmann::json::parse(R"({
    "length_m": 1.5,
    "half_angle_deg": 30,
    "alpha": 0.2,
    "coding": "label",
    "trajectory": {"rgb": [10, 20, 30], "width_px": 2.5, "opacity": 0.5},
    "supersample": 2
  })");
  Style s = style_from_json(j);
  CHECK(s.spotlight.length == 1.5);
  CHECK(s.spotlight.half_angle == Catch::Approx(pi / 6));
  CHECK(s.alpha == 0.2);
  CHECK(s.coding == Coding::Label);
  CHECK(s.trajectory.rgb == Rgb8{10, 20, 30});
  CHECK(s.trajectory.width_px == 2.5);
  CHECK(s.supersample == 2);
  // untouched keys keep defaults
  CHECK(s.background.room == def.background.room);
  CHECK(s.colormap.stops.size() == def.colormap.stops.size());

  CHECK_THROWS_AS(style_from_json(nlohmann::json::parse(R"({"alfa": 0.5})")), InvalidParams);
  CHECK_THROWS_AS(style_from_json(nlohmann::json::parse(R"({"colormap": {"ramp": []}})")),
                  InvalidParams);
  CHECK_THROWS_AS(style_from_json(nlohmann::json::parse(R"({"alpha": 0})")), InvalidParams);
  CHECK_THROWS_AS(style_from_json(nlohmann::json::parse(R"({"supersample": 3})")), InvalidParams);
  CHECK_THROWS_AS(style_from_json(nlohmann::json::parse(R"({"coding": "rainbow"})")),
                  InvalidParams);
  CHECK_THROWS_AS(
      style_from_json(nlohmann::json::parse(R"({"coding": "label", "colormap": {"palette": []}})")),
      InvalidParams);
  CHECK_THROWS_AS(
      style_from_json(nlohmann::json::parse(
          R"({"colormap": {"stops": [[0.2, [0,0,0]], [1, [255,255,255]]]}})")),
      InvalidParams);

  nlohmann::json stops = nlohmann::json::parse(
      R"({"colormap": {"stops": [[0, [0,0,0]], [1, [255,255,255]]]}})");
  Style s2 = style_from_json(stops);
  CHECK(s2.colormap.sample(0.5) == Rgb8{128, 128, 128});
}
