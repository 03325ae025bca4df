#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>
#include <sstream>

#include "dandelion/analytics.hpp"
#include "dandelion/ingest.hpp"
#include "dandelion/simulate.hpp"

using namespace dandelion;

TEST_CASE("splitmix64 reproduces the reference sequence") {
  Splitmix rng(0);
  CHECK(rng.next() == 0xE220A8397B1DCDAFULL);
  CHECK(rng.state == 0x9E3779B97F4A7C15ULL);
  CHECK(rng.next() == 0x6E789E6AA1B965F4ULL);
  CHECK(rng.state == 0x3C6EF372FE94F82AULL);

  Splitmix u(0);
  CHECK(u.uniform01() == 0.8833108082136426);

  Splitmix r(12345);
  for (int i = 0; i < 10000; ++i) {
    double v = r.uniform01();
    CHECK(v >= 0.0);
    CHECK(v < 1.0);
  }
}

TEST_CASE("lecture layout: fixed desk lattice, board, thirds zones") {
  ClassroomMap map = make_layout(LayoutKind::Lecture, 99);
  CHECK(map.width == 9.0);
  CHECK(map.height == 7.0);
  REQUIRE(map.obstacles.size() == 25);  // 24 desks + front board
  check_map(map);  // everything inside the room

  // layout is seed-independent
  ClassroomMap other = make_layout(LayoutKind::Lecture, 12345);
  CHECK(other.obstacles == map.obstacles);

  // the board is the last obstacle, hugging the y = height wall
  BBox board = bounding_box(map.obstacles.back());
  CHECK(board.y1 == 7.0);
  CHECK(board.y0 > 6.5);
  CHECK(board.x1 - board.x0 > 3.0);

  REQUIRE(map.zones.size() == 3);
  CHECK(map.zones[0].name == "front");
  CHECK(map.zones[1].name == "middle");
  CHECK(map.zones[2].name == "back");
  CHECK(polygon_contains(map.zones[0].polygon, {4.5, 6.5}));   // near the board
  CHECK(polygon_contains(map.zones[2].polygon, {4.5, 0.5}));
  CHECK_FALSE(polygon_contains(map.zones[0].polygon, {4.5, 3.0}));
}

TEST_CASE("teamwork layout: 4 well-separated clusters of 5 desks") {
  for (std::uint64_t seed : {1ULL, 7ULL, 42ULL, 1000ULL}) {
    ClassroomMap map = make_layout(LayoutKind::Teamwork, seed);
    REQUIRE(map.obstacles.size() == 20);
    check_map(map);
    std::vector<Vec2> centers;
    for (std::size_t g = 0; g < 20; g += 5) {
      Vec2 c;
      for (std::size_t k = 0; k < 5; ++k) c = c + centroid(map.obstacles[g + k]);
      centers.push_back(c * 0.2);
    }
    for (std::size_t i = 0; i < centers.size(); ++i) {
      CHECK(centers[i].x >= 1.2 - 1e-9);
      CHECK(centers[i].x <= map.width - 1.2 + 1e-9);
      CHECK(centers[i].y >= 1.2 - 1e-9);
      CHECK(centers[i].y <= map.height - 1.2 + 1e-9);
      for (std::size_t k = 0; k < i; ++k) CHECK(distance(centers[i], centers[k]) >= 2.0 - 1e-9);
    }
    // different seeds give different furniture
    ClassroomMap map2 = make_layout(LayoutKind::Teamwork, seed + 1);
    CHECK(map2.obstacles != map.obstacles);
  }
}

TEST_CASE("simulated sessions sample the grid and respect kinematics") {
  SimParams p;
  p.duration = 600.0;
  p.interval = 2.0;
  p.seed = 7;
  auto [map, track] = simulate_layout_and_session(LayoutKind::Lecture, p);

  REQUIRE(track.samples.size() == 301);  // duration/interval + 1
  CHECK(track.interval == 2.0);
  CHECK(track.segment_breaks.empty());
  CHECK(track.meta.session_id == "lecture-7");
  CHECK(track.meta.subject_id == "sim-teacher");
  CHECK(track.meta.session_duration == 600.0);

  bool saw_walk = false, saw_dwell = false;
  for (std::size_t i = 0; i < track.samples.size(); ++i) {
    const auto& s = track.samples[i];
    CHECK(s.t == 2.0 * i);
    CHECK(s.x >= 0.0);
    CHECK(s.x <= map.width);
    CHECK(s.y >= 0.0);
    CHECK(s.y <= map.height);
    CHECK(s.heading >= 0.0);
    CHECK(s.heading < two_pi);
    REQUIRE(s.label.has_value());
    CHECK((*s.label == 0 || *s.label == 1));
    saw_walk = saw_walk || *s.label == 0;
    saw_dwell = saw_dwell || *s.label == 1;
  }
  CHECK(saw_walk);
  CHECK(saw_dwell);

  // displacement between samples never exceeds what walking allows
  const double max_step = p.walk_speed * p.interval + 1e-9;
  for (std::size_t i = 1; i < track.samples.size(); ++i) {
    const auto& a = track.samples[i - 1];
    const auto& b = track.samples[i];
    CHECK(distance({a.x, a.y}, {b.x, b.y}) <= max_step);
    // mid-walk samples face the direction of travel
    if (*a.label == 0 && *b.label == 0 && a.heading == b.heading) {
      double step = distance({a.x, a.y}, {b.x, b.y});
      if (std::abs(step - p.walk_speed * p.interval) < 1e-9) {
        double dir = normalize_heading(std::atan2(b.y - a.y, b.x - a.x));
        CHECK(std::abs(short_arc(dir, a.heading)) < 1e-9);
      }
    }
  }

  // the session is valid by the ingest rules
  CHECK(validate_track(track, map, p.walk_speed + 0.1).empty());
}

TEST_CASE("simulation is a pure function of the seed") {
  SimParams p;
  p.duration = 400.0;
  p.seed = 42;
  for (LayoutKind kind : {LayoutKind::Lecture, LayoutKind::Teamwork}) {
    auto [m1, t1] = simulate_layout_and_session(kind, p);
    auto [m2, t2] = simulate_layout_and_session(kind, p);
    std::ostringstream a, b;
    write_track_csv(a, t1);
    write_track_csv(b, t2);
    CHECK(a.str() == b.str());
    CHECK(m1.obstacles == m2.obstacles);

    SimParams q = p;
    q.seed = 43;
    auto [m3, t3] = simulate_layout_and_session(kind, q);
    std::ostringstream c;
    write_track_csv(c, t3);
    CHECK(a.str() != c.str());
  }
}

TEST_CASE("front bias pulls lecture time toward the board") {
  auto front_fraction = [](double bias, std::uint64_t seed) {
    SimParams p;
    p.duration = 1200.0;
    p.front_bias = bias;
    p.seed = seed;
    auto [map, track] = simulate_layout_and_session(LayoutKind::Lecture, p);
    TemporalZoneMatrix m = temporal_zone_occupancy(track, map, 1);
    double front = m.at(0, 0);
    double total = track.tracked_seconds();
    return front / total;
  };
  double high = 0, low = 0;
  for (std::uint64_t s = 0; s < 5; ++s) {
    high += front_fraction(0.9, s);
    low += front_fraction(0.1, s);
  }
  CHECK(high > low);
}

TEST_CASE("simulate rejects bad parameters") {
  SimParams p;
  p.duration = 0.0;
  CHECK_THROWS_AS(simulate_layout_and_session(LayoutKind::Lecture, p), InvalidParams);
  SimParams q;
  q.front_bias = 1.5;
  CHECK_THROWS_AS(simulate_layout_and_session(LayoutKind::Lecture, q), InvalidParams);
  SimParams r;
  r.walk_speed = -1.0;
  CHECK_THROWS_AS(simulate_layout_and_session(LayoutKind::Teamwork, r), InvalidParams);
}
