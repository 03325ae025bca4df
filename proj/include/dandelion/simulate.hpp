#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "dandelion/angles.hpp"
#include "dandelion/errors.hpp"
#include "dandelion/ingest.hpp"
#include "dandelion/track.hpp"
#include "dandelion/vec.hpp"

namespace dandelion {

// splitmix64: tiny, well-known 64-bit mixer. Chosen so any implementation of
// this tool, in any language, reproduces identical sessions from a seed.
struct Splitmix {
  std::uint64_t state = 0;

  explicit Splitmix(std::uint64_t seed = 0) : state(seed) {}

  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1): 53 high bits of the next output.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

enum class LayoutKind { Lecture, Teamwork };

struct SimParams {
  double duration = 3000.0;  // seconds
  double interval = 2.0;     // seconds between samples
  double walk_speed = 1.2;   // m/s
  double dwell_mean = 20.0;  // seconds, exponential mean
  double front_bias = 0.5;   // P(waypoint = front board) in Lecture mode
  std::uint64_t seed = 0;

  void check() const {
    if (!(duration > 0.0) || !(interval > 0.0) || !(walk_speed > 0.0) || !(dwell_mean > 0.0))
      throw InvalidParams("duration, interval, walk_speed and dwell_mean must be positive");
    if (!(front_bias >= 0.0 && front_bias <= 1.0))
      throw InvalidParams("front_bias must be in [0, 1]");
  }
};

namespace detail {

inline constexpr double room_width_m = 9.0;
inline constexpr double room_height_m = 7.0;
inline constexpr double desk_w = 0.6;
inline constexpr double desk_h = 0.5;

inline Polygon rect_poly(double cx, double cy, double w, double h) {
  return {{cx - w / 2, cy - h / 2},
          {cx + w / 2, cy - h / 2},
          {cx + w / 2, cy + h / 2},
          {cx - w / 2, cy + h / 2}};
}

inline void add_thirds_zones(ClassroomMap& map) {
  double h3 = map.height / 3.0;
  auto band = [&](double y0, double y1) -> Polygon {
    return {{0, y0}, {map.width, y0}, {map.width, y1}, {0, y1}};
  };
  // The board sits along y = height, so "front" is the top third.
  map.zones.push_back({"front", band(2 * h3, map.height)});
  map.zones.push_back({"middle", band(h3, 2 * h3)});
  map.zones.push_back({"back", band(0, h3)});
}

}  // namespace detail

/// Build one of the two classroom archetypes. Lecture: a fixed 4x6 desk
/// lattice plus a front board along y = height (the board is always the last
/// obstacle). Teamwork: 4 cluster centers rejection-sampled at least 2 m
/// apart and 1.2 m off the walls, 5 desks on a 0.7 m ring around each
/// (obstacles grouped five per cluster, in order). Both get front/middle/back
/// zones as equal horizontal thirds.
inline ClassroomMap make_layout(LayoutKind kind, Splitmix& rng) {
  ClassroomMap map;
  map.width = detail::room_width_m;
  map.height = detail::room_height_m;
  if (kind == LayoutKind::Lecture) {
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 6; ++c)
        map.obstacles.push_back(
            detail::rect_poly(0.75 + 1.5 * c, 1.3 + 1.1 * r, detail::desk_w, detail::desk_h));
    map.obstacles.push_back({{2.5, 6.85}, {6.5, 6.85}, {6.5, 7.0}, {2.5, 7.0}});  // board
  } else {
    const double lo = 1.2;
    std::vector<Vec2> centers;
    int attempts = 0;
    while (centers.size() < 4) {
      if (++attempts > 10000) throw LayoutFailure("cluster placement exceeded 10000 attempts");
      Vec2 c{lo + rng.uniform01() * (map.width - 2 * lo),
             lo + rng.uniform01() * (map.height - 2 * lo)};
      bool ok = true;
      for (Vec2 prev : centers)
        if (distance(prev, c) < 2.0) ok = false;
      if (ok) centers.push_back(c);
    }
    for (Vec2 c : centers) {
      for (int k = 0; k < 5; ++k) {
        double a = two_pi * k / 5.0;
        map.obstacles.push_back(detail::rect_poly(c.x + 0.7 * std::cos(a), c.y + 0.7 * std::sin(a),
                                                  detail::desk_w, detail::desk_h));
      }
    }
  }
  detail::add_thirds_zones(map);
  return map;
}

inline ClassroomMap make_layout(LayoutKind kind, std::uint64_t seed) {
  Splitmix rng(seed);
  return make_layout(kind, rng);
}

namespace detail {

struct Phase {
  double t0 = 0, t1 = 0;
  Vec2 p0, p1;
  double heading = 0;
  int label = 0;  // 0 walking, 1 dwelling
};

// Waypoint targets derived from the map. Lecture: the last obstacle is the
// board; teachers stand 0.5 m in front of it or at a desk. Teamwork:
// cluster centers recovered as the mean of each consecutive group of five
// desk centroids.
struct Waypoints {
  std::vector<Vec2> desk_targets;
  Vec2 board_anchor;
  double board_halfspan = 0.0;
  bool has_board = false;

  Waypoints(const ClassroomMap& map, LayoutKind kind) {
    std::vector<Vec2> desk_centers;
    for (const Polygon& p : map.obstacles) desk_centers.push_back(centroid(p));
    if (kind == LayoutKind::Lecture && !desk_centers.empty()) {
      BBox bb = bounding_box(map.obstacles.back());
      board_anchor = {(bb.x0 + bb.x1) / 2.0, bb.y0 - 0.5};
      board_halfspan = (bb.x1 - bb.x0) / 2.0 * 0.6;
      has_board = true;
      desk_centers.pop_back();
      desk_targets = std::move(desk_centers);
    } else if (kind == LayoutKind::Teamwork && !desk_centers.empty() &&
               desk_centers.size() % 5 == 0) {
      for (std::size_t g = 0; g < desk_centers.size(); g += 5) {
        Vec2 c;
        for (std::size_t k = 0; k < 5; ++k) c = c + desk_centers[g + k];
        desk_targets.push_back(c * 0.2);
      }
    } else {
      desk_targets = std::move(desk_centers);
    }
  }

  // Two draws per waypoint regardless of kind or outcome, so the stream
  // position depends only on the waypoint count.
  Vec2 pick(LayoutKind kind, double front_bias, const ClassroomMap& map, Splitmix& rng) const {
    double u_choice = rng.uniform01();
    double u_target = rng.uniform01();
    if (kind == LayoutKind::Lecture && has_board && u_choice < front_bias)
      return {board_anchor.x + (u_target - 0.5) * 2.0 * board_halfspan, board_anchor.y};
    if (desk_targets.empty()) return {map.width / 2.0, map.height / 2.0};
    auto idx = static_cast<std::size_t>(u_target * static_cast<double>(desk_targets.size()));
    if (idx >= desk_targets.size()) idx = desk_targets.size() - 1;
    return desk_targets[idx];
  }
};

inline double face_nearest_desk(Vec2 pos, const ClassroomMap& map, double fallback) {
  double best_d2 = -1.0;
  Vec2 best;
  for (const Polygon& p : map.obstacles) {
    Vec2 c = centroid(p);
    double d2 = dot(c - pos, c - pos);
    if (best_d2 < 0.0 || d2 < best_d2) {
      best_d2 = d2;
      best = c;
    }
  }
  if (best_d2 < 0.0) return fallback;
  Vec2 d = best - pos;
  if (norm(d) < 1e-12) return fallback;
  return normalize_heading(std::atan2(d.y, d.x));
}

}  // namespace detail

/// Deterministic session generator: walk to a waypoint at walk_speed with
/// heading along the motion, dwell there for an exponential time facing the
/// nearest desk, repeat; sampled every `interval` seconds from t = 0 to
/// t = duration inclusive. Walking samples get label 0, dwelling samples
/// label 1. The whole session is a pure function of (map, kind, params, rng
/// stream position).
inline Track simulate_session(const ClassroomMap& map, LayoutKind kind, const SimParams& params,
                              Splitmix& rng) {
  params.check();
  if (!(map.width > 0.0) || !(map.height > 0.0)) throw InvalidParams("map has no area");

  const detail::Waypoints waypoints(map, kind);
  std::vector<detail::Phase> phases;
  Vec2 pos{map.width / 2.0, map.height / 2.0};
  double t = 0.0;
  double last_heading = 0.0;
  int guard = 0;
  while (t <= params.duration) {
    if (++guard > 10'000'000) throw Error("simulation generated too many phases");
    Vec2 target = waypoints.pick(kind, params.front_bias, map, rng);
    double dist = distance(pos, target);
    if (dist > 1e-12) {
      detail::Phase walk;
      walk.t0 = t;
      walk.t1 = t + dist / params.walk_speed;
      walk.p0 = pos;
      walk.p1 = target;
      walk.heading = normalize_heading(std::atan2(target.y - pos.y, target.x - pos.x));
      walk.label = 0;
      last_heading = walk.heading;
      phases.push_back(walk);
      t = walk.t1;
      pos = target;
    }
    double dwell = -params.dwell_mean * std::log1p(-rng.uniform01());
    if (dwell > 0.0) {
      detail::Phase stay;
      stay.t0 = t;
      stay.t1 = t + dwell;
      stay.p0 = stay.p1 = pos;
      stay.heading = detail::face_nearest_desk(pos, map, last_heading);
      stay.label = 1;
      phases.push_back(stay);
      t = stay.t1;
    }
  }

  Track track;
  track.interval = params.interval;
  track.meta.session_id =
      (kind == LayoutKind::Lecture ? "lecture-" : "teamwork-") + std::to_string(params.seed);
  track.meta.subject_id = "sim-teacher";
  track.meta.session_duration = params.duration;

  const auto k_last = static_cast<long long>(std::floor(params.duration / params.interval + 1e-9));
  std::size_t ph = 0;
  for (long long k = 0; k <= k_last; ++k) {
    const double tau = static_cast<double>(k) * params.interval;
    while (ph + 1 < phases.size() && phases[ph].t1 <= tau) ++ph;
    const detail::Phase& p = phases[ph];
    TrackSample s;
    s.t = tau;
    Vec2 at = p.p0;
    if (p.t1 > p.t0 && p.p1 != p.p0) {
      double u = std::clamp((tau - p.t0) / (p.t1 - p.t0), 0.0, 1.0);
      at = p.p0 + (p.p1 - p.p0) * u;
    }
    s.x = std::clamp(at.x, 0.0, map.width);
    s.y = std::clamp(at.y, 0.0, map.height);
    s.heading = p.heading;
    s.label = p.label;
    track.samples.push_back(s);
  }
  return track;
}

inline Track simulate_session(const ClassroomMap& map, LayoutKind kind, const SimParams& params) {
  Splitmix rng(params.seed);
  return simulate_session(map, kind, params, rng);
}

/// One-stream pipeline: layout first (Teamwork consumes draws, Lecture none),
/// then the session from the same stream.
inline std::pair<ClassroomMap, Track> simulate_layout_and_session(LayoutKind kind,
                                                                  const SimParams& params) {
  Splitmix rng(params.seed);
  ClassroomMap map = make_layout(kind, rng);
  Track track = simulate_session(map, kind, params, rng);
  return {std::move(map), std::move(track)};
}

}  // namespace dandelion
