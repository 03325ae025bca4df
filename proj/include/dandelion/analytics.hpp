#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "dandelion/angles.hpp"
#include "dandelion/grid.hpp"
#include "dandelion/track.hpp"

namespace dandelion {

// Analytics defaults: 0.5 m cells, a 3 m / 60 deg attention cone, and stops
// of at least 6 s (three samples at the 2 s logging rate) below 0.3 m/s.
inline constexpr double default_analytics_cell_m = 0.5;
inline constexpr double default_cone_range_m = 3.0;
inline constexpr double default_cone_half_angle_rad = 60.0 * pi / 180.0;
inline constexpr double default_stop_speed_mps = 0.3;
inline constexpr double default_min_stop_duration_s = 6.0;

struct OccupancyGrid {
  Grid grid;                      // seconds per cell
  double overflow_seconds = 0.0;  // samples outside the half-open room tiling
};

struct AttentionCone {
  double range = default_cone_range_m;           // meters
  double half_angle = default_cone_half_angle_rad;  // radians

  void check() const {
    if (!(range > 0.0)) throw InvalidParams("cone range must be positive");
    if (!(half_angle > 0.0 && half_angle < pi))
      throw InvalidParams("cone half_angle must be in (0, pi)");
  }
};

struct Stop {
  std::size_t start_index = 0;
  std::size_t end_index = 0;  // inclusive; dwell covers [t[start], t[end]]
  Vec2 centroid;
  double duration = 0.0;  // seconds
};

struct MobilityStats {
  double path_length = 0.0;  // meters
  double mean_speed = 0.0;   // m/s over tracked time
  std::vector<Stop> stops;
};

struct TemporalZoneMatrix {
  std::vector<std::string> zones;  // map zones in declaration order + "elsewhere"
  int n_bins = 0;
  std::vector<double> values;  // seconds, index = zone * n_bins + bin

  double& at(std::size_t zone, int bin) { return values[zone * n_bins + bin]; }
  double at(std::size_t zone, int bin) const { return values[zone * n_bins + bin]; }
};

struct HeadingHistogram {
  int n_bins = 0;
  std::vector<double> values;  // seconds per direction bin over [0, 2*pi)
};

namespace detail {

inline double require_interval(const Track& track, const char* op) {
  if (!track.interval) throw InvalidParams(std::string(op) + " needs a resampled track");
  return *track.interval;
}

}  // namespace detail

/// Location pattern: seconds of dwell per cell. Samples outside the grid's
/// half-open tiling land in the overflow bucket, so grid + overflow always
/// conserves total tracked time.
inline OccupancyGrid occupancy_grid(const Track& track, const ClassroomMap& map,
                                    double cell_size = default_analytics_cell_m) {
  const double interval = detail::require_interval(track, "occupancy_grid");
  OccupancyGrid out;
  out.grid = make_room_grid(map, cell_size);
  for (const auto& s : track.samples) {
    int cx = static_cast<int>(std::floor(s.x / cell_size));
    int cy = static_cast<int>(std::floor(s.y / cell_size));
    if (cx < 0 || cy < 0 || cx >= out.grid.cols || cy >= out.grid.rows)
      out.overflow_seconds += interval;
    else
      out.grid.at(cx, cy) += interval;
  }
  return out;
}

/// Attention pattern: seconds during which each cell center lay inside the
/// viewing cone (within `range` of the teacher and `half_angle` of the
/// heading). This per-sample-per-cell definition is the oracle; keep it
/// brute force.
inline Grid attention_grid(const Track& track, const ClassroomMap& map, double cell_size,
                           const AttentionCone& cone) {
  const double interval = detail::require_interval(track, "attention_grid");
  cone.check();
  Grid grid = make_room_grid(map, cell_size);
  for (const auto& s : track.samples) {
    for (int cy = 0; cy < grid.rows; ++cy) {
      for (int cx = 0; cx < grid.cols; ++cx) {
        Vec2 c = grid.cell_center(cx, cy);
        double dx = c.x - s.x;
        double dy = c.y - s.y;
        if (std::hypot(dx, dy) > cone.range) continue;
        if (std::abs(short_arc(s.heading, std::atan2(dy, dx))) > cone.half_angle) continue;
        grid.at(cx, cy) += interval;
      }
    }
  }
  return grid;
}

inline Grid attention_grid(const Track& track, const ClassroomMap& map,
                           double cell_size = default_analytics_cell_m) {
  return attention_grid(track, map, cell_size, AttentionCone{});
}

/// Direction histogram: bin k covers [2*pi*k/n, 2*pi*(k+1)/n).
inline HeadingHistogram heading_histogram(const Track& track, int n_bins) {
  const double interval = detail::require_interval(track, "heading_histogram");
  if (n_bins < 1) throw InvalidParams("n_bins must be >= 1");
  HeadingHistogram h;
  h.n_bins = n_bins;
  h.values.assign(static_cast<std::size_t>(n_bins), 0.0);
  for (const auto& s : track.samples) {
    int bin = static_cast<int>(std::floor(s.heading * n_bins / two_pi));
    bin = std::clamp(bin, 0, n_bins - 1);  // guard rounding at the seam
    h.values[static_cast<std::size_t>(bin)] += interval;
  }
  return h;
}

/// Mobility pattern: total path length within segments, mean speed over
/// tracked time, and detected stops. A stop is a maximal run of samples whose
/// instantaneous speed (distance to the next sample over the interval) stays
/// below stop_speed, kept when the dwell lasts at least min_stop_duration.
inline MobilityStats mobility_stats(const Track& track,
                                    double stop_speed = default_stop_speed_mps,
                                    double min_stop_duration = default_min_stop_duration_s) {
  const double interval = detail::require_interval(track, "mobility_stats");
  if (!(stop_speed > 0.0) || !(min_stop_duration > 0.0))
    throw InvalidParams("stop_speed and min_stop_duration must be positive");
  const auto& ss = track.samples;
  MobilityStats out;

  std::vector<std::size_t> bounds;  // segment boundaries: [b[k], b[k+1])
  bounds.push_back(0);
  for (std::size_t brk : track.segment_breaks) bounds.push_back(brk);
  bounds.push_back(ss.size());

  for (std::size_t k = 0; k + 1 < bounds.size(); ++k) {
    const std::size_t beg = bounds[k];
    const std::size_t end = bounds[k + 1];
    if (end - beg < 2) continue;
    // Instantaneous speeds exist for beg..end-2.
    std::size_t run_start = beg;
    bool in_run = false;
    auto close_run = [&](std::size_t last_slow) {
      // Run of slow samples run_start..last_slow; dwell extends to the next
      // sample, which is still at the stop location.
      std::size_t end_index = last_slow + 1;
      double duration = static_cast<double>(end_index - run_start) * interval;
      if (duration >= min_stop_duration) {
        Vec2 c;
        for (std::size_t i = run_start; i <= end_index; ++i) c = c + Vec2{ss[i].x, ss[i].y};
        c = c * (1.0 / static_cast<double>(end_index - run_start + 1));
        out.stops.push_back({run_start, end_index, c, duration});
      }
      in_run = false;
    };
    for (std::size_t i = beg; i + 1 < end; ++i) {
      double step = distance({ss[i].x, ss[i].y}, {ss[i + 1].x, ss[i + 1].y});
      out.path_length += step;
      bool slow = step / interval < stop_speed;
      if (slow && !in_run) {
        run_start = i;
        in_run = true;
      } else if (!slow && in_run) {
        close_run(i - 1);
      }
    }
    if (in_run) close_run(end - 2);
  }

  double tracked = track.tracked_seconds();
  out.mean_speed = tracked > 0.0 ? out.path_length / tracked : 0.0;
  return out;
}

/// Temporal pattern: seconds per (zone, session-time bin). Bins partition
/// [t_first, t_last] equally with the last bin closed; a point inside several
/// overlapping zones charges the first one in declaration order, everything
/// else charges the trailing "elsewhere" row.
inline TemporalZoneMatrix temporal_zone_occupancy(const Track& track, const ClassroomMap& map,
                                                  int n_bins) {
  const double interval = detail::require_interval(track, "temporal_zone_occupancy");
  if (n_bins < 1) throw InvalidParams("n_bins must be >= 1");
  if (track.samples.empty()) throw EmptyTrack();
  TemporalZoneMatrix m;
  for (const auto& z : map.zones) m.zones.push_back(z.name);
  m.zones.push_back("elsewhere");
  m.n_bins = n_bins;
  m.values.assign(m.zones.size() * static_cast<std::size_t>(n_bins), 0.0);

  const double t0 = track.samples.front().t;
  const double t1 = track.samples.back().t;
  const double span = t1 - t0;
  for (const auto& s : track.samples) {
    int bin = span > 0.0 ? static_cast<int>(std::floor((s.t - t0) / span * n_bins)) : 0;
    bin = std::clamp(bin, 0, n_bins - 1);  // t = t_last joins the closed last bin
    std::size_t zone = map.zones.size();   // "elsewhere"
    for (std::size_t z = 0; z < map.zones.size(); ++z) {
      if (polygon_contains(map.zones[z].polygon, {s.x, s.y})) {
        zone = z;
        break;
      }
    }
    m.at(zone, bin) += interval;
  }
  return m;
}

// ---- Combined report ----

struct MetricsParams {
  double cell_size = default_analytics_cell_m;
  AttentionCone cone;
  int histogram_bins = 16;
  int temporal_bins = 10;
  double stop_speed = default_stop_speed_mps;
  double min_stop_duration = default_min_stop_duration_s;
};

namespace detail {

inline nlohmann::json grid_to_json(const Grid& g) {
  return {{"cell_size", g.cell_size}, {"origin", {g.x0, g.y0}}, {"cols", g.cols},
          {"rows", g.rows},           {"values", g.values}};
}

}  // namespace detail

/// Single JSON report with all four proxemics patterns.
inline nlohmann::json metrics_report(const Track& track, const ClassroomMap& map,
                                     const MetricsParams& params = {}) {
  OccupancyGrid occ = occupancy_grid(track, map, params.cell_size);
  Grid att = attention_grid(track, map, params.cell_size, params.cone);
  HeadingHistogram hist = heading_histogram(track, params.histogram_bins);
  MobilityStats mob = mobility_stats(track, params.stop_speed, params.min_stop_duration);
  TemporalZoneMatrix tzm = temporal_zone_occupancy(track, map, params.temporal_bins);

  nlohmann::json j;
  j["occupancy"] = detail::grid_to_json(occ.grid);
  j["occupancy"]["overflow_seconds"] = occ.overflow_seconds;
  j["attention"] = detail::grid_to_json(att);
  j["attention"]["cone"] = {{"range_m", params.cone.range},
                            {"half_angle_rad", params.cone.half_angle}};
  j["histogram"] = {{"n_bins", hist.n_bins}, {"values", hist.values}};
  auto stops = nlohmann::json::array();
  for (const auto& s : mob.stops)
    stops.push_back({{"start_index", s.start_index},
                     {"end_index", s.end_index},
                     {"centroid", {s.centroid.x, s.centroid.y}},
                     {"duration_s", s.duration}});
  j["mobility"] = {{"path_length_m", mob.path_length},
                   {"mean_speed_mps", mob.mean_speed},
                   {"stops", std::move(stops)}};
  auto rows = nlohmann::json::array();
  for (std::size_t z = 0; z < tzm.zones.size(); ++z) {
    auto row = nlohmann::json::array();
    for (int b = 0; b < tzm.n_bins; ++b) row.push_back(tzm.at(z, b));
    rows.push_back(std::move(row));
  }
  j["temporal"] = {{"zones", tzm.zones}, {"n_bins", tzm.n_bins}, {"values", std::move(rows)}};
  return j;
}

}  // namespace dandelion
