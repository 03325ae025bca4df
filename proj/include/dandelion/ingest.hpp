#pragma once

#include <charconv>
#include <cmath>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "dandelion/angles.hpp"
#include "dandelion/errors.hpp"
#include "dandelion/numfmt.hpp"
#include "dandelion/track.hpp"

namespace dandelion {

enum class TrackFormat { Csv, Json };
enum class HeadingUnit { Radians, Degrees };

// Ingest defaults. The study data behind this tool was logged every two
// seconds; max_gap bridges short dropouts and splits real absences.
inline constexpr double default_interval_s = 2.0;
inline constexpr double default_max_gap_s = 3.0 * default_interval_s;
inline constexpr double default_max_speed_mps = 3.0;

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return std::string(s.substr(b, e - b));
}

inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      out.push_back(trim(std::string_view(line).substr(start)));
      break;
    }
    out.push_back(trim(std::string_view(line).substr(start, comma - start)));
    start = comma + 1;
  }
  return out;
}

inline double parse_number(const std::string& field, std::size_t record, const char* col) {
  double v = 0.0;
  const char* first = field.data();
  const char* last = first + field.size();
  if (!field.empty() && field[0] == '+') ++first;  // from_chars rejects leading '+'
  auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last)
    throw ParseError(record, std::string("field '") + col + "' is not a number: \"" + field + "\"");
  return v;
}

inline int parse_label(const std::string& field, std::size_t record) {
  int v = 0;
  const char* first = field.data();
  const char* last = first + field.size();
  if (!field.empty() && field[0] == '+') ++first;
  auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last)
    throw ParseError(record, "field 'label' is not an integer: \"" + field + "\"");
  return v;
}

inline double to_radians(double heading, HeadingUnit unit) {
  if (unit == HeadingUnit::Degrees) heading = heading * pi / 180.0;
  // Non-finite values pass through so validate_track can flag them.
  return std::isfinite(heading) ? normalize_heading(heading) : heading;
}

}  // namespace detail

/// Parse a raw tracking log. The result is in file order and unvalidated:
/// non-finite or out-of-order samples survive so validate_track can report
/// them. CSV header must be `t,x,y,heading` optionally followed by `,label`.
inline Track parse_track(std::istream& in, TrackFormat format,
                         HeadingUnit unit = HeadingUnit::Radians) {
  Track track;
  if (format == TrackFormat::Csv) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError(0, "missing header line");
    auto header = detail::split_csv(line);
    bool has_label;
    if (header == std::vector<std::string>{"t", "x", "y", "heading"}) {
      has_label = false;
    } else if (header == std::vector<std::string>{"t", "x", "y", "heading", "label"}) {
      has_label = true;
    } else {
      throw ParseError(0, "header must be t,x,y,heading[,label], got \"" + line + "\"");
    }
    std::size_t record = 0;
    while (std::getline(in, line)) {
      if (detail::trim(line).empty()) continue;
      ++record;
      auto fields = detail::split_csv(line);
      std::size_t want = has_label ? 5 : 4;
      if (fields.size() != want)
        throw ParseError(record, "expected " + std::to_string(want) + " fields, got " +
                                     std::to_string(fields.size()));
      TrackSample s;
      s.t = detail::parse_number(fields[0], record, "t");
      s.x = detail::parse_number(fields[1], record, "x");
      s.y = detail::parse_number(fields[2], record, "y");
      s.heading = detail::to_radians(detail::parse_number(fields[3], record, "heading"), unit);
      if (has_label) s.label = detail::parse_label(fields[4], record);
      track.samples.push_back(s);
    }
  } else {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(0, std::string("invalid JSON: ") + e.what());
    }
    try {
      if (j.contains("meta")) {
        const auto& m = j.at("meta");
        track.meta.session_id = m.value("session_id", std::string());
        track.meta.subject_id = m.value("subject_id", std::string());
        track.meta.session_duration = m.value("session_duration", 0.0);
      }
      if (j.contains("interval") && !j.at("interval").is_null())
        track.interval = j.at("interval").get<double>();
      std::size_t record = 0;
      for (const auto& js : j.at("samples")) {
        ++record;
        TrackSample s;
        s.t = js.at("t").get<double>();
        s.x = js.at("x").get<double>();
        s.y = js.at("y").get<double>();
        s.heading = detail::to_radians(js.at("heading").get<double>(), unit);
        if (js.contains("label") && !js.at("label").is_null())
          s.label = js.at("label").get<int>();
        track.samples.push_back(s);
      }
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(track.samples.size() + 1, std::string("bad sample object: ") + e.what());
    }
  }
  if (track.samples.empty()) throw EmptyTrack();
  return track;
}

/// Serialize as the track CSV format: header, one sample per line, LF
/// endings, shortest round-trip numbers. The label column is emitted iff
/// any sample carries a label.
inline void write_track_csv(std::ostream& out, const Track& track) {
  bool has_label = false;
  for (const auto& s : track.samples)
    if (s.label) has_label = true;
  out << (has_label ? "t,x,y,heading,label\n" : "t,x,y,heading\n");
  for (const auto& s : track.samples) {
    out << format_double(s.t) << ',' << format_double(s.x) << ',' << format_double(s.y) << ','
        << format_double(s.heading);
    if (has_label) {
      out << ',';
      if (s.label) out << *s.label;
    }
    out << '\n';
  }
}

inline nlohmann::json track_to_json(const Track& track) {
  nlohmann::json j;
  j["meta"] = {{"session_id", track.meta.session_id},
               {"subject_id", track.meta.subject_id},
               {"session_duration", track.meta.session_duration}};
  j["interval"] = track.interval ? nlohmann::json(*track.interval) : nlohmann::json(nullptr);
  auto samples = nlohmann::json::array();
  for (const auto& s : track.samples) {
    nlohmann::json js = {{"t", s.t}, {"x", s.x}, {"y", s.y}, {"heading", s.heading}};
    if (s.label) js["label"] = *s.label;
    samples.push_back(std::move(js));
  }
  j["samples"] = std::move(samples);
  return j;
}

inline void write_track_json(std::ostream& out, const Track& track) {
  out << track_to_json(track).dump(2) << '\n';
}

/// Flag data problems without rejecting anything; issues are data.
inline std::vector<ValidationIssue> validate_track(const Track& track, const ClassroomMap& map,
                                                   double max_speed = default_max_speed_mps) {
  std::vector<ValidationIssue> issues;
  const auto& ss = track.samples;
  for (std::size_t i = 0; i < ss.size(); ++i) {
    const TrackSample& s = ss[i];
    std::ostringstream det;
    if (!std::isfinite(s.t) || !std::isfinite(s.x) || !std::isfinite(s.y) ||
        !std::isfinite(s.heading)) {
      det << "non-finite field in sample (t=" << s.t << " x=" << s.x << " y=" << s.y
          << " heading=" << s.heading << ")";
      issues.push_back({IssueKind::NonFinite, i, det.str()});
      continue;  // remaining checks are meaningless on this sample
    }
    if (s.heading < 0.0 || s.heading >= two_pi) {
      det << "heading " << s.heading << " outside [0, 2*pi)";
      issues.push_back({IssueKind::HeadingRange, i, det.str()});
    }
    if (s.x < 0.0 || s.x > map.width || s.y < 0.0 || s.y > map.height) {
      std::ostringstream d;
      d << "position (" << s.x << ", " << s.y << ") outside " << map.width << "x" << map.height
        << " m room";
      issues.push_back({IssueKind::OutOfBounds, i, d.str()});
    }
    if (i > 0 && std::isfinite(ss[i - 1].t)) {
      double dt = s.t - ss[i - 1].t;
      if (dt <= 0.0) {
        std::ostringstream d;
        d << "t=" << s.t << " does not increase over previous " << ss[i - 1].t;
        issues.push_back({IssueKind::TimeOrder, i, d.str()});
      } else if (std::isfinite(ss[i - 1].x) && std::isfinite(ss[i - 1].y)) {
        double v = distance({s.x, s.y}, {ss[i - 1].x, ss[i - 1].y}) / dt;
        if (v > max_speed) {
          std::ostringstream d;
          d << "speed " << v << " m/s exceeds " << max_speed << " m/s";
          issues.push_back({IssueKind::SpeedJump, i, d.str()});
        }
      }
    }
  }
  return issues;
}

/// Resample onto the uniform grid t = k*interval, k from ceil(t_first/interval)
/// to floor(t_last/interval) (endpoints snap onto the grid within 1e-9 s).
/// Positions interpolate linearly, headings along the shorter circular arc,
/// labels copy from the earlier bracketing sample. Input gaps longer than
/// max_gap get no synthesized samples; the first sample after such a gap is
/// recorded as a segment break. Existing segment_breaks are ignored; gaps are
/// re-derived from the time axis.
inline Track resample_uniform(const Track& track, double interval = default_interval_s,
                              double max_gap = default_max_gap_s) {
  if (!(interval > 0.0)) throw InvalidParams("interval must be positive");
  if (!(max_gap >= interval)) throw InvalidParams("max_gap must be >= interval");
  const auto& in = track.samples;
  if (in.empty()) throw EmptyTrack();
  for (std::size_t i = 1; i < in.size(); ++i)
    if (!(in[i].t > in[i - 1].t))
      throw InvalidParams("sample times must be strictly increasing (index " + std::to_string(i) +
                          ")");

  constexpr double snap = 1e-9;  // seconds
  const double t_first = in.front().t;
  const double t_last = in.back().t;
  const auto k_first = static_cast<long long>(std::ceil((t_first - snap) / interval));
  const auto k_last = static_cast<long long>(std::floor((t_last + snap) / interval));
  if (k_first > k_last) throw EmptyTrack("no grid points inside the track's time range");

  Track out;
  out.meta = track.meta;
  out.interval = interval;

  std::size_t j = 0;  // in[j].t <= tau < in[j+1].t (bracketing cursor)
  bool pending_break = false;
  for (long long k = k_first; k <= k_last; ++k) {
    const double tau = static_cast<double>(k) * interval;
    while (j + 1 < in.size() && in[j + 1].t <= tau + snap) ++j;

    TrackSample s;
    s.t = tau;
    if (std::abs(in[j].t - tau) <= snap || j + 1 == in.size()) {
      s.x = in[j].x;
      s.y = in[j].y;
      s.heading = normalize_heading(in[j].heading);
      s.label = in[j].label;
    } else {
      const TrackSample& a = in[j];
      const TrackSample& b = in[j + 1];
      if (b.t - a.t > max_gap) {
        pending_break = true;  // strictly inside an oversized gap
        continue;
      }
      double u = (tau - a.t) / (b.t - a.t);
      s.x = a.x + u * (b.x - a.x);
      s.y = a.y + u * (b.y - a.y);
      s.heading = lerp_heading(a.heading, b.heading, u);
      s.label = a.label;
    }
    if (pending_break && !out.samples.empty()) out.segment_breaks.push_back(out.samples.size());
    pending_break = false;
    out.samples.push_back(s);
  }
  if (out.samples.empty()) throw EmptyTrack("all grid points fall inside gaps");
  return out;
}

// ---- ClassroomMap JSON ----

inline void check_map(const ClassroomMap& map) {
  if (!(map.width > 0.0) || !(map.height > 0.0))
    throw InvalidParams("room width and height must be positive");
  auto check_poly = [&](const Polygon& poly, const std::string& what) {
    if (poly.size() < 3) throw InvalidParams(what + " polygon has fewer than 3 vertices");
    for (const Vec2& v : poly)
      if (!(v.x >= 0.0 && v.x <= map.width && v.y >= 0.0 && v.y <= map.height))
        throw InvalidParams(what + " polygon vertex outside the room");
  };
  for (const auto& p : map.obstacles) check_poly(p, "obstacle");
  for (const auto& z : map.zones) check_poly(z.polygon, "zone '" + z.name + "'");
}

inline ClassroomMap parse_map(std::istream& in) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("invalid map JSON: ") + e.what());
  }
  ClassroomMap map;
  try {
    map.width = j.at("width").get<double>();
    map.height = j.at("height").get<double>();
    auto read_poly = [](const nlohmann::json& jp) {
      Polygon poly;
      for (const auto& v : jp) poly.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
      return poly;
    };
    if (j.contains("obstacles"))
      for (const auto& jp : j.at("obstacles")) map.obstacles.push_back(read_poly(jp));
    if (j.contains("zones"))
      for (const auto& jz : j.at("zones"))
        map.zones.push_back({jz.at("name").get<std::string>(), read_poly(jz.at("polygon"))});
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("bad map JSON shape: ") + e.what());
  }
  check_map(map);
  return map;
}

inline nlohmann::json map_to_json(const ClassroomMap& map) {
  nlohmann::json j;
  j["width"] = map.width;
  j["height"] = map.height;
  auto polys = nlohmann::json::array();
  for (const auto& p : map.obstacles) {
    auto jp = nlohmann::json::array();
    for (const Vec2& v : p) jp.push_back({v.x, v.y});
    polys.push_back(std::move(jp));
  }
  j["obstacles"] = std::move(polys);
  auto zones = nlohmann::json::array();
  for (const auto& z : map.zones) {
    auto jp = nlohmann::json::array();
    for (const Vec2& v : z.polygon) jp.push_back({v.x, v.y});
    zones.push_back({{"name", z.name}, {"polygon", std::move(jp)}});
  }
  j["zones"] = std::move(zones);
  return j;
}

inline void write_map_json(std::ostream& out, const ClassroomMap& map) {
  out << map_to_json(map).dump(2) << '\n';
}

}  // namespace dandelion
