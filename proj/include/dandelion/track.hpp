#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dandelion/vec.hpp"

namespace dandelion {

// One tracking sample: position in meters, heading in radians ([0, 2*pi)
// once parsed), t in seconds since session start. label is an opaque
// activity code used by categorical color coding.
struct TrackSample {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double heading = 0.0;
  std::optional<int> label;
};

struct TrackMeta {
  std::string session_id;
  std::string subject_id;
  double session_duration = 0.0;  // seconds
};

struct Track {
  std::vector<TrackSample> samples;
  // Uniform sampling step in seconds; set after resample_uniform.
  std::optional<double> interval;
  // Indices i such that a tracking gap precedes samples[i]. Always in
  // (0, samples.size()); trajectories never bridge these.
  std::vector<std::size_t> segment_breaks;
  TrackMeta meta;

  std::size_t size() const { return samples.size(); }
  bool empty() const { return samples.empty(); }

  // Total tracked time: one interval of dwell per sample.
  double tracked_seconds() const {
    return interval ? *interval * static_cast<double>(samples.size()) : 0.0;
  }
};

struct NamedZone {
  std::string name;
  Polygon polygon;
};

// Room geometry: bounds, desk/board polygons, named analysis zones.
// World coordinates are y-up with the origin at the room's corner.
struct ClassroomMap {
  double width = 0.0;   // meters
  double height = 0.0;  // meters
  std::vector<Polygon> obstacles;
  std::vector<NamedZone> zones;
};

enum class IssueKind { OutOfBounds, NonFinite, TimeOrder, SpeedJump, HeadingRange };

inline const char* issue_kind_name(IssueKind k) {
  switch (k) {
    case IssueKind::OutOfBounds: return "OutOfBounds";
    case IssueKind::NonFinite: return "NonFinite";
    case IssueKind::TimeOrder: return "TimeOrder";
    case IssueKind::SpeedJump: return "SpeedJump";
    case IssueKind::HeadingRange: return "HeadingRange";
  }
  return "?";
}

struct ValidationIssue {
  IssueKind kind;
  std::size_t sample_index;
  std::string detail;
};

}  // namespace dandelion
