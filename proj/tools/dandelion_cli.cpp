// dandelion: file-to-file workflows over the header-only library.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 I/O error.
// Outputs are written to a temp file and renamed into place, so a failed run
// never leaves a partial artifact behind.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "dandelion/dandelion.hpp"

namespace fs = std::filesystem;
using namespace dandelion;

namespace {

std::string lower_ext(const std::string& path) {
  std::string ext = fs::path(path).extension().string();
  for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (!ext.empty() && ext.front() == '.') ext.erase(ext.begin());
  return ext;
}

std::string pick_format(const std::string& out_path, const std::string& override_fmt,
                        std::initializer_list<const char*> allowed) {
  std::string fmt = override_fmt.empty() ? lower_ext(out_path) : override_fmt;
  for (const char* a : allowed)
    if (fmt == a) return fmt;
  std::string msg = "unsupported output format '" + fmt + "' (expected";
  for (const char* a : allowed) msg += std::string(" ") + a;
  throw InvalidParams(msg + ")");
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return in;
}

void atomic_write(const std::string& path, const std::string& payload) {
  fs::path tmp = fs::path(path).concat(".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw IoError("write failed for " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    std::error_code ec2;
    fs::remove(tmp, ec2);
    throw IoError("cannot move " + tmp.string() + " to " + path + ": " + ec.message());
  }
}

void atomic_write(const std::string& path, const std::vector<std::uint8_t>& payload) {
  atomic_write(path, std::string(payload.begin(), payload.end()));
}

Track load_track(const std::string& path, HeadingUnit unit) {
  auto in = open_input(path);
  TrackFormat fmt = lower_ext(path) == "json" ? TrackFormat::Json : TrackFormat::Csv;
  return parse_track(in, fmt, unit);
}

ClassroomMap load_map(const std::string& path) {
  auto in = open_input(path);
  return parse_map(in);
}

Style load_style(const std::string& flag_path) {
  std::string path = flag_path;
  if (path.empty())
    if (const char* env = std::getenv("DANDELION_STYLE")) path = env;
  if (path.empty()) return {};
  auto in = open_input(path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, "invalid style JSON in " + path + ": " + e.what());
  }
  return style_from_json(j);
}

struct IngestFlags {
  std::string in_path;
  std::string map_path;
  std::string heading_unit = "rad";
  double interval = default_interval_s;
  double max_gap = default_max_gap_s;

  void attach(CLI::App* cmd, bool with_resample = true) {
    cmd->add_option("--in", in_path, "input track, .csv or .json")->required();
    cmd->add_option("--map", map_path, "classroom map JSON")->required();
    cmd->add_option("--heading-unit", heading_unit, "heading unit in the input, rad or deg")
        ->check(CLI::IsMember({"rad", "deg"}))
        ->capture_default_str();
    if (with_resample) {
      cmd->add_option("--interval", interval, "resampling interval, seconds")
          ->check(CLI::PositiveNumber)
          ->capture_default_str();
      cmd->add_option("--max-gap", max_gap, "largest time gap to interpolate across, seconds")
          ->check(CLI::PositiveNumber)
          ->capture_default_str();
    }
  }

  HeadingUnit unit() const {
    return heading_unit == "deg" ? HeadingUnit::Degrees : HeadingUnit::Radians;
  }

  Track load_resampled() const {
    return resample_uniform(load_track(in_path, unit()), interval, max_gap);
  }
};

int run(int argc, char** argv) {
  CLI::App app{"Dandelion diagrams: position + orientation tracks to figures and metrics"};
  app.require_subcommand(1);

  // render
  auto* render = app.add_subcommand("render", "draw the dandelion diagram for a track");
  IngestFlags render_in;
  render_in.attach(render);
  std::string render_out, render_fmt, render_style, render_coding;
  int render_width = 900;
  int render_ss = 0;
  render->add_option("--out", render_out, "output image, .svg or .png")->required();
  render->add_option("--format", render_fmt, "override format inferred from --out extension")
      ->check(CLI::IsMember({"svg", "png"}));
  render->add_option("--style", render_style,
                     "style JSON (default: $DANDELION_STYLE if set, else built-ins)");
  render->add_option("--coding", render_coding, "spotlight color coding, time or label")
      ->check(CLI::IsMember({"time", "label"}));
  render->add_option("--width", render_width, "output width, pixels")
      ->check(CLI::Range(64, 8192))
      ->capture_default_str();
  render->add_option("--supersample", render_ss, "anti-aliasing grid per pixel edge (1, 2, 4, 8)")
      ->check(CLI::IsMember({1, 2, 4, 8}));
  render->callback([&] {
    std::string fmt = pick_format(render_out, render_fmt, {"svg", "png"});
    Style style = load_style(render_style);
    if (!render_coding.empty()) {
      style.coding = render_coding == "label" ? Coding::Label : Coding::Time;
      style.colormap.mode =
          style.coding == Coding::Label ? ColorMap::Mode::Categorical : ColorMap::Mode::Continuous;
    }
    if (render_ss != 0) style.supersample = render_ss;
    style.check();
    style.colormap.check();
    Track track = render_in.load_resampled();
    ClassroomMap map = load_map(render_in.map_path);
    Viewport vp = make_viewport(map, render_width);
    Scene scene = build_scene(track, map, style, vp);
    if (fmt == "svg")
      atomic_write(render_out, emit_svg(scene));
    else
      atomic_write(render_out, encode_png(rasterize(scene, style)));
  });

  // heatmap
  auto* heatmap = app.add_subcommand("heatmap", "baseline position-density heatmap for a track");
  IngestFlags heat_in;
  heat_in.attach(heatmap);
  std::string heat_out, heat_fmt;
  double heat_cell = default_heatmap_cell_m;
  double heat_bw = default_heatmap_bandwidth_m;
  int heat_width = 900;
  heatmap->add_option("--out", heat_out, "output, .svg, .png, or .csv (raw grid)")->required();
  heatmap->add_option("--format", heat_fmt, "override format inferred from --out extension")
      ->check(CLI::IsMember({"svg", "png", "csv"}));
  heatmap->add_option("--cell", heat_cell, "grid cell size, meters")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  heatmap->add_option("--bandwidth", heat_bw, "kernel bandwidth, meters")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  heatmap->add_option("--width", heat_width, "output width for images, pixels")
      ->check(CLI::Range(64, 8192))
      ->capture_default_str();
  heatmap->callback([&] {
    std::string fmt = pick_format(heat_out, heat_fmt, {"svg", "png", "csv"});
    Track track = heat_in.load_resampled();
    ClassroomMap map = load_map(heat_in.map_path);
    Grid grid = kde_grid(track, map, heat_cell, heat_bw);
    if (fmt == "csv") {
      std::ostringstream os;
      write_grid_csv(os, grid);
      atomic_write(heat_out, os.str());
      return;
    }
    Viewport vp = make_viewport(map, heat_width);
    Scene scene = heatmap_scene(grid, map, default_time_colormap(), vp);
    if (fmt == "svg") {
      atomic_write(heat_out, emit_svg(scene));
    } else {
      Style style;  // heatmap cells are opaque; only the supersample level matters
      atomic_write(heat_out, encode_png(rasterize(scene, style)));
    }
  });

  // metrics
  auto* metrics = app.add_subcommand("metrics", "proxemics metrics report as JSON");
  IngestFlags met_in;
  met_in.attach(metrics);
  std::string met_out;
  MetricsParams met_params;
  double met_cone_angle_deg = default_cone_half_angle_rad * 180.0 / pi;
  metrics->add_option("--out", met_out, "output report, .json")->required();
  metrics->add_option("--cell", met_params.cell_size, "grid cell size, meters")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  metrics->add_option("--cone-range", met_params.cone.range, "attention cone range, meters")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  metrics->add_option("--cone-angle", met_cone_angle_deg, "attention cone half-angle, degrees")
      ->check(CLI::Range(1e-9, 180.0 - 1e-9))
      ->capture_default_str();
  metrics->add_option("--bins", met_params.histogram_bins, "heading histogram bins")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  metrics->add_option("--temporal-bins", met_params.temporal_bins, "time bins for the zone matrix")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  metrics->add_option("--stop-speed", met_params.stop_speed,
                      "speed below which a sample counts as stationary, m/s")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  metrics->add_option("--min-stop", met_params.min_stop_duration,
                      "shortest stationary run reported as a stop, seconds")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  metrics->callback([&] {
    met_params.cone.half_angle = met_cone_angle_deg * pi / 180.0;
    Track track = met_in.load_resampled();
    ClassroomMap map = load_map(met_in.map_path);
    nlohmann::json report = metrics_report(track, map, met_params);
    atomic_write(met_out, report.dump(2) + "\n");
  });

  // simulate
  auto* simulate = app.add_subcommand("simulate", "generate a synthetic teaching session");
  std::string sim_layout, sim_out, sim_fmt, sim_map_out;
  SimParams sim_params;
  simulate->add_option("--layout", sim_layout, "classroom archetype, lecture or teamwork")
      ->check(CLI::IsMember({"lecture", "teamwork"}))
      ->required();
  simulate->add_option("--seed", sim_params.seed, "random seed (64-bit)")->capture_default_str();
  simulate->add_option("--duration", sim_params.duration, "session length, seconds")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  simulate->add_option("--interval", sim_params.interval, "sampling interval, seconds")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  simulate->add_option("--walk-speed", sim_params.walk_speed, "walking speed, m/s")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  simulate->add_option("--dwell-mean", sim_params.dwell_mean, "mean dwell time, seconds")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  simulate->add_option("--front-bias", sim_params.front_bias,
                       "probability a lecture waypoint is at the front board")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  simulate->add_option("--out", sim_out, "output track, .csv or .json")->required();
  simulate->add_option("--format", sim_fmt, "override format inferred from --out extension")
      ->check(CLI::IsMember({"csv", "json"}));
  simulate->add_option("--map-out", sim_map_out, "also write the generated classroom map JSON");
  simulate->callback([&] {
    std::string fmt = pick_format(sim_out, sim_fmt, {"csv", "json"});
    LayoutKind kind = sim_layout == "lecture" ? LayoutKind::Lecture : LayoutKind::Teamwork;
    auto [map, track] = simulate_layout_and_session(kind, sim_params);
    std::ostringstream os;
    if (fmt == "csv")
      write_track_csv(os, track);
    else
      write_track_json(os, track);
    atomic_write(sim_out, os.str());
    if (!sim_map_out.empty()) {
      std::ostringstream ms;
      write_map_json(ms, map);
      atomic_write(sim_map_out, ms.str());
    }
  });

  // validate
  auto* validate = app.add_subcommand("validate", "check a track against a map, report issues");
  IngestFlags val_in;
  val_in.attach(validate, /*with_resample=*/false);
  double val_max_speed = default_max_speed_mps;
  bool val_clean = true;
  validate->add_option("--max-speed", val_max_speed, "largest plausible speed, m/s")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  validate->callback([&] {
    Track track = load_track(val_in.in_path, val_in.unit());
    ClassroomMap map = load_map(val_in.map_path);
    auto issues = validate_track(track, map, val_max_speed);
    for (const auto& issue : issues)
      std::cout << "sample " << issue.sample_index << ": " << issue_kind_name(issue.kind) << ", "
                << issue.detail << "\n";
    std::cout << (issues.empty() ? "clean" : "issues found") << ": " << issues.size() << "\n";
    val_clean = issues.empty();
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  if (validate->parsed() && !val_clean) return 2;
  return 0;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
