#include "maneuver/trajectory_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "maneuver/error.hpp"
#include "maneuver/random.hpp"
#include "text_util.hpp"

namespace maneuver {
namespace {

void check_point(const TrajectoryPoint& p, std::size_t line) {
  if (!std::isfinite(p.timestamp) || p.timestamp < 0.0) {
    throw Error(ErrorCode::RangeViolation, fmt::format("timestamp {} must be finite and non-negative", p.timestamp), line);
  }
  if (!(p.latitude >= -90.0 && p.latitude <= 90.0)) {
    throw Error(ErrorCode::RangeViolation, fmt::format("latitude {} outside [-90, 90]", p.latitude), line);
  }
  if (!(p.longitude >= -180.0 && p.longitude <= 180.0)) {
    throw Error(ErrorCode::RangeViolation, fmt::format("longitude {} outside [-180, 180]", p.longitude), line);
  }
  if (!(p.altitude >= 0.0) || !std::isfinite(p.altitude)) {
    throw Error(ErrorCode::RangeViolation, fmt::format("altitude {} must be finite and non-negative", p.altitude), line);
  }
}

void check_order(const TrajectoryPoint& prev, const TrajectoryPoint& next, std::size_t line) {
  if (!(next.timestamp > prev.timestamp)) {
    throw Error(ErrorCode::NonMonotonicTime,
                fmt::format("timestamp {} does not follow {}", next.timestamp, prev.timestamp), line);
  }
}

}  // namespace

void validate(const Trajectory& trajectory) {
  const auto& pts = trajectory.points;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    check_point(pts[i], i + 2);
    if (i > 0) check_order(pts[i - 1], pts[i], i + 2);
  }
  if (pts.size() < 2) {
    throw Error(ErrorCode::TooShort, fmt::format("trajectory has {} point(s), need at least 2", pts.size()),
                pts.size() + 1);
  }
}

Trajectory parse_trajectory(std::istream& in, std::string vehicle_id, const ParseOptions& options) {
  Trajectory traj{std::move(vehicle_id), {}};
  std::string line;
  if (!detail::read_line(in, line)) {
    throw Error(ErrorCode::BadHeader, "missing header", 1);
  }
  detail::strip_bom(line);
  if (line != kTrajectoryHeader) {
    throw Error(ErrorCode::BadHeader, fmt::format("expected header '{}', got '{}'", kTrajectoryHeader, line), 1);
  }

  std::size_t line_no = 1;
  while (detail::read_line(in, line)) {
    ++line_no;
    const bool blank = line.find_first_not_of(" \t") == std::string::npos;
    const bool comment = !blank && line.front() == '#';
    if (blank || comment) {
      if (options.strict) {
        throw Error(ErrorCode::MalformedRow, blank ? "blank line" : "comment line", line_no);
      }
      continue;
    }
    const auto fields = detail::split_fields(line);
    if (fields.size() != 4) {
      throw Error(ErrorCode::MalformedRow, fmt::format("expected 4 fields, got {}", fields.size()), line_no);
    }
    double values[4];
    for (std::size_t f = 0; f < 4; ++f) {
      const auto parsed = detail::parse_finite(fields[f]);
      if (!parsed) {
        throw Error(ErrorCode::MalformedRow, fmt::format("field {} '{}' is not a finite number", f + 1, fields[f]),
                    line_no);
      }
      values[f] = *parsed;
    }
    const TrajectoryPoint point{values[0], values[1], values[2], values[3]};
    check_point(point, line_no);
    if (!traj.points.empty()) check_order(traj.points.back(), point, line_no);
    traj.points.push_back(point);
  }
  if (in.bad()) throw Error(ErrorCode::IoError, "read failure");
  if (traj.points.size() < 2) {
    throw Error(ErrorCode::TooShort, fmt::format("trajectory has {} point(s), need at least 2", traj.points.size()),
                line_no);
  }
  return traj;
}

Trajectory parse_trajectory(std::string_view text, std::string vehicle_id, const ParseOptions& options) {
  std::istringstream in{std::string(text)};
  return parse_trajectory(in, std::move(vehicle_id), options);
}

void write_trajectory(const Trajectory& trajectory, std::ostream& out) {
  out << kTrajectoryHeader << '\n';
  for (const auto& p : trajectory.points) {
    out << detail::format_real(p.timestamp) << ',' << detail::format_real(p.latitude) << ','
        << detail::format_real(p.longitude) << ',' << detail::format_real(p.altitude) << '\n';
  }
}

std::string serialize_trajectory(const Trajectory& trajectory) {
  std::ostringstream out;
  write_trajectory(trajectory, out);
  return out.str();
}

void SynthConfig::validate() const {
  if (n_points < 2) throw Error(ErrorCode::InvalidConfig, "synth.n_points must be at least 2");
  if (!(maneuver_fraction >= 0.0 && maneuver_fraction <= 1.0)) {
    throw Error(ErrorCode::InvalidConfig, "synth.maneuver_fraction must lie in [0, 1]");
  }
  const auto [lo, hi] = altitude_peak_range;
  if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi || lo < 0.0) {
    throw Error(ErrorCode::InvalidConfig, "synth.altitude_peak_range must be finite, non-negative, low <= high");
  }
  if (!(noise_scale >= 0.0) || !std::isfinite(noise_scale)) {
    throw Error(ErrorCode::InvalidConfig, "synth.noise_scale must be non-negative");
  }
  if (!(cruise_altitude >= 0.0) || !std::isfinite(cruise_altitude)) {
    throw Error(ErrorCode::InvalidConfig, "synth.cruise_altitude must be non-negative");
  }
}

Trajectory generate_synthetic(const SynthConfig& config, std::string vehicle_id) {
  config.validate();
  Rng rng(config.seed);

  const double lat0 = rng.uniform(-60.0, 60.0);
  const double lon0 = rng.uniform(-170.0, 170.0);
  const double heading = rng.uniform(0.0, 2.0 * std::numbers::pi);
  const double step = rng.uniform(0.005, 0.015);  // degrees per sample
  const double dlat = step * std::sin(heading);
  const double dlon = step * std::cos(heading);

  const bool maneuvering = rng.uniform01() < config.maneuver_fraction;
  const double n = static_cast<double>(config.n_points);
  const double peak = rng.uniform(config.altitude_peak_range.first, config.altitude_peak_range.second);
  const double center = std::floor(n / 4.0 + rng.uniform01() * n / 2.0);
  const double half_width = std::max(2.0, std::floor(n / 8.0));

  const double coord_sd = config.noise_scale;
  const double alt_sd = config.noise_scale * config.cruise_altitude;

  Trajectory traj{std::move(vehicle_id), {}};
  traj.points.reserve(config.n_points);
  for (std::size_t i = 0; i < config.n_points; ++i) {
    const double fi = static_cast<double>(i);
    double alt = config.cruise_altitude;
    if (maneuvering) {
      const double offset = std::abs(fi - center);
      if (offset < half_width) {
        const double bump = 0.5 * (1.0 + std::cos(std::numbers::pi * offset / half_width));
        alt += (peak - config.cruise_altitude) * bump;
      }
    }
    TrajectoryPoint p;
    p.timestamp = fi;
    p.latitude = std::clamp(lat0 + dlat * fi + coord_sd * rng.normal(), -90.0, 90.0);
    p.longitude = std::clamp(lon0 + dlon * fi + coord_sd * rng.normal(), -180.0, 180.0);
    p.altitude = std::max(0.0, alt + alt_sd * rng.normal());
    traj.points.push_back(p);
  }
  return traj;
}

Corpus load_corpus(const std::filesystem::path& directory, const CorpusOptions& options) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(directory, ec)) {
    throw Error(ErrorCode::CorpusError, fmt::format("'{}' is not a directory", directory.string()));
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(directory)) {
    if (entry.is_regular_file() && entry.path().extension() == ".csv") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) { return a.filename().string() < b.filename().string(); });

  Corpus corpus;
  corpus.trajectories.reserve(files.size());
  for (const auto& file : files) {
    const std::string name = file.filename().string();
    try {
      std::ifstream in(file, std::ios::binary);
      if (!in) throw Error(ErrorCode::IoError, "cannot open file");
      corpus.trajectories.push_back(parse_trajectory(in, file.stem().string(), options.parse));
    } catch (const Error& err) {
      if (!options.skip_invalid) throw err.with_context(name);
      corpus.skipped.push_back({name, fmt::format("{}: {}", to_string(err.code()), err.what())});
    }
  }
  return corpus;
}

}  // namespace maneuver
