#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace maneuver {

struct TrajectoryPoint {
  double timestamp = 0.0;  // seconds since epoch
  double latitude = 0.0;   // degrees
  double longitude = 0.0;  // degrees
  double altitude = 0.0;   // unitless, as recorded

  bool operator==(const TrajectoryPoint&) const = default;
};

struct Trajectory {
  std::string vehicle_id;
  std::vector<TrajectoryPoint> points;

  bool operator==(const Trajectory&) const = default;
};

inline constexpr std::string_view kTrajectoryHeader = "timestamp,lat,lon,alt";

// Throws RangeViolation, NonMonotonicTime or TooShort. Line numbers in the
// error refer to the CSV layout (header on line 1, point i on line i + 2).
void validate(const Trajectory& trajectory);

struct ParseOptions {
  // Strict mode rejects blank lines and `#` comments; lenient mode skips them.
  bool strict = true;
};

Trajectory parse_trajectory(std::istream& in, std::string vehicle_id, const ParseOptions& options = {});
Trajectory parse_trajectory(std::string_view text, std::string vehicle_id, const ParseOptions& options = {});

void write_trajectory(const Trajectory& trajectory, std::ostream& out);
std::string serialize_trajectory(const Trajectory& trajectory);

// Segment-based synthetic flight. With probability `maneuver_fraction` the
// altitude profile carries a raised-cosine climb/descent to a peak drawn from
// `altitude_peak_range`; otherwise it is flat at `cruise_altitude`. Horizontal
// motion is a linear drift. Noise: `noise_scale` degrees on lat/lon and
// `noise_scale * cruise_altitude` on altitude (Gaussian standard deviations).
struct SynthConfig {
  std::size_t n_points = 120;
  double maneuver_fraction = 0.5;
  std::pair<double, double> altitude_peak_range{1200.0, 3000.0};
  double noise_scale = 0.002;
  double cruise_altitude = 1000.0;
  std::uint64_t seed = 0;

  void validate() const;  // InvalidConfig
};

Trajectory generate_synthetic(const SynthConfig& config, std::string vehicle_id = "synthetic");

struct CorpusOptions {
  ParseOptions parse;
  // Skip unreadable files (recorded in Corpus::skipped) instead of aborting.
  bool skip_invalid = false;
};

struct SkippedFile {
  std::string filename;
  std::string reason;
};

struct Corpus {
  std::vector<Trajectory> trajectories;  // sorted by filename
  std::vector<SkippedFile> skipped;
};

// Loads every `*.csv` in `directory`; vehicle_id is the filename stem.
Corpus load_corpus(const std::filesystem::path& directory, const CorpusOptions& options = {});

}  // namespace maneuver
