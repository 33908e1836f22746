#include "maneuver/features.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "maneuver/error.hpp"

namespace maneuver {
namespace {

void require_points(const Trajectory& traj, std::size_t needed, const char* feature) {
  if (traj.points.empty()) {
    throw Error(ErrorCode::EmptyInput, fmt::format("{}: trajectory '{}' has no points", feature, traj.vehicle_id));
  }
  if (traj.points.size() < needed) {
    throw Error(ErrorCode::SeriesTooShort, fmt::format("{}: trajectory '{}' has {} point(s), need {}", feature,
                                                       traj.vehicle_id, traj.points.size(), needed));
  }
}

std::vector<double> altitudes(const Trajectory& traj) {
  std::vector<double> out;
  out.reserve(traj.points.size());
  for (const auto& p : traj.points) out.push_back(p.altitude);
  return out;
}

double mean(std::span<const double> values) {
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

}  // namespace

void FeatureConfig::validate() const {
  if (!(speed_scale > 0.0) || !std::isfinite(speed_scale)) {
    throw Error(ErrorCode::InvalidConfig, "feature.speed_scale must be positive");
  }
  if (!(maneuver_threshold > 0.0) || !std::isfinite(maneuver_threshold)) {
    throw Error(ErrorCode::InvalidConfig, "feature.maneuver_threshold must be set to a positive value");
  }
  if (accel_diff_order < 1) throw Error(ErrorCode::InvalidConfig, "feature.accel_diff_order must be >= 1");
}

std::vector<double> discrete_diff(std::span<const double> series, int n) {
  if (n < 1) throw Error(ErrorCode::InvalidConfig, fmt::format("difference order {} must be >= 1", n));
  if (series.size() <= static_cast<std::size_t>(n)) {
    throw Error(ErrorCode::SeriesTooShort,
                fmt::format("series of length {} is too short for difference order {}", series.size(), n));
  }
  std::vector<double> out(series.begin(), series.end());
  for (int order = 0; order < n; ++order) {
    for (std::size_t i = 0; i + 1 < out.size(); ++i) out[i] = out[i + 1] - out[i];
    out.pop_back();
  }
  return out;
}

double horizontal_speed(const Trajectory& traj, const FeatureConfig& config) {
  if (!(config.speed_scale > 0.0)) throw Error(ErrorCode::InvalidConfig, "feature.speed_scale must be positive");
  require_points(traj, 2, "horizontal_speed");
  const auto& pts = traj.points;
  double total = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double dlat = pts[i].latitude - pts[i - 1].latitude;
    const double dlon = pts[i].longitude - pts[i - 1].longitude;
    total += config.speed_scale * std::sqrt(dlat * dlat + dlon * dlon);
  }
  return total / static_cast<double>(pts.size() - 1);
}

double path_distance(const Trajectory& traj) {
  require_points(traj, 2, "distance");
  const auto& pts = traj.points;
  double total = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double dlat = pts[i].latitude - pts[i - 1].latitude;
    const double dlon = pts[i].longitude - pts[i - 1].longitude;
    total += std::sqrt(dlat * dlat + dlon * dlon);
  }
  return total;
}

double vertical_acceleration(const Trajectory& traj, const FeatureConfig& config) {
  const int order = config.accel_diff_order;
  if (order < 1) throw Error(ErrorCode::InvalidConfig, "feature.accel_diff_order must be >= 1");
  require_points(traj, static_cast<std::size_t>(order) + 1, "vertical_acceleration");

  if (!config.time_aware_acceleration) {
    const auto alt = altitudes(traj);
    return mean(discrete_diff(alt, order));
  }

  // Divided differences; each pass re-anchors values at interval midpoints.
  std::vector<double> values = altitudes(traj);
  std::vector<double> times;
  times.reserve(traj.points.size());
  for (const auto& p : traj.points) times.push_back(p.timestamp);
  for (int pass = 0; pass < order; ++pass) {
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
      values[i] = (values[i + 1] - values[i]) / (times[i + 1] - times[i]);
      times[i] = 0.5 * (times[i] + times[i + 1]);
    }
    values.pop_back();
    times.pop_back();
  }
  return mean(values);
}

double max_altitude(const Trajectory& traj) {
  require_points(traj, 1, "max_altitude");
  double best = traj.points.front().altitude;
  for (const auto& p : traj.points) best = std::max(best, p.altitude);
  return best;
}

Label maneuver_label(const Trajectory& traj, const FeatureConfig& config) {
  if (!(config.maneuver_threshold > 0.0)) {
    throw Error(ErrorCode::InvalidConfig, "feature.maneuver_threshold must be set to a positive value");
  }
  double peak = 0.0;
  if (config.label_source == LabelSource::Altitude) {
    require_points(traj, 1, "maneuver");
    for (const auto& p : traj.points) peak = std::max(peak, std::abs(p.altitude));
  } else {
    require_points(traj, 2, "maneuver");
    const auto diffs = discrete_diff(altitudes(traj), 1);
    for (double d : diffs) peak = std::max(peak, std::abs(d));
  }
  return peak > config.maneuver_threshold ? 1 : 0;
}

FeatureRecord extract_features(const Trajectory& traj, const FeatureConfig& config) {
  config.validate();
  FeatureRecord record;
  record.vehicle_id = traj.vehicle_id;
  record.max_altitude = max_altitude(traj);
  record.vertical_acceleration = vertical_acceleration(traj, config);
  record.horizontal_speed = horizontal_speed(traj, config);
  record.distance = path_distance(traj);
  record.maneuver = maneuver_label(traj, config);
  return record;
}

}  // namespace maneuver
