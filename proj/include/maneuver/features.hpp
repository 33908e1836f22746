#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "maneuver/trajectory_io.hpp"

namespace maneuver {

using Label = std::uint8_t;

enum class LabelSource {
  Altitude,             // max |alpha| > T
  DifferencedAltitude,  // max |first difference of alpha| > T
};

struct FeatureConfig {
  // Constant multiplied into every per-step horizontal speed.
  double speed_scale = 1.0;
  // Maneuver threshold T, in altitude units. No usable default: must be set (> 0).
  double maneuver_threshold = 0.0;
  // Order of the altitude difference averaged into vertical_acceleration.
  int accel_diff_order = 2;
  // Divide differences by elapsed time (divided differences at midpoint times).
  bool time_aware_acceleration = false;
  LabelSource label_source = LabelSource::Altitude;

  void validate() const;  // InvalidConfig
};

struct FeatureRecord {
  std::string vehicle_id;
  double max_altitude = 0.0;
  double vertical_acceleration = 0.0;
  double horizontal_speed = 0.0;
  double distance = 0.0;
  Label maneuver = 0;

  bool operator==(const FeatureRecord&) const = default;
};

// n-th discrete difference: length series.size() - n. Throws SeriesTooShort when
// series.size() <= n.
std::vector<double> discrete_diff(std::span<const double> series, int n);

// Mean over steps of speed_scale * sqrt(dlat^2 + dlon^2).
double horizontal_speed(const Trajectory& traj, const FeatureConfig& config);
// Sum over consecutive pairs of the planar lat/lon distance, in degrees.
double path_distance(const Trajectory& traj);
// Signed mean of the order-`accel_diff_order` difference of altitude.
double vertical_acceleration(const Trajectory& traj, const FeatureConfig& config);
double max_altitude(const Trajectory& traj);
Label maneuver_label(const Trajectory& traj, const FeatureConfig& config);

FeatureRecord extract_features(const Trajectory& traj, const FeatureConfig& config);

}  // namespace maneuver
