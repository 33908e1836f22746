#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "maneuver/features.hpp"

namespace maneuver {

inline constexpr std::size_t kFeatureCount = 4;
using FeatureRow = std::array<double, kFeatureCount>;

inline constexpr std::array<std::string_view, kFeatureCount> kFeatureNames{
    "max_altitude", "vertical_acceleration", "horizontal_speed", "distance"};

// Immutable feature matrix with labels and row ids. Construction validates
// that all three share a length, entries are finite and labels are 0/1.
class Dataset {
 public:
  Dataset() = default;
  Dataset(std::vector<FeatureRow> rows, std::vector<Label> labels, std::vector<std::string> ids);

  std::size_t size() const noexcept { return rows_.size(); }
  bool empty() const noexcept { return rows_.empty(); }

  const std::vector<FeatureRow>& rows() const noexcept { return rows_; }
  const std::vector<Label>& labels() const noexcept { return labels_; }
  const std::vector<std::string>& ids() const noexcept { return ids_; }
  const FeatureRow& row(std::size_t i) const { return rows_.at(i); }
  Label label(std::size_t i) const { return labels_.at(i); }

  // {count of label 0, count of label 1}
  std::array<std::size_t, 2> class_counts() const noexcept;

  // Rows at `indices`, in the given order.
  Dataset subset(std::span<const std::size_t> indices) const;

  bool operator==(const Dataset&) const = default;

 private:
  std::vector<FeatureRow> rows_;
  std::vector<Label> labels_;
  std::vector<std::string> ids_;
};

// Throws EmptyCorpus or NonFiniteFeature.
Dataset build_dataset(std::span<const FeatureRecord> records);

struct SplitSpec {
  double test_fraction = 0.2;
  std::uint64_t seed = 42;
  bool stratified = true;

  void validate() const;
};

struct SplitResult {
  Dataset train;
  Dataset test;
};

// |test| = round(test_fraction * n). Stratified mode allocates test rows per
// class by largest remainder. Each side keeps the original row order.
SplitResult split(const Dataset& ds, const SplitSpec& spec);

struct ScalerParams {
  FeatureRow means{};
  FeatureRow std_devs{1.0, 1.0, 1.0, 1.0};
  // Columns whose population deviation was zero; their std_dev is set to 1.
  std::vector<std::size_t> constant_columns;

  FeatureRow apply(const FeatureRow& row) const;

  bool operator==(const ScalerParams&) const = default;
};

// Per-column mean and population standard deviation.
ScalerParams fit_scaler(const Dataset& train);
Dataset apply_scaler(const Dataset& ds, const ScalerParams& params);

inline constexpr std::string_view kDatasetHeader =
    "id,max_altitude,vertical_acceleration,horizontal_speed,distance,maneuver";

void write_csv(const Dataset& ds, std::ostream& out);
// Throws SchemaError, MalformedRow, LabelDomainError, NonFiniteFeature.
Dataset read_csv(std::istream& in);

}  // namespace maneuver
