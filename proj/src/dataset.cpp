#include "maneuver/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>

#include <fmt/format.h>

#include "maneuver/error.hpp"
#include "maneuver/random.hpp"
#include "text_util.hpp"

namespace maneuver {

Dataset::Dataset(std::vector<FeatureRow> rows, std::vector<Label> labels, std::vector<std::string> ids)
    : rows_(std::move(rows)), labels_(std::move(labels)), ids_(std::move(ids)) {
  if (rows_.size() != labels_.size() || rows_.size() != ids_.size()) {
    throw Error(ErrorCode::LengthMismatch, fmt::format("dataset has {} rows, {} labels, {} ids", rows_.size(),
                                                       labels_.size(), ids_.size()));
  }
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    for (std::size_t c = 0; c < kFeatureCount; ++c) {
      if (!std::isfinite(rows_[i][c])) {
        throw Error(ErrorCode::NonFiniteFeature, fmt::format("row '{}' column {}", ids_[i], kFeatureNames[c]));
      }
    }
    if (labels_[i] > 1) {
      throw Error(ErrorCode::LabelDomainError, fmt::format("row '{}' label {}", ids_[i], int{labels_[i]}));
    }
  }
}

std::array<std::size_t, 2> Dataset::class_counts() const noexcept {
  std::array<std::size_t, 2> counts{0, 0};
  for (Label y : labels_) ++counts[y];
  return counts;
}

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
  std::vector<FeatureRow> rows;
  std::vector<Label> labels;
  std::vector<std::string> ids;
  rows.reserve(indices.size());
  labels.reserve(indices.size());
  ids.reserve(indices.size());
  for (std::size_t i : indices) {
    rows.push_back(rows_.at(i));
    labels.push_back(labels_[i]);
    ids.push_back(ids_[i]);
  }
  Dataset out;
  out.rows_ = std::move(rows);
  out.labels_ = std::move(labels);
  out.ids_ = std::move(ids);
  return out;
}

Dataset build_dataset(std::span<const FeatureRecord> records) {
  if (records.empty()) throw Error(ErrorCode::EmptyCorpus, "no feature records");
  std::vector<FeatureRow> rows;
  std::vector<Label> labels;
  std::vector<std::string> ids;
  rows.reserve(records.size());
  for (const auto& r : records) {
    rows.push_back({r.max_altitude, r.vertical_acceleration, r.horizontal_speed, r.distance});
    labels.push_back(r.maneuver);
    ids.push_back(r.vehicle_id);
  }
  return Dataset(std::move(rows), std::move(labels), std::move(ids));
}

void SplitSpec::validate() const {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw Error(ErrorCode::InvalidConfig, "split.test_fraction must lie in (0, 1)");
  }
}

SplitResult split(const Dataset& ds, const SplitSpec& spec) {
  spec.validate();
  const std::size_t n = ds.size();
  if (n < 2) throw Error(ErrorCode::DegenerateSplit, fmt::format("cannot split {} row(s)", n));
  const auto n_test = static_cast<std::size_t>(std::llround(spec.test_fraction * static_cast<double>(n)));
  if (n_test == 0 || n_test == n) {
    throw Error(ErrorCode::DegenerateSplit,
                fmt::format("test_fraction {} leaves an empty side for {} rows", spec.test_fraction, n));
  }

  Rng rng(spec.seed);
  std::vector<std::size_t> test_idx;
  std::vector<std::size_t> train_idx;

  if (!spec.stratified) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    rng.shuffle(order);
    test_idx.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_test));
    train_idx.assign(order.begin() + static_cast<std::ptrdiff_t>(n_test), order.end());
  } else {
    std::array<std::vector<std::size_t>, 2> strata;
    for (std::size_t i = 0; i < n; ++i) strata[ds.label(i)].push_back(i);
    for (int c = 0; c < 2; ++c) {
      if (strata[c].empty()) {
        throw Error(ErrorCode::DegenerateSplit, fmt::format("stratum for label {} is empty", c));
      }
    }
    // Largest-remainder allocation of n_test across the two strata.
    std::array<std::size_t, 2> quota{};
    std::array<double, 2> remainder{};
    std::size_t allocated = 0;
    for (int c = 0; c < 2; ++c) {
      const double exact = spec.test_fraction * static_cast<double>(strata[c].size());
      quota[c] = static_cast<std::size_t>(std::floor(exact));
      remainder[c] = exact - std::floor(exact);
      allocated += quota[c];
    }
    std::array<int, 2> by_remainder{0, 1};
    if (remainder[1] > remainder[0]) by_remainder = {1, 0};
    for (int c : by_remainder) {
      if (allocated < n_test && quota[c] < strata[c].size()) {
        ++quota[c];
        ++allocated;
      }
    }
    for (int c = 0; c < 2; ++c) {
      rng.shuffle(strata[c]);
      test_idx.insert(test_idx.end(), strata[c].begin(), strata[c].begin() + static_cast<std::ptrdiff_t>(quota[c]));
      train_idx.insert(train_idx.end(), strata[c].begin() + static_cast<std::ptrdiff_t>(quota[c]), strata[c].end());
    }
  }

  std::sort(test_idx.begin(), test_idx.end());
  std::sort(train_idx.begin(), train_idx.end());
  return {ds.subset(train_idx), ds.subset(test_idx)};
}

FeatureRow ScalerParams::apply(const FeatureRow& row) const {
  FeatureRow out{};
  for (std::size_t c = 0; c < kFeatureCount; ++c) out[c] = (row[c] - means[c]) / std_devs[c];
  return out;
}

ScalerParams fit_scaler(const Dataset& train) {
  if (train.empty()) throw Error(ErrorCode::EmptyInput, "cannot fit a scaler on an empty dataset");
  const double n = static_cast<double>(train.size());
  ScalerParams params;
  for (std::size_t c = 0; c < kFeatureCount; ++c) {
    double sum = 0.0;
    for (const auto& row : train.rows()) sum += row[c];
    const double mean = sum / n;
    double sq = 0.0;
    for (const auto& row : train.rows()) sq += (row[c] - mean) * (row[c] - mean);
    const double sd = std::sqrt(sq / n);
    params.means[c] = mean;
    if (sd > 1e-12 * std::max(1.0, std::abs(mean))) {
      params.std_devs[c] = sd;
    } else {
      params.std_devs[c] = 1.0;
      params.constant_columns.push_back(c);
    }
  }
  return params;
}

Dataset apply_scaler(const Dataset& ds, const ScalerParams& params) {
  std::vector<FeatureRow> rows;
  rows.reserve(ds.size());
  for (const auto& row : ds.rows()) rows.push_back(params.apply(row));
  return Dataset(std::move(rows), ds.labels(), ds.ids());
}

void write_csv(const Dataset& ds, std::ostream& out) {
  out << kDatasetHeader << '\n';
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const auto& id = ds.ids()[i];
    if (id.find_first_of(",\r\n") != std::string::npos) {
      throw Error(ErrorCode::SchemaError, fmt::format("id '{}' contains a separator character", id));
    }
    out << id;
    for (double v : ds.row(i)) out << ',' << detail::format_real(v);
    out << ',' << int{ds.label(i)} << '\n';
  }
}

Dataset read_csv(std::istream& in) {
  std::string line;
  if (!detail::read_line(in, line)) throw Error(ErrorCode::SchemaError, "missing header", 1);
  detail::strip_bom(line);
  if (line != kDatasetHeader) {
    throw Error(ErrorCode::SchemaError, fmt::format("expected header '{}', got '{}'", kDatasetHeader, line), 1);
  }
  std::vector<FeatureRow> rows;
  std::vector<Label> labels;
  std::vector<std::string> ids;
  std::size_t line_no = 1;
  while (detail::read_line(in, line)) {
    ++line_no;
    const auto fields = detail::split_fields(line);
    if (fields.size() != 6) {
      throw Error(ErrorCode::MalformedRow, fmt::format("expected 6 fields, got {}", fields.size()), line_no);
    }
    FeatureRow row{};
    for (std::size_t c = 0; c < kFeatureCount; ++c) {
      const auto value = detail::parse_finite(fields[c + 1]);
      if (!value) {
        throw Error(ErrorCode::MalformedRow, fmt::format("{} '{}' is not a finite number", kFeatureNames[c], fields[c + 1]),
                    line_no);
      }
      row[c] = *value;
    }
    const auto label = detail::parse_finite(fields[5]);
    if (!label || *label != std::floor(*label)) {
      throw Error(ErrorCode::MalformedRow, fmt::format("maneuver '{}' is not an integer", fields[5]), line_no);
    }
    if (*label != 0.0 && *label != 1.0) {
      throw Error(ErrorCode::LabelDomainError, fmt::format("maneuver {} not in {{0, 1}}", fields[5]), line_no);
    }
    rows.push_back(row);
    labels.push_back(static_cast<Label>(*label));
    ids.emplace_back(fields[0]);
  }
  if (in.bad()) throw Error(ErrorCode::IoError, "read failure");
  return Dataset(std::move(rows), std::move(labels), std::move(ids));
}

}  // namespace maneuver
