/*
 * Copyright 2026 The SCoNE Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Shared data types: multi-view datasets, detector parameters, fitted
// ensembles, score vectors and anomaly labels.

#ifndef SCONE_TYPES_H_
#define SCONE_TYPES_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "scone/errors.h"

namespace scone {

// Dense row-major matrix of doubles. One row per point.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  FeatureMatrix(std::size_t rows, std::size_t cols);
  FeatureMatrix(std::size_t rows, std::size_t cols, std::vector<double> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  std::span<const double> row(std::size_t i) const {
    return {values_.data() + i * cols_, cols_};
  }
  std::span<double> row(std::size_t i) {
    return {values_.data() + i * cols_, cols_};
  }
  double operator()(std::size_t r, std::size_t c) const {
    return values_[r * cols_ + c];
  }
  double& operator()(std::size_t r, std::size_t c) {
    return values_[r * cols_ + c];
  }

  std::span<const double> values() const noexcept { return values_; }

  bool operator==(const FeatureMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

// N aligned instances observed through V views. Row i of every view is the
// same underlying instance. Construction enforces N >= 1, V >= 1, every
// view dimension >= 1, equal row counts and finite values.
class MultiViewDataset {
 public:
  explicit MultiViewDataset(std::vector<FeatureMatrix> views);

  std::size_t size() const noexcept { return size_; }
  std::size_t view_count() const noexcept { return views_.size(); }
  const FeatureMatrix& view(std::size_t v) const { return views_[v]; }
  const std::vector<FeatureMatrix>& views() const noexcept { return views_; }
  std::vector<std::size_t> dims() const;

  // Feature vector of `instance` in view `v`.
  std::span<const double> point(std::size_t instance, std::size_t v) const {
    return views_[v].row(instance);
  }

  bool operator==(const MultiViewDataset&) const = default;

 private:
  std::vector<FeatureMatrix> views_;
  std::size_t size_ = 0;
};

// Rescales every feature of every view to [0, 1] using its observed range.
// Constant features map to 0.
MultiViewDataset minmax_rescale(const MultiViewDataset& dataset);

struct DatasetFingerprint {
  std::uint64_t instances = 0;
  std::uint64_t views = 0;
  std::vector<std::uint64_t> dims;
  std::uint64_t checksum = 0;

  bool operator==(const DatasetFingerprint&) const = default;
};

// Dimensions plus a 64-bit FNV-1a checksum over the IEEE-754 bit patterns of
// every value, view by view in row-major order.
DatasetFingerprint fingerprint(const MultiViewDataset& dataset);

enum class Variant {
  kSpherical,     // radius test and k-nearest-sample test
  kVoronoi,       // nearest-sample cell, no radius
  kSpherical1nn,  // kSpherical with k forced to 1
};

std::string_view variant_name(Variant variant);
std::optional<Variant> parse_variant(std::string_view name);

struct SconeParams {
  std::size_t psi = 8;
  std::size_t k = 3;
  std::size_t t = 200;
  std::uint64_t seed = 0;
  Variant variant = Variant::kSpherical;

  // Neighbor count actually used by the indicator.
  std::size_t effective_k() const noexcept {
    return variant == Variant::kSpherical1nn ? 1 : k;
  }

  bool operator==(const SconeParams&) const = default;
};

// Returns std::nullopt when every parameter bound holds against `dataset`,
// otherwise the first violated bound.
std::optional<ErrorCode> validate_params(const SconeParams& params,
                                         const MultiViewDataset& dataset) noexcept;

// Same as validate_params with the dataset reduced to its size; N == 0 is
// reported as kEmptyDataset.
std::optional<ErrorCode> validate_params(const SconeParams& params,
                                         std::size_t instances) noexcept;

// Throws Error when validate_params reports a violation.
void check_params(const SconeParams& params, const MultiViewDataset& dataset);

// One subsample: psi distinct instance indices and their per-view radii.
// radii[v][i] is the distance from sample i to its nearest other sample in
// view v.
struct SampleSet {
  std::vector<std::size_t> indices;
  std::vector<std::vector<double>> radii;

  bool operator==(const SampleSet&) const = default;
};

struct EnsembleModel {
  SconeParams params;
  std::vector<SampleSet> members;
  DatasetFingerprint dataset_fingerprint;

  bool operator==(const EnsembleModel&) const = default;
};

// Throws kFingerprintMismatch unless `model` was fitted on `dataset`.
void check_fingerprint(const EnsembleModel& model, const MultiViewDataset& dataset);

// Mean consistency per instance, in dataset order. Values are multiples of
// 1 / (psi * t).
struct ScoreVector {
  std::vector<double> consistency;

  std::size_t size() const noexcept { return consistency.size(); }
  bool operator==(const ScoreVector&) const = default;
};

enum class Label : std::uint8_t {
  kNormal = 0,
  kAttribute = 1,
  kClass = 2,
  kClassAttribute = 3,
};

using LabelVector = std::vector<Label>;

std::string_view label_name(Label label);
std::optional<Label> label_from_code(int code);

inline bool is_anomaly(Label label) noexcept { return label != Label::kNormal; }

}  // namespace scone

#endif  // SCONE_TYPES_H_
