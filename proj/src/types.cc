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

#include "scone/types.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>
#include <utility>

namespace scone {

FeatureMatrix::FeatureMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), values_(rows * cols, 0.0) {}

FeatureMatrix::FeatureMatrix(std::size_t rows, std::size_t cols,
                             std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  if (values_.size() != rows * cols) {
    throw Error(ErrorCode::kInvalidArgument,
                "matrix of " + std::to_string(rows) + "x" + std::to_string(cols) +
                    " given " + std::to_string(values_.size()) + " values");
  }
}

MultiViewDataset::MultiViewDataset(std::vector<FeatureMatrix> views)
    : views_(std::move(views)) {
  if (views_.empty()) throw Error(ErrorCode::kEmptyDataset, "dataset has no views");
  size_ = views_.front().rows();
  if (size_ == 0) throw Error(ErrorCode::kEmptyDataset, "dataset has no instances");
  for (std::size_t v = 0; v < views_.size(); ++v) {
    const FeatureMatrix& view = views_[v];
    if (view.rows() != size_) {
      throw Error(ErrorCode::kRowCountMismatch,
                  "view " + std::to_string(v) + " has " + std::to_string(view.rows()) +
                      " rows, expected " + std::to_string(size_));
    }
    if (view.cols() == 0) {
      throw Error(ErrorCode::kEmptyDataset, "view " + std::to_string(v) + " has no features");
    }
    const auto values = view.values();
    const auto bad = std::find_if(values.begin(), values.end(),
                                  [](double x) { return !std::isfinite(x); });
    if (bad != values.end()) {
      const std::size_t offset = static_cast<std::size_t>(bad - values.begin());
      throw Error(ErrorCode::kNonFiniteValue,
                  "view " + std::to_string(v) + " row " +
                      std::to_string(offset / view.cols()) + " column " +
                      std::to_string(offset % view.cols()));
    }
  }
}

std::vector<std::size_t> MultiViewDataset::dims() const {
  std::vector<std::size_t> out;
  out.reserve(views_.size());
  for (const auto& view : views_) out.push_back(view.cols());
  return out;
}

MultiViewDataset minmax_rescale(const MultiViewDataset& dataset) {
  std::vector<FeatureMatrix> views;
  views.reserve(dataset.view_count());
  for (const FeatureMatrix& source : dataset.views()) {
    FeatureMatrix scaled = source;
    for (std::size_t c = 0; c < source.cols(); ++c) {
      double lo = source(0, c);
      double hi = source(0, c);
      for (std::size_t r = 1; r < source.rows(); ++r) {
        lo = std::min(lo, source(r, c));
        hi = std::max(hi, source(r, c));
      }
      const double span = hi - lo;
      for (std::size_t r = 0; r < source.rows(); ++r) {
        scaled(r, c) = span > 0.0 ? (source(r, c) - lo) / span : 0.0;
      }
    }
    views.push_back(std::move(scaled));
  }
  return MultiViewDataset(std::move(views));
}

DatasetFingerprint fingerprint(const MultiViewDataset& dataset) {
  constexpr std::uint64_t kOffsetBasis = 0xcbf29ce484222325ULL;
  constexpr std::uint64_t kPrime = 0x100000001b3ULL;
  DatasetFingerprint fp;
  fp.instances = dataset.size();
  fp.views = dataset.view_count();
  std::uint64_t hash = kOffsetBasis;
  for (const FeatureMatrix& view : dataset.views()) {
    fp.dims.push_back(view.cols());
    for (double value : view.values()) {
      std::uint64_t bits = std::bit_cast<std::uint64_t>(value);
      for (int byte = 0; byte < 8; ++byte) {
        hash ^= bits & 0xffU;
        hash *= kPrime;
        bits >>= 8;
      }
    }
  }
  fp.checksum = hash;
  return fp;
}

std::string_view variant_name(Variant variant) {
  switch (variant) {
    case Variant::kSpherical: return "spherical";
    case Variant::kVoronoi: return "voronoi";
    case Variant::kSpherical1nn: return "spherical-1nn";
  }
  return "unknown";
}

std::optional<Variant> parse_variant(std::string_view name) {
  if (name == "spherical") return Variant::kSpherical;
  if (name == "voronoi" || name == "vd") return Variant::kVoronoi;
  if (name == "spherical-1nn" || name == "1nn") return Variant::kSpherical1nn;
  return std::nullopt;
}

std::optional<ErrorCode> validate_params(const SconeParams& params,
                                         std::size_t instances) noexcept {
  if (instances == 0) return ErrorCode::kEmptyDataset;
  if (params.psi < 2) return ErrorCode::kPsiTooSmall;
  if (params.psi > instances) return ErrorCode::kPsiExceedsN;
  if (params.k < 1) return ErrorCode::kKTooSmall;
  if (params.k > params.psi) return ErrorCode::kKExceedsPsi;
  if (params.t < 1) return ErrorCode::kEnsembleSizeTooSmall;
  return std::nullopt;
}

std::optional<ErrorCode> validate_params(const SconeParams& params,
                                         const MultiViewDataset& dataset) noexcept {
  return validate_params(params, dataset.size());
}

void check_params(const SconeParams& params, const MultiViewDataset& dataset) {
  if (const auto error = validate_params(params, dataset)) {
    throw Error(*error, "psi=" + std::to_string(params.psi) +
                            " k=" + std::to_string(params.k) +
                            " t=" + std::to_string(params.t) +
                            " N=" + std::to_string(dataset.size()));
  }
}

void check_fingerprint(const EnsembleModel& model, const MultiViewDataset& dataset) {
  if (!(fingerprint(dataset) == model.dataset_fingerprint)) {
    throw Error(ErrorCode::kFingerprintMismatch,
                "model was fitted on a different dataset");
  }
}

std::string_view label_name(Label label) {
  switch (label) {
    case Label::kNormal: return "normal";
    case Label::kAttribute: return "attribute";
    case Label::kClass: return "class";
    case Label::kClassAttribute: return "class-attribute";
  }
  return "unknown";
}

std::optional<Label> label_from_code(int code) {
  if (code < 0 || code > 3) return std::nullopt;
  return static_cast<Label>(code);
}

}  // namespace scone
