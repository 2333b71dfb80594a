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

#include "scone/synthetic.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <string>
#include <utility>

#include "scone/rng.h"

namespace scone {
namespace {

struct FeatureRange {
  double low;
  double high;
};

// Observed [min, max] of every feature, per view.
std::vector<std::vector<FeatureRange>> observed_ranges(const MultiViewDataset& dataset) {
  std::vector<std::vector<FeatureRange>> ranges;
  for (const FeatureMatrix& view : dataset.views()) {
    std::vector<FeatureRange> per_feature(view.cols());
    for (std::size_t c = 0; c < view.cols(); ++c) {
      per_feature[c] = {view(0, c), view(0, c)};
      for (std::size_t r = 1; r < view.rows(); ++r) {
        per_feature[c].low = std::min(per_feature[c].low, view(r, c));
        per_feature[c].high = std::max(per_feature[c].high, view(r, c));
      }
    }
    ranges.push_back(std::move(per_feature));
  }
  return ranges;
}

void randomize_row(std::span<double> row, const std::vector<FeatureRange>& ranges,
                   Rng& rng) {
  for (std::size_t c = 0; c < row.size(); ++c) {
    std::uniform_real_distribution<double> draw(ranges[c].low, ranges[c].high);
    row[c] = ranges[c].low == ranges[c].high ? ranges[c].low : draw(rng);
  }
}

std::vector<std::size_t> normal_indices(const LabelVector& labels) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == Label::kNormal) out.push_back(i);
  }
  return out;
}

void check_labels(const MultiViewDataset& dataset, const LabelVector& labels) {
  if (labels.size() != dataset.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "labels have " + std::to_string(labels.size()) + " entries for " +
                    std::to_string(dataset.size()) + " instances");
  }
}

std::vector<FeatureMatrix> copy_views(const MultiViewDataset& dataset) {
  return dataset.views();
}

using PairList = std::vector<std::pair<std::size_t, std::size_t>>;

PairList choose_pairs(const MultiViewDataset& dataset, const LabelVector& labels,
                      std::span<const int> clusters, std::size_t pair_count,
                      Rng& rng) {
  if (dataset.view_count() < 2) {
    throw Error(ErrorCode::kSingleViewDataset, "class anomalies need at least two views");
  }
  if (!clusters.empty() && clusters.size() != dataset.size()) {
    throw Error(ErrorCode::kInvalidArgument, "cluster assignment size mismatch");
  }
  std::vector<std::size_t> pool = normal_indices(labels);
  if (2 * pair_count > pool.size()) {
    throw Error(ErrorCode::kPairsExceedN,
                std::to_string(pair_count) + " pairs requested from " +
                    std::to_string(pool.size()) + " normal instances");
  }
  std::shuffle(pool.begin(), pool.end(), rng);
  std::vector<bool> used(pool.size(), false);
  PairList pairs;
  std::size_t cursor = 0;
  while (pairs.size() < pair_count) {
    while (cursor < pool.size() && used[cursor]) ++cursor;
    if (cursor == pool.size()) break;
    used[cursor] = true;
    const std::size_t a = pool[cursor];
    std::size_t partner = cursor + 1;
    while (partner < pool.size() &&
           (used[partner] || (!clusters.empty() && clusters[pool[partner]] == clusters[a]))) {
      ++partner;
    }
    if (partner == pool.size()) break;
    used[partner] = true;
    pairs.emplace_back(a, pool[partner]);
  }
  if (pairs.size() < pair_count) {
    throw Error(ErrorCode::kBadConfig,
                "not enough normal instances from different clusters to form pairs");
  }
  return pairs;
}

// Uniform over nonempty proper subsets of the views, as a bit mask.
std::uint64_t choose_view_subset(std::size_t views, Rng& rng) {
  const std::uint64_t all = (std::uint64_t{1} << views) - 1;
  std::uniform_int_distribution<std::uint64_t> pick(1, all - 1);
  return pick(rng);
}

Injection inject_pairs(const MultiViewDataset& dataset, const LabelVector& labels,
                       std::span<const int> clusters, std::size_t pair_count,
                       std::uint64_t seed, bool randomize_rest) {
  check_labels(dataset, labels);
  Rng rng = make_rng(seed, randomize_rest ? StreamDomain::kClassAttributeInjection
                                          : StreamDomain::kClassInjection);
  const PairList pairs = choose_pairs(dataset, labels, clusters, pair_count, rng);
  const auto ranges = observed_ranges(dataset);
  std::vector<FeatureMatrix> views = copy_views(dataset);
  Injection out{dataset, labels, {}};
  for (const auto& [a, b] : pairs) {
    const std::uint64_t swapped = choose_view_subset(dataset.view_count(), rng);
    for (std::size_t v = 0; v < views.size(); ++v) {
      auto row_a = views[v].row(a);
      auto row_b = views[v].row(b);
      if (swapped & (std::uint64_t{1} << v)) {
        std::swap_ranges(row_a.begin(), row_a.end(), row_b.begin());
      } else if (randomize_rest) {
        randomize_row(row_a, ranges[v], rng);
        randomize_row(row_b, ranges[v], rng);
      }
    }
    const Label label = randomize_rest ? Label::kClassAttribute : Label::kClass;
    out.labels[a] = label;
    out.labels[b] = label;
    out.changed.push_back(a);
    out.changed.push_back(b);
  }
  std::sort(out.changed.begin(), out.changed.end());
  out.dataset = MultiViewDataset(std::move(views));
  return out;
}

}  // namespace

std::string_view density_mode_name(DensityMode mode) {
  return mode == DensityMode::kUniform ? "uniform" : "varied";
}

std::optional<DensityMode> parse_density_mode(std::string_view name) {
  if (name == "uniform") return DensityMode::kUniform;
  if (name == "varied") return DensityMode::kVaried;
  return std::nullopt;
}

ClusterConfig default_cluster_config(DensityMode mode, std::size_t instances,
                                     std::size_t views) {
  // Triangle with side ~48; its centroid sits at (24, 14).
  static constexpr double kLayout[3][2] = {{0.0, 0.0}, {48.0, 0.0}, {24.0, 42.0}};
  static constexpr double kVariedStds[3] = {0.3, 1.0, 2.5};
  ClusterConfig config;
  config.instances = instances;
  for (std::size_t v = 0; v < views; ++v) {
    const double angle = static_cast<double>(v) * std::numbers::pi / 3.5;
    const double cs = std::cos(angle);
    const double sn = std::sin(angle);
    std::vector<std::vector<double>> centers;
    std::vector<double> stds;
    for (std::size_t c = 0; c < 3; ++c) {
      const double x = kLayout[c][0] - 24.0;
      const double y = kLayout[c][1] - 14.0;
      centers.push_back({cs * x - sn * y, sn * x + cs * y});
      stds.push_back(mode == DensityMode::kUniform ? 1.0 : kVariedStds[(c + v) % 3]);
    }
    config.centers.push_back(std::move(centers));
    config.stds.push_back(std::move(stds));
  }
  return config;
}

SyntheticData make_multiview_clusters(const ClusterConfig& config, std::uint64_t seed) {
  const std::size_t views = config.centers.size();
  if (views == 0 || config.stds.size() != views || config.instances == 0) {
    throw Error(ErrorCode::kBadConfig, "need at least one view, matching stds and N >= 1");
  }
  const std::size_t clusters = config.centers[0].size();
  if (clusters == 0) throw Error(ErrorCode::kBadConfig, "no clusters");
  std::vector<std::size_t> dims;
  for (std::size_t v = 0; v < views; ++v) {
    if (config.centers[v].size() != clusters || config.stds[v].size() != clusters) {
      throw Error(ErrorCode::kBadConfig,
                  "view " + std::to_string(v) + " has a different cluster count");
    }
    const std::size_t dim = config.centers[v][0].size();
    for (std::size_t c = 0; c < clusters; ++c) {
      if (config.centers[v][c].size() != dim || dim == 0) {
        throw Error(ErrorCode::kBadConfig, "inconsistent center dimensions");
      }
      if (!(config.stds[v][c] >= 0.0)) {
        throw Error(ErrorCode::kBadConfig, "negative cluster std");
      }
    }
    dims.push_back(dim);
  }

  Rng rng = make_rng(seed, StreamDomain::kClusterData);
  std::vector<int> assignment(config.instances);
  for (std::size_t i = 0; i < config.instances; ++i) {
    assignment[i] = static_cast<int>(i % clusters);
  }
  std::shuffle(assignment.begin(), assignment.end(), rng);

  std::vector<FeatureMatrix> matrices;
  for (std::size_t v = 0; v < views; ++v) matrices.emplace_back(config.instances, dims[v]);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (std::size_t i = 0; i < config.instances; ++i) {
    const auto c = static_cast<std::size_t>(assignment[i]);
    for (std::size_t v = 0; v < views; ++v) {
      auto row = matrices[v].row(i);
      for (std::size_t d = 0; d < dims[v]; ++d) {
        row[d] = config.centers[v][c][d] + config.stds[v][c] * gauss(rng);
      }
    }
  }
  return SyntheticData{MultiViewDataset(std::move(matrices)),
                       LabelVector(config.instances, Label::kNormal),
                       std::move(assignment)};
}

Injection inject_attribute_anomalies(const MultiViewDataset& dataset,
                                     const LabelVector& labels, std::size_t count,
                                     std::uint64_t seed) {
  check_labels(dataset, labels);
  std::vector<std::size_t> pool = normal_indices(labels);
  if (count > pool.size()) {
    throw Error(ErrorCode::kCountExceedsN,
                std::to_string(count) + " anomalies requested from " +
                    std::to_string(pool.size()) + " normal instances");
  }
  Rng rng = make_rng(seed, StreamDomain::kAttributeInjection);
  std::shuffle(pool.begin(), pool.end(), rng);
  pool.resize(count);

  const auto ranges = observed_ranges(dataset);
  std::vector<FeatureMatrix> views = copy_views(dataset);
  Injection out{dataset, labels, pool};
  for (std::size_t x : pool) {
    for (std::size_t v = 0; v < views.size(); ++v) {
      randomize_row(views[v].row(x), ranges[v], rng);
    }
    out.labels[x] = Label::kAttribute;
  }
  std::sort(out.changed.begin(), out.changed.end());
  out.dataset = MultiViewDataset(std::move(views));
  return out;
}

Injection inject_class_anomalies(const MultiViewDataset& dataset,
                                 const LabelVector& labels,
                                 std::span<const int> clusters,
                                 std::size_t pair_count, std::uint64_t seed) {
  return inject_pairs(dataset, labels, clusters, pair_count, seed, false);
}

Injection inject_class_attribute_anomalies(const MultiViewDataset& dataset,
                                           const LabelVector& labels,
                                           std::span<const int> clusters,
                                           std::size_t pair_count,
                                           std::uint64_t seed) {
  return inject_pairs(dataset, labels, clusters, pair_count, seed, true);
}

SyntheticData make_anomaly_benchmark(DensityMode mode, std::uint64_t seed,
                                     std::size_t instances, const AnomalyPlan& plan,
                                     std::size_t views) {
  if (plan.class_instances % 2 != 0 || plan.class_attribute_instances % 2 != 0) {
    throw Error(ErrorCode::kBadConfig, "pair-based anomaly counts must be even");
  }
  SyntheticData data =
      make_multiview_clusters(default_cluster_config(mode, instances, views), seed);
  Injection step = inject_attribute_anomalies(data.dataset, data.labels, plan.attribute, seed);
  step = inject_class_attribute_anomalies(step.dataset, step.labels, data.clusters,
                                          plan.class_attribute_instances / 2, seed);
  step = inject_class_anomalies(step.dataset, step.labels, data.clusters,
                                plan.class_instances / 2, seed);
  data.dataset = std::move(step.dataset);
  data.labels = std::move(step.labels);
  return data;
}

std::vector<std::size_t> split_views_column_order(std::size_t features,
                                                  std::uint64_t seed) {
  std::vector<std::size_t> order(features);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng = make_rng(seed, StreamDomain::kViewSplit);
  std::shuffle(order.begin(), order.end(), rng);
  return order;
}

MultiViewDataset split_views(const FeatureMatrix& matrix, std::size_t view_count,
                             std::uint64_t seed) {
  const std::size_t features = matrix.cols();
  if (view_count == 0 || features < view_count) {
    throw Error(ErrorCode::kTooFewFeatures,
                std::to_string(features) + " features cannot fill " +
                    std::to_string(view_count) + " views");
  }
  const auto order = split_views_column_order(features, seed);
  std::vector<FeatureMatrix> views;
  std::size_t offset = 0;
  for (std::size_t v = 0; v < view_count; ++v) {
    const std::size_t width = features / view_count + (v < features % view_count ? 1 : 0);
    FeatureMatrix view(matrix.rows(), width);
    for (std::size_t r = 0; r < matrix.rows(); ++r) {
      for (std::size_t c = 0; c < width; ++c) view(r, c) = matrix(r, order[offset + c]);
    }
    views.push_back(std::move(view));
    offset += width;
  }
  return MultiViewDataset(std::move(views));
}

}  // namespace scone
