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

// Synthetic multi-view cluster data, anomaly injection and feature-split
// view construction.

#ifndef SCONE_SYNTHETIC_H_
#define SCONE_SYNTHETIC_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "scone/types.h"

namespace scone {

enum class DensityMode { kUniform, kVaried };

std::string_view density_mode_name(DensityMode mode);
std::optional<DensityMode> parse_density_mode(std::string_view name);

// Gaussian clusters observed through several views. Every instance has one
// latent cluster shared by all views; in view v it is drawn around
// centers[v][cluster] with isotropic std stds[v][cluster].
struct ClusterConfig {
  std::size_t instances = 1000;
  std::vector<std::vector<std::vector<double>>> centers;  // [view][cluster][dim]
  std::vector<std::vector<double>> stds;                  // [view][cluster]
};

// Three clusters in 2-D per view. Uniform mode uses std 1.0 everywhere;
// varied mode uses stds (0.3, 1.0, 2.5) in view 1 and rotates that
// assignment by one cluster per additional view, so each cluster's density
// also changes from view to view.
ClusterConfig default_cluster_config(DensityMode mode, std::size_t instances,
                                     std::size_t views = 2);

struct SyntheticData {
  MultiViewDataset dataset;
  LabelVector labels;
  std::vector<int> clusters;  // latent cluster per instance
};

// Cluster sizes differ by at most one; assignment order is shuffled by
// seed. All labels are kNormal. Throws kBadConfig.
SyntheticData make_multiview_clusters(const ClusterConfig& config, std::uint64_t seed);

struct Injection {
  MultiViewDataset dataset;
  LabelVector labels;
  std::vector<std::size_t> changed;  // ascending
};

// Replaces every view of `count` currently-normal instances with uniform
// draws over each feature's observed [min, max]. Throws kCountExceedsN.
Injection inject_attribute_anomalies(const MultiViewDataset& dataset,
                                     const LabelVector& labels, std::size_t count,
                                     std::uint64_t seed);

// Swaps a uniformly chosen nonempty proper subset of views between each of
// `pair_count` pairs of currently-normal instances. When `clusters` is
// non-empty the two members of a pair come from different latent clusters.
// Throws kPairsExceedN, kSingleViewDataset, kBadConfig.
Injection inject_class_anomalies(const MultiViewDataset& dataset,
                                 const LabelVector& labels,
                                 std::span<const int> clusters,
                                 std::size_t pair_count, std::uint64_t seed);

// As inject_class_anomalies, then overwrites the remaining views of both
// pair members with uniform draws over observed feature ranges.
Injection inject_class_attribute_anomalies(const MultiViewDataset& dataset,
                                           const LabelVector& labels,
                                           std::span<const int> clusters,
                                           std::size_t pair_count,
                                           std::uint64_t seed);

struct AnomalyPlan {
  std::size_t attribute = 10;
  std::size_t class_instances = 10;            // must be even
  std::size_t class_attribute_instances = 10;  // must be even
};

// Full synthetic benchmark: `instances` clustered rows, then attribute,
// class-attribute and class anomalies injected into distinct normal rows.
// Defaults give 970 normals plus 10 of each anomaly type.
SyntheticData make_anomaly_benchmark(DensityMode mode, std::uint64_t seed,
                                     std::size_t instances = 1000,
                                     const AnomalyPlan& plan = {},
                                     std::size_t views = 2);

// Partitions the d columns into view_count near-equal subsets (sizes differ
// by at most one, larger subsets first) after a seeded column permutation.
// Throws kTooFewFeatures.
MultiViewDataset split_views(const FeatureMatrix& matrix, std::size_t view_count,
                             std::uint64_t seed);

// Column permutation used by split_views: order[c] is the source column of
// concatenated output column c.
std::vector<std::size_t> split_views_column_order(std::size_t features,
                                                  std::uint64_t seed);

}  // namespace scone

#endif  // SCONE_SYNTHETIC_H_
