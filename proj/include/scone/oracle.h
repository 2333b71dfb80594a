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

// Reference implementations used to check the detector: full-dataset
// consistent neighbors, a direct triple-loop scorer, the neighbor
// proportion metric and Monte Carlo probes of the data-dependent
// neighborhood properties. None of these call the fast scoring path.

#ifndef SCONE_ORACLE_H_
#define SCONE_ORACLE_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "scone/ensemble.h"
#include "scone/rng.h"
#include "scone/types.h"

namespace scone {

// Instances y such that, in every view, y is among the k nearest
// neighbors of x in the full dataset (x itself included, ties by index).
// Returned ascending. Throws kKExceedsN.
std::vector<std::size_t> consistent_neighbors(const MultiViewDataset& dataset,
                                              std::size_t instance, std::size_t k);

// Direct transcription of the mean over members and samples of the product
// over views of the spherical (or Voronoi) indicator. Uses the radii stored
// in `members`.
ScoreVector naive_score(const MultiViewDataset& dataset,
                        std::span<const SampleSet> members,
                        const SconeParams& params);

struct ProportionResult {
  double percentage = 0.0;               // mean over evaluated instances
  std::vector<double> per_instance;      // aligned with `evaluated`
  std::vector<std::size_t> evaluated;
  std::vector<std::size_t> skipped;      // empty consistent set
};

// Similarity of instance a to every instance; larger is more similar.
using SimilarityRow = std::function<std::vector<double>(std::size_t)>;

// For each selected instance x: CN = consistent_neighbors(x, k_oracle)
// without x; top = the k_repr instances (x excluded) most similar to x.
// Records |CN intersect top| / |CN| * 100. Ties at the top-k boundary are
// credited fractionally, i.e. the expected overlap under a uniformly random
// order of the tied group.
ProportionResult proportion_consistent(const MultiViewDataset& dataset,
                                       const SimilarityRow& similarity,
                                       std::size_t k_oracle,
                                       std::span<const std::size_t> selected,
                                       std::size_t k_repr);

// Uses the co-membership similarity of `model`.
ProportionResult proportion_consistent(const MultiViewDataset& dataset,
                                       const EnsembleModel& model,
                                       std::size_t k_oracle,
                                       std::span<const std::size_t> selected,
                                       std::size_t k_repr,
                                       const ExecutionOptions& options = {});

// Draws a single-view point into `out`.
using PointGenerator = std::function<void(Rng&, std::span<double>)>;

// Mixture of a uniform box `region` (weight `region_weight`) and a uniform
// box `support` (remaining weight). Both boxes given as per-dimension
// [low, high] pairs.
PointGenerator uniform_mixture_generator(std::vector<std::pair<double, double>> support,
                                         std::vector<std::pair<double, double>> region,
                                         double region_weight);

struct MembershipProbability {
  double p_sparse = 0.0;
  double p_dense = 0.0;
  std::size_t hits_sparse = 0;
  std::size_t hits_dense = 0;
  std::size_t trials = 0;
  // One-sided p-value for p_sparse > p_dense.
  double p_value = 1.0;
};

// Per trial: psi - 1 points from the generator plus `shared_sample` (placed
// last) form the sample set; records the spherical membership of `probe`
// in the shared sample's neighborhood. Trial streams derive from
// (seed, trial). Throws kDegenerateGenerator, kInvalidArgument.
MembershipProbability estimate_membership_probability(
    const PointGenerator& sparse, const PointGenerator& dense,
    std::span<const double> probe, std::span<const double> shared_sample,
    std::size_t psi, std::size_t k, std::size_t trials, std::uint64_t seed);

// One-sided pooled two-proportion z-test of H1: p1 > p2.
double one_sided_two_proportion_p_value(std::size_t hits1, std::size_t n1,
                                        std::size_t hits2, std::size_t n2);

// For every view: mean over sampled points of the number of normal
// instances inside the sampled point's sphere (radius from the given
// sample set). Throws kFewerThanTwoSamples.
std::vector<double> cross_view_neighborhood_counts(
    const MultiViewDataset& dataset, const LabelVector& labels,
    std::span<const std::size_t> sample_indices);

}  // namespace scone

#endif  // SCONE_ORACLE_H_
