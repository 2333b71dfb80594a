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

#include "scone/experiments.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "scone/ensemble.h"
#include "scone/evaluation.h"
#include "scone/rng.h"

namespace scone {

std::vector<std::size_t> select_normals(const LabelVector& labels, std::size_t count,
                                        std::uint64_t seed) {
  std::vector<std::size_t> normals;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == Label::kNormal) normals.push_back(i);
  }
  if (count > normals.size()) {
    throw Error(ErrorCode::kCountExceedsN,
                std::to_string(count) + " normals requested, " +
                    std::to_string(normals.size()) + " available");
  }
  Rng rng = make_rng(seed, StreamDomain::kSelection);
  std::shuffle(normals.begin(), normals.end(), rng);
  normals.resize(count);
  return normals;
}

DetectionResult evaluate_detection(const MultiViewDataset& dataset,
                                   const LabelVector& labels, const SconeParams& params,
                                   const ExecutionOptions& options) {
  const EnsembleModel model = fit(dataset, params, options);
  const std::vector<double> scores = anomaly_scores(score_dataset(model, dataset, options));
  return {overall_auc(scores, labels), per_type_auc(scores, labels)};
}

namespace {

void summarize(AblationRow& row) {
  const double n = static_cast<double>(row.auc.size());
  row.mean = std::accumulate(row.auc.begin(), row.auc.end(), 0.0) / n;
  double ss = 0.0;
  for (double a : row.auc) ss += (a - row.mean) * (a - row.mean);
  row.stddev = row.auc.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
}

}  // namespace

std::vector<AblationRow> ablate_synthetic(DensityMode mode,
                                          std::span<const std::uint64_t> seeds,
                                          const SconeParams& params,
                                          const ExecutionOptions& options) {
  if (seeds.empty()) throw Error(ErrorCode::kInvalidArgument, "no seeds given");
  std::vector<AblationRow> rows;
  for (Variant variant : kAllVariants) rows.push_back({variant, {}, 0.0, 0.0});
  for (std::uint64_t seed : seeds) {
    const SyntheticData data = make_anomaly_benchmark(mode, seed);
    for (AblationRow& row : rows) {
      SconeParams p = params;
      p.seed = seed;
      p.variant = row.variant;
      row.auc.push_back(evaluate_detection(data.dataset, data.labels, p, options).auc);
    }
  }
  for (AblationRow& row : rows) summarize(row);
  return rows;
}

std::vector<AblationRow> ablate_dataset(const MultiViewDataset& dataset,
                                        const LabelVector& labels,
                                        const SconeParams& params,
                                        const ExecutionOptions& options) {
  std::vector<AblationRow> rows;
  for (Variant variant : kAllVariants) {
    SconeParams p = params;
    p.variant = variant;
    AblationRow row{variant, {evaluate_detection(dataset, labels, p, options).auc}, 0, 0};
    summarize(row);
    rows.push_back(std::move(row));
  }
  return rows;
}

NeighborhoodCountCheck compare_view_neighborhoods(DensityMode mode, std::uint64_t data_seed,
                                                  std::size_t draws, std::size_t psi,
                                                  std::uint64_t sample_seed) {
  if (draws == 0) throw Error(ErrorCode::kInvalidArgument, "need at least one draw");
  const SyntheticData data = make_anomaly_benchmark(mode, data_seed);
  if (auto code = validate_params(SconeParams{psi, 1, 1, 0, Variant::kSpherical},
                                  data.dataset)) {
    throw Error(*code, "invalid sample size for the neighborhood count check");
  }
  NeighborhoodCountCheck check;
  check.draws = draws;
  check.view_means.assign(data.dataset.view_count(), 0.0);
  for (std::size_t d = 0; d < draws; ++d) {
    const auto indices = draw_member_indices(data.dataset.size(), psi, sample_seed, d);
    const auto counts = cross_view_neighborhood_counts(data.dataset, data.labels, indices);
    for (std::size_t v = 0; v < counts.size(); ++v) check.view_means[v] += counts[v];
  }
  for (double& m : check.view_means) m /= static_cast<double>(draws);
  const auto [lo, hi] = std::minmax_element(check.view_means.begin(), check.view_means.end());
  check.relative_difference = *hi > 0.0 ? (*hi - *lo) / *hi : 0.0;
  return check;
}

double region_weight_for_ratio(double ratio) {
  // Inside [4,6]^2 the mixture density is w/4 + (1-w)/100 against 1/100 for
  // the uniform generator.
  if (ratio < 1.0 || ratio > 25.0) {
    throw Error(ErrorCode::kInvalidArgument, "density ratio must lie in [1, 25]");
  }
  return (ratio - 1.0) / 24.0;
}

MembershipProbability run_density_probe(const DensityProbe& probe) {
  const std::vector<std::pair<double, double>> support{{0.0, 10.0}, {0.0, 10.0}};
  const std::vector<std::pair<double, double>> region{{4.0, 6.0}, {4.0, 6.0}};
  const PointGenerator sparse = uniform_mixture_generator(support, region, 0.0);
  const PointGenerator dense =
      uniform_mixture_generator(support, region, region_weight_for_ratio(probe.density_ratio));
  const std::vector<double> point{5.0, 5.0};
  const std::vector<double> shared{5.3, 5.0};
  return estimate_membership_probability(sparse, dense, point, shared, probe.psi, probe.k,
                                         probe.trials, probe.seed);
}

}  // namespace scone
