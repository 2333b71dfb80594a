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

#include "scone/oracle.h"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <utility>

#include "scone/neighborhoods.h"

namespace scone {
namespace {

// Kept separate from the scorer's distance routine on purpose; both must
// sum squared differences in feature order and take one sqrt.
double distance(std::span<const double> a, std::span<const double> b) {
  double total = 0.0;
  for (std::size_t c = 0; c < a.size(); ++c) {
    total += (a[c] - b[c]) * (a[c] - b[c]);
  }
  return std::sqrt(total);
}

std::vector<std::size_t> full_knn(const FeatureMatrix& view, std::size_t x,
                                  std::size_t k) {
  std::vector<std::pair<double, std::size_t>> ranked(view.rows());
  for (std::size_t y = 0; y < view.rows(); ++y) {
    ranked[y] = {distance(view.row(x), view.row(y)), y};
  }
  std::sort(ranked.begin(), ranked.end());
  std::vector<std::size_t> out(k);
  for (std::size_t r = 0; r < k; ++r) out[r] = ranked[r].second;
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<std::size_t> consistent_neighbors(const MultiViewDataset& dataset,
                                              std::size_t instance, std::size_t k) {
  if (k < 1 || k > dataset.size()) {
    throw Error(ErrorCode::kKExceedsN, "k=" + std::to_string(k) + " with N=" +
                                           std::to_string(dataset.size()));
  }
  if (instance >= dataset.size()) {
    throw Error(ErrorCode::kIndexOutOfRange, "instance index out of range");
  }
  std::vector<std::size_t> result = full_knn(dataset.view(0), instance, k);
  for (std::size_t v = 1; v < dataset.view_count(); ++v) {
    const auto knn = full_knn(dataset.view(v), instance, k);
    std::vector<std::size_t> kept;
    std::set_intersection(result.begin(), result.end(), knn.begin(), knn.end(),
                          std::back_inserter(kept));
    result = std::move(kept);
  }
  return result;
}

ScoreVector naive_score(const MultiViewDataset& dataset,
                        std::span<const SampleSet> members,
                        const SconeParams& params) {
  const std::size_t k = params.effective_k();
  const std::size_t views = dataset.view_count();
  ScoreVector scores;
  scores.consistency.resize(dataset.size());
  for (std::size_t x = 0; x < dataset.size(); ++x) {
    std::uint64_t hits = 0;
    for (const SampleSet& member : members) {
      const std::size_t psi = member.indices.size();
      for (std::size_t i = 0; i < psi; ++i) {
        bool all_views = true;
        for (std::size_t v = 0; v < views && all_views; ++v) {
          const auto xv = dataset.point(x, v);
          const double di = distance(xv, dataset.point(member.indices[i], v));
          std::size_t closer = 0;
          for (std::size_t j = 0; j < psi; ++j) {
            const double dj = distance(xv, dataset.point(member.indices[j], v));
            if (dj < di || (dj == di && j < i)) ++closer;
          }
          const bool in_view = params.variant == Variant::kVoronoi
                                   ? closer == 0
                                   : (di <= member.radii[v][i] && closer < k);
          all_views = in_view;
        }
        if (all_views) ++hits;
      }
    }
    scores.consistency[x] =
        static_cast<double>(hits) /
        (static_cast<double>(params.psi) * static_cast<double>(members.size()));
  }
  return scores;
}

ProportionResult proportion_consistent(const MultiViewDataset& dataset,
                                       const SimilarityRow& similarity,
                                       std::size_t k_oracle,
                                       std::span<const std::size_t> selected,
                                       std::size_t k_repr) {
  if (k_repr < 1) throw Error(ErrorCode::kInvalidArgument, "k_repr must be at least 1");
  ProportionResult result;
  for (std::size_t x : selected) {
    std::vector<std::size_t> cn = consistent_neighbors(dataset, x, k_oracle);
    cn.erase(std::remove(cn.begin(), cn.end(), x), cn.end());
    if (cn.empty()) {
      result.skipped.push_back(x);
      continue;
    }
    const std::vector<double> row = similarity(x);
    std::vector<double> others;
    others.reserve(row.size());
    for (std::size_t y = 0; y < row.size(); ++y) {
      if (y != x) others.push_back(row[y]);
    }
    double overlap = 0.0;
    if (k_repr >= others.size()) {
      overlap = static_cast<double>(cn.size());
    } else {
      std::nth_element(others.begin(),
                       others.begin() + static_cast<std::ptrdiff_t>(k_repr - 1),
                       others.end(), std::greater<>());
      const double boundary = others[k_repr - 1];
      std::size_t above = 0;
      std::size_t tied = 0;
      for (std::size_t y = 0; y < row.size(); ++y) {
        if (y == x) continue;
        if (row[y] > boundary) ++above;
        if (row[y] == boundary) ++tied;
      }
      const double tie_share =
          static_cast<double>(k_repr - above) / static_cast<double>(tied);
      for (std::size_t y : cn) {
        if (row[y] > boundary) overlap += 1.0;
        else if (row[y] == boundary) overlap += tie_share;
      }
    }
    result.evaluated.push_back(x);
    result.per_instance.push_back(100.0 * overlap / static_cast<double>(cn.size()));
  }
  if (!result.per_instance.empty()) {
    result.percentage =
        std::accumulate(result.per_instance.begin(), result.per_instance.end(), 0.0) /
        static_cast<double>(result.per_instance.size());
  }
  return result;
}

ProportionResult proportion_consistent(const MultiViewDataset& dataset,
                                       const EnsembleModel& model,
                                       std::size_t k_oracle,
                                       std::span<const std::size_t> selected,
                                       std::size_t k_repr,
                                       const ExecutionOptions& options) {
  const MembershipTable table(model, dataset, options);
  return proportion_consistent(
      dataset, [&table](std::size_t a) { return table.similarity_row(a); }, k_oracle,
      selected, k_repr);
}

PointGenerator uniform_mixture_generator(std::vector<std::pair<double, double>> support,
                                         std::vector<std::pair<double, double>> region,
                                         double region_weight) {
  if (support.size() != region.size() || region_weight < 0.0 || region_weight > 1.0) {
    throw Error(ErrorCode::kInvalidArgument, "mismatched boxes or weight outside [0, 1]");
  }
  return [support = std::move(support), region = std::move(region),
          region_weight](Rng& rng, std::span<double> out) {
    std::bernoulli_distribution in_region(region_weight);
    const auto& box = in_region(rng) ? region : support;
    for (std::size_t c = 0; c < out.size(); ++c) {
      std::uniform_real_distribution<double> coord(box[c].first, box[c].second);
      out[c] = coord(rng);
    }
  };
}

double one_sided_two_proportion_p_value(std::size_t hits1, std::size_t n1,
                                        std::size_t hits2, std::size_t n2) {
  const double p1 = static_cast<double>(hits1) / static_cast<double>(n1);
  const double p2 = static_cast<double>(hits2) / static_cast<double>(n2);
  const double pooled =
      static_cast<double>(hits1 + hits2) / static_cast<double>(n1 + n2);
  const double se = std::sqrt(pooled * (1.0 - pooled) *
                              (1.0 / static_cast<double>(n1) + 1.0 / static_cast<double>(n2)));
  if (se == 0.0) return p1 > p2 ? 0.0 : 1.0;
  const double z = (p1 - p2) / se;
  return 0.5 * std::erfc(z / std::sqrt(2.0));
}

MembershipProbability estimate_membership_probability(
    const PointGenerator& sparse, const PointGenerator& dense,
    std::span<const double> probe, std::span<const double> shared_sample,
    std::size_t psi, std::size_t k, std::size_t trials, std::uint64_t seed) {
  if (psi < 2) throw Error(ErrorCode::kPsiTooSmall, "psi must be at least 2");
  if (k < 1 || k > psi) throw Error(ErrorCode::kKExceedsPsi, "k must lie in [1, psi]");
  if (trials < 1000) {
    throw Error(ErrorCode::kInvalidArgument, "at least 1000 trials are required");
  }
  const std::size_t dim = probe.size();
  if (shared_sample.size() != dim || dim == 0) {
    throw Error(ErrorCode::kInvalidArgument, "probe and shared sample dimensions differ");
  }
  for (const PointGenerator* generator : {&sparse, &dense}) {
    Rng rng = make_rng(seed, StreamDomain::kSelection);
    std::vector<double> first(dim);
    std::vector<double> next(dim);
    (*generator)(rng, first);
    bool varies = false;
    for (int draw = 0; draw < 32 && !varies; ++draw) {
      (*generator)(rng, next);
      varies = next != first;
    }
    if (!varies) {
      throw Error(ErrorCode::kDegenerateGenerator, "generator puts all mass on one point");
    }
  }

  auto run = [&](const PointGenerator& generator) {
    std::size_t hits = 0;
    FeatureMatrix samples(psi, dim);
    for (std::size_t trial = 0; trial < trials; ++trial) {
      // Both generators see the same stream for a given trial.
      Rng rng = make_rng(seed, StreamDomain::kMonteCarloTrial, trial);
      for (std::size_t i = 0; i + 1 < psi; ++i) generator(rng, samples.row(i));
      std::copy(shared_sample.begin(), shared_sample.end(), samples.row(psi - 1).begin());
      const auto radii = compute_radii(samples);
      if (spherical_membership(probe, psi - 1, samples, radii, k)) ++hits;
    }
    return hits;
  };

  MembershipProbability result;
  result.trials = trials;
  result.hits_sparse = run(sparse);
  result.hits_dense = run(dense);
  result.p_sparse = static_cast<double>(result.hits_sparse) / static_cast<double>(trials);
  result.p_dense = static_cast<double>(result.hits_dense) / static_cast<double>(trials);
  result.p_value =
      one_sided_two_proportion_p_value(result.hits_sparse, trials, result.hits_dense, trials);
  return result;
}

std::vector<double> cross_view_neighborhood_counts(
    const MultiViewDataset& dataset, const LabelVector& labels,
    std::span<const std::size_t> sample_indices) {
  if (labels.size() != dataset.size()) {
    throw Error(ErrorCode::kInvalidArgument, "labels do not match dataset size");
  }
  const SampleSet set = [&] {
    SampleSet s;
    s.indices.assign(sample_indices.begin(), sample_indices.end());
    return s;
  }();
  const MemberGeometry geometry = gather_member(dataset, set);
  std::vector<double> means;
  for (std::size_t v = 0; v < dataset.view_count(); ++v) {
    const std::vector<double> radii = compute_radii(geometry.points[v]);
    std::size_t total = 0;
    for (std::size_t i = 0; i < set.indices.size(); ++i) {
      const auto centre = geometry.points[v].row(i);
      for (std::size_t y = 0; y < dataset.size(); ++y) {
        if (labels[y] == Label::kNormal && distance(dataset.point(y, v), centre) <= radii[i]) {
          ++total;
        }
      }
    }
    means.push_back(static_cast<double>(total) / static_cast<double>(set.indices.size()));
  }
  return means;
}

}  // namespace scone
