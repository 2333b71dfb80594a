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

#include "scone/neighborhoods.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace scone {
namespace {

// Above this many radius-passing candidates, ranking switches to nth_element.
constexpr std::size_t kRankByCountingLimit = 8;

void check_k(std::size_t k, std::size_t psi) {
  if (k < 1) throw Error(ErrorCode::kKTooSmall, "k must be at least 1");
  if (k > psi) {
    throw Error(ErrorCode::kKExceedsPsi,
                "k=" + std::to_string(k) + " exceeds psi=" + std::to_string(psi));
  }
}

void rank_samples(std::span<const double> x, const FeatureMatrix& samples,
                  std::vector<std::pair<double, std::uint32_t>>& ranked) {
  const std::size_t psi = samples.rows();
  ranked.resize(psi);
  for (std::size_t i = 0; i < psi; ++i) {
    ranked[i] = {euclidean_distance(x, samples.row(i)), static_cast<std::uint32_t>(i)};
  }
}

}  // namespace

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t c = 0; c < a.size(); ++c) {
    const double diff = a[c] - b[c];
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

std::vector<double> compute_radii(const FeatureMatrix& samples) {
  const std::size_t psi = samples.rows();
  if (psi < 2) {
    throw Error(ErrorCode::kFewerThanTwoSamples,
                "radius needs at least two samples, got " + std::to_string(psi));
  }
  std::vector<double> radii(psi, std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < psi; ++i) {
    for (std::size_t j = i + 1; j < psi; ++j) {
      const double d = euclidean_distance(samples.row(i), samples.row(j));
      radii[i] = std::min(radii[i], d);
      radii[j] = std::min(radii[j], d);
    }
  }
  return radii;
}

std::vector<std::size_t> knn_among_samples(std::span<const double> x,
                                           const FeatureMatrix& samples,
                                           std::size_t k) {
  check_k(k, samples.rows());
  std::vector<std::pair<double, std::uint32_t>> ranked;
  rank_samples(x, samples, ranked);
  std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(k),
                    ranked.end());
  std::vector<std::size_t> out;
  out.reserve(k);
  for (std::size_t r = 0; r < k; ++r) out.push_back(ranked[r].second);
  return out;
}

bool spherical_membership(std::span<const double> x, std::size_t i,
                          const FeatureMatrix& samples,
                          std::span<const double> radii, std::size_t k) {
  check_k(k, samples.rows());
  const double d = euclidean_distance(x, samples.row(i));
  if (!(d <= radii[i])) return false;
  const auto knn = knn_among_samples(x, samples, k);
  return std::find(knn.begin(), knn.end(), i) != knn.end();
}

bool voronoi_membership(std::span<const double> x, std::size_t i,
                        const FeatureMatrix& samples) {
  return knn_among_samples(x, samples, 1).front() == i;
}

MemberGeometry gather_member(const MultiViewDataset& dataset,
                             const SampleSet& member) {
  MemberGeometry geometry;
  geometry.member = &member;
  geometry.points.reserve(dataset.view_count());
  for (std::size_t v = 0; v < dataset.view_count(); ++v) {
    const FeatureMatrix& view = dataset.view(v);
    FeatureMatrix points(member.indices.size(), view.cols());
    for (std::size_t i = 0; i < member.indices.size(); ++i) {
      const auto src = view.row(member.indices[i]);
      std::copy(src.begin(), src.end(), points.row(i).begin());
    }
    geometry.points.push_back(std::move(points));
  }
  return geometry;
}

void view_memberships(std::span<const double> x, const FeatureMatrix& samples,
                      std::span<const double> radii, std::size_t k,
                      Variant variant, MembershipScratch& scratch,
                      std::vector<std::uint32_t>& hits) {
  hits.clear();
  auto& ranked = scratch.ranked;
  rank_samples(x, samples, ranked);
  if (variant == Variant::kVoronoi) {
    hits.push_back(std::min_element(ranked.begin(), ranked.end())->second);
    return;
  }
  // Radius test first; it is cheap and usually leaves only a few candidates.
  for (const auto& [d, i] : ranked) {
    if (d <= radii[i]) hits.push_back(i);
  }
  if (hits.empty() || k >= ranked.size()) return;
  if (hits.size() <= kRankByCountingLimit) {
    // Keep candidate i iff fewer than k samples precede it in (distance, position).
    std::size_t kept = 0;
    for (std::uint32_t i : hits) {
      const auto key = ranked[i];
      std::size_t ahead = 0;
      for (const auto& other : ranked) {
        if (other < key && ++ahead >= k) break;
      }
      if (ahead < k) hits[kept++] = i;
    }
    hits.resize(kept);
    return;
  }
  std::nth_element(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(k - 1),
                   ranked.end());
  hits.clear();
  for (std::size_t r = 0; r < k; ++r) {
    if (ranked[r].first <= radii[ranked[r].second]) hits.push_back(ranked[r].second);
  }
  std::sort(hits.begin(), hits.end());
}

void consistent_memberships(const MultiViewDataset& dataset, std::size_t instance,
                            const MemberGeometry& geometry,
                            const SconeParams& params, MembershipScratch& scratch,
                            std::vector<std::uint32_t>& hits) {
  const std::size_t k = params.effective_k();
  view_memberships(dataset.point(instance, 0), geometry.points[0], geometry.radii(0), k,
                   params.variant, scratch, hits);
  for (std::size_t v = 1; v < dataset.view_count() && !hits.empty(); ++v) {
    view_memberships(dataset.point(instance, v), geometry.points[v], geometry.radii(v),
                     k, params.variant, scratch, scratch.view_hits);
    const auto end = std::set_intersection(hits.begin(), hits.end(),
                                           scratch.view_hits.begin(),
                                           scratch.view_hits.end(), hits.begin());
    hits.erase(end, hits.end());
  }
}

namespace {

void check_member_query(const EnsembleModel& model, std::size_t member,
                        const MultiViewDataset& dataset, std::size_t instance) {
  check_fingerprint(model, dataset);
  if (member >= model.members.size() || instance >= dataset.size()) {
    throw Error(ErrorCode::kIndexOutOfRange, "member or instance index out of range");
  }
}

bool view_indicator(std::span<const double> x, std::size_t i,
                    const FeatureMatrix& points, std::span<const double> radii,
                    const SconeParams& params) {
  if (params.variant == Variant::kVoronoi) return voronoi_membership(x, i, points);
  return spherical_membership(x, i, points, radii, params.effective_k());
}

}  // namespace

bool multiview_membership(const EnsembleModel& model, std::size_t member,
                          const MultiViewDataset& dataset, std::size_t instance,
                          std::size_t sample) {
  check_member_query(model, member, dataset, instance);
  const SampleSet& set = model.members[member];
  if (sample >= set.indices.size()) {
    throw Error(ErrorCode::kIndexOutOfRange, "sample position out of range");
  }
  const MemberGeometry geometry = gather_member(dataset, set);
  for (std::size_t v = 0; v < dataset.view_count(); ++v) {
    if (!view_indicator(dataset.point(instance, v), sample, geometry.points[v],
                        geometry.radii(v), model.params)) {
      return false;
    }
  }
  return true;
}

std::size_t BinaryEmbedding::row_count(std::size_t v) const {
  return static_cast<std::size_t>(
      std::count(bits_.begin() + static_cast<std::ptrdiff_t>(v * psi_),
                 bits_.begin() + static_cast<std::ptrdiff_t>((v + 1) * psi_), 1));
}

bool BinaryEmbedding::column_and(std::size_t i) const {
  for (std::size_t v = 0; v < views_; ++v) {
    if (!bit(v, i)) return false;
  }
  return true;
}

bool BinaryEmbedding::is_zero() const {
  return std::all_of(bits_.begin(), bits_.end(), [](std::uint8_t b) { return b == 0; });
}

BinaryEmbedding embed_memberships(const EnsembleModel& model, std::size_t member,
                                  const MultiViewDataset& dataset,
                                  std::size_t instance) {
  check_member_query(model, member, dataset, instance);
  const SampleSet& set = model.members[member];
  const MemberGeometry geometry = gather_member(dataset, set);
  BinaryEmbedding embedding(dataset.view_count(), set.indices.size());
  MembershipScratch scratch;
  std::vector<std::uint32_t> hits;
  for (std::size_t v = 0; v < dataset.view_count(); ++v) {
    view_memberships(dataset.point(instance, v), geometry.points[v], geometry.radii(v),
                     model.params.effective_k(), model.params.variant, scratch, hits);
    for (std::uint32_t i : hits) embedding.set(v, i, true);
  }
  return embedding;
}

}  // namespace scone
