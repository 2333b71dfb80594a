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

// Per-view geometry of a subsample: adaptive radii, nearest-sample queries
// and the membership indicators built on them.
//
// For a sample set S in view v, sample s_i owns a sphere whose radius is
// the distance to its nearest other sample. A point x belongs to s_i in that
// view when it lies inside the sphere (boundary included) and s_i is one of
// the k samples nearest to x. An instance belongs to s_i consistently when
// it belongs in every view.
//
// Distances are exact Euclidean distances. Every comparison is made on the
// square-rooted distance so that radius and ranking tests agree bit for bit
// across implementations. Distance ties are broken by ascending sample
// position.

#ifndef SCONE_NEIGHBORHOODS_H_
#define SCONE_NEIGHBORHOODS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "scone/types.h"

namespace scone {

// Sum of squared differences accumulated in feature order, then sqrt.
double euclidean_distance(std::span<const double> a, std::span<const double> b);

// radius[i] = min over j != i of |s_i - s_j|. Throws kFewerThanTwoSamples.
std::vector<double> compute_radii(const FeatureMatrix& samples);

// Positions of the k samples nearest to x, ordered by (distance, position).
// Throws kKTooSmall / kKExceedsPsi.
std::vector<std::size_t> knn_among_samples(std::span<const double> x,
                                           const FeatureMatrix& samples,
                                           std::size_t k);

// 1 iff |x - s_i| <= radii[i] and s_i is among the k samples nearest to x.
bool spherical_membership(std::span<const double> x, std::size_t i,
                          const FeatureMatrix& samples,
                          std::span<const double> radii, std::size_t k);

// 1 iff s_i is the nearest sample to x (lowest position wins ties).
bool voronoi_membership(std::span<const double> x, std::size_t i,
                        const FeatureMatrix& samples);

// Sample points of one member, gathered per view.
struct MemberGeometry {
  std::vector<FeatureMatrix> points;  // [view] psi x d_v
  const SampleSet* member = nullptr;

  std::size_t psi() const noexcept { return member->indices.size(); }
  std::span<const double> radii(std::size_t v) const { return member->radii[v]; }
};

MemberGeometry gather_member(const MultiViewDataset& dataset,
                             const SampleSet& member);

// Reusable buffers for membership queries; one per thread.
struct MembershipScratch {
  std::vector<std::pair<double, std::uint32_t>> ranked;
  std::vector<std::uint32_t> view_hits;
};

// Writes the ascending positions i with view membership 1 into `hits`.
// At most k positions for the spherical variants, exactly one for Voronoi.
void view_memberships(std::span<const double> x, const FeatureMatrix& samples,
                      std::span<const double> radii, std::size_t k,
                      Variant variant, MembershipScratch& scratch,
                      std::vector<std::uint32_t>& hits);

// Ascending positions i whose membership holds in every view.
void consistent_memberships(const MultiViewDataset& dataset, std::size_t instance,
                            const MemberGeometry& geometry,
                            const SconeParams& params, MembershipScratch& scratch,
                            std::vector<std::uint32_t>& hits);

// Product over views of the per-view indicator for sample `sample` of
// model member `member`. Throws kFingerprintMismatch.
bool multiview_membership(const EnsembleModel& model, std::size_t member,
                          const MultiViewDataset& dataset, std::size_t instance,
                          std::size_t sample);

// V x psi indicator matrix of one instance against one member.
class BinaryEmbedding {
 public:
  BinaryEmbedding(std::size_t views, std::size_t psi)
      : views_(views), psi_(psi), bits_(views * psi, 0) {}

  std::size_t views() const noexcept { return views_; }
  std::size_t psi() const noexcept { return psi_; }
  bool bit(std::size_t v, std::size_t i) const { return bits_[v * psi_ + i] != 0; }
  void set(std::size_t v, std::size_t i, bool value) {
    bits_[v * psi_ + i] = value ? 1 : 0;
  }
  std::size_t row_count(std::size_t v) const;
  // AND of column i over all views.
  bool column_and(std::size_t i) const;
  bool is_zero() const;

  bool operator==(const BinaryEmbedding&) const = default;

 private:
  std::size_t views_;
  std::size_t psi_;
  std::vector<std::uint8_t> bits_;
};

// Throws kFingerprintMismatch.
BinaryEmbedding embed_memberships(const EnsembleModel& model, std::size_t member,
                                  const MultiViewDataset& dataset,
                                  std::size_t instance);

}  // namespace scone

#endif  // SCONE_NEIGHBORHOODS_H_
