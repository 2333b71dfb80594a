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

#ifndef SCONE_ENSEMBLE_H_
#define SCONE_ENSEMBLE_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "scone/parallel.h"
#include "scone/types.h"

namespace scone {

// Draws params.t subsamples of params.psi distinct instances and records
// their per-view radii. Member j depends only on (params.seed, j).
EnsembleModel fit(const MultiViewDataset& dataset, const SconeParams& params,
                  const ExecutionOptions& options = {});

// Indices of member `member` for the given seed; exposed so that oracles
// and tests can rebuild a member independently.
std::vector<std::size_t> draw_member_indices(std::size_t instances, std::size_t psi,
                                             std::uint64_t seed, std::size_t member);

// Builds a SampleSet (indices plus radii) from explicit indices.
SampleSet make_sample_set(const MultiViewDataset& dataset,
                          std::vector<std::size_t> indices);

// Number of (member, sample) pairs with consistent membership, per instance.
std::vector<std::uint64_t> consistency_counts(const EnsembleModel& model,
                                              const MultiViewDataset& dataset,
                                              const ExecutionOptions& options = {});

// Mean consistent membership over all psi * t (member, sample) pairs.
// Throws kFingerprintMismatch.
ScoreVector score_dataset(const EnsembleModel& model, const MultiViewDataset& dataset,
                          const ExecutionOptions& options = {});

// 1 - consistency; higher is more anomalous.
std::vector<double> anomaly_scores(const ScoreVector& scores);

// Consistent-membership sets of every instance against every member,
// stored sparsely. Backs the co-membership similarity.
class MembershipTable {
 public:
  MembershipTable(const EnsembleModel& model, const MultiViewDataset& dataset,
                  const ExecutionOptions& options = {});

  std::size_t instances() const noexcept { return instances_; }
  std::size_t members() const noexcept { return members_; }

  // Positions with consistent membership for (instance, member), ascending.
  std::span<const std::uint32_t> hits(std::size_t instance, std::size_t member) const;

  // (1/t) sum_j |hits(a, j) intersect hits(b, j)|.
  double similarity(std::size_t a, std::size_t b) const;

  // similarity(a, y) for every instance y.
  std::vector<double> similarity_row(std::size_t a) const;

 private:
  std::size_t instances_;
  std::size_t members_;
  std::vector<std::size_t> offsets_;  // (instance * members + member) -> start
  std::vector<std::uint32_t> positions_;
};

// Average number of consistent neighborhoods shared by instances a and b.
// Throws kFingerprintMismatch / kIndexOutOfRange.
double co_membership_similarity(const EnsembleModel& model,
                                const MultiViewDataset& dataset, std::size_t a,
                                std::size_t b);

}  // namespace scone

#endif  // SCONE_ENSEMBLE_H_
