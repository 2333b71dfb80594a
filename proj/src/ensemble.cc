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

#include "scone/ensemble.h"

#include <algorithm>
#include <iterator>
#include <random>
#include <string>
#include <unordered_set>
#include <utility>

#include "scone/neighborhoods.h"
#include "scone/rng.h"

namespace scone {
namespace {

// Instances scored together against one member before moving to the next.
constexpr std::size_t kInstanceBlock = 512;

std::vector<MemberGeometry> gather_all(const EnsembleModel& model,
                                       const MultiViewDataset& dataset) {
  std::vector<MemberGeometry> out;
  out.reserve(model.members.size());
  for (const SampleSet& member : model.members) {
    out.push_back(gather_member(dataset, member));
  }
  return out;
}

}  // namespace

std::vector<std::size_t> draw_member_indices(std::size_t instances, std::size_t psi,
                                             std::uint64_t seed, std::size_t member) {
  Rng rng = make_rng(seed, StreamDomain::kEnsembleMember, member);
  // Floyd's sampling: psi distinct values from [0, instances).
  std::vector<std::size_t> chosen;
  chosen.reserve(psi);
  std::unordered_set<std::size_t> seen;
  seen.reserve(psi * 2);
  for (std::size_t j = instances - psi; j < instances; ++j) {
    std::uniform_int_distribution<std::size_t> pick(0, j);
    const std::size_t r = pick(rng);
    const std::size_t value = seen.contains(r) ? j : r;
    seen.insert(value);
    chosen.push_back(value);
  }
  std::shuffle(chosen.begin(), chosen.end(), rng);
  return chosen;
}

SampleSet make_sample_set(const MultiViewDataset& dataset,
                          std::vector<std::size_t> indices) {
  SampleSet set;
  set.indices = std::move(indices);
  for (std::size_t index : set.indices) {
    if (index >= dataset.size()) {
      throw Error(ErrorCode::kIndexOutOfRange,
                  "sample index " + std::to_string(index) + " out of range");
    }
  }
  const MemberGeometry geometry = gather_member(dataset, set);
  set.radii.reserve(dataset.view_count());
  for (const FeatureMatrix& points : geometry.points) {
    set.radii.push_back(compute_radii(points));
  }
  return set;
}

EnsembleModel fit(const MultiViewDataset& dataset, const SconeParams& params,
                  const ExecutionOptions& options) {
  check_params(params, dataset);
  EnsembleModel model;
  model.params = params;
  model.dataset_fingerprint = fingerprint(dataset);
  model.members.resize(params.t);
  parallel_for(params.t, options.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t j = begin; j < end; ++j) {
      model.members[j] = make_sample_set(
          dataset, draw_member_indices(dataset.size(), params.psi, params.seed, j));
    }
  });
  return model;
}

std::vector<std::uint64_t> consistency_counts(const EnsembleModel& model,
                                              const MultiViewDataset& dataset,
                                              const ExecutionOptions& options) {
  check_fingerprint(model, dataset);
  const std::vector<MemberGeometry> geometry = gather_all(model, dataset);
  std::vector<std::uint64_t> counts(dataset.size(), 0);
  parallel_for(dataset.size(), options.threads, [&](std::size_t begin, std::size_t end) {
    MembershipScratch scratch;
    std::vector<std::uint32_t> hits;
    for (std::size_t block = begin; block < end; block += kInstanceBlock) {
      const std::size_t block_end = std::min(end, block + kInstanceBlock);
      for (const MemberGeometry& member : geometry) {
        for (std::size_t x = block; x < block_end; ++x) {
          consistent_memberships(dataset, x, member, model.params, scratch, hits);
          counts[x] += hits.size();
        }
      }
    }
  });
  return counts;
}

ScoreVector score_dataset(const EnsembleModel& model, const MultiViewDataset& dataset,
                          const ExecutionOptions& options) {
  const auto counts = consistency_counts(model, dataset, options);
  const double pairs =
      static_cast<double>(model.params.psi) * static_cast<double>(model.members.size());
  ScoreVector scores;
  scores.consistency.reserve(counts.size());
  for (std::uint64_t count : counts) {
    scores.consistency.push_back(static_cast<double>(count) / pairs);
  }
  return scores;
}

std::vector<double> anomaly_scores(const ScoreVector& scores) {
  std::vector<double> out;
  out.reserve(scores.size());
  for (double c : scores.consistency) out.push_back(1.0 - c);
  return out;
}

MembershipTable::MembershipTable(const EnsembleModel& model,
                                 const MultiViewDataset& dataset,
                                 const ExecutionOptions& options)
    : instances_(dataset.size()), members_(model.members.size()) {
  check_fingerprint(model, dataset);
  const std::vector<MemberGeometry> geometry = gather_all(model, dataset);
  // Per-instance hit lists built in parallel, then concatenated in order.
  std::vector<std::vector<std::uint32_t>> per_instance(instances_);
  std::vector<std::vector<std::uint32_t>> per_instance_sizes(instances_);
  parallel_for(instances_, options.threads, [&](std::size_t begin, std::size_t end) {
    MembershipScratch scratch;
    std::vector<std::uint32_t> hits;
    for (std::size_t x = begin; x < end; ++x) {
      auto& flat = per_instance[x];
      auto& sizes = per_instance_sizes[x];
      sizes.reserve(members_);
      for (const MemberGeometry& member : geometry) {
        consistent_memberships(dataset, x, member, model.params, scratch, hits);
        flat.insert(flat.end(), hits.begin(), hits.end());
        sizes.push_back(static_cast<std::uint32_t>(hits.size()));
      }
    }
  });
  offsets_.reserve(instances_ * members_ + 1);
  offsets_.push_back(0);
  for (std::size_t x = 0; x < instances_; ++x) {
    for (std::uint32_t size : per_instance_sizes[x]) {
      offsets_.push_back(offsets_.back() + size);
    }
    positions_.insert(positions_.end(), per_instance[x].begin(), per_instance[x].end());
  }
}

std::span<const std::uint32_t> MembershipTable::hits(std::size_t instance,
                                                     std::size_t member) const {
  const std::size_t slot = instance * members_ + member;
  return {positions_.data() + offsets_[slot], offsets_[slot + 1] - offsets_[slot]};
}

double MembershipTable::similarity(std::size_t a, std::size_t b) const {
  if (a >= instances_ || b >= instances_) {
    throw Error(ErrorCode::kIndexOutOfRange, "instance index out of range");
  }
  std::uint64_t shared = 0;
  for (std::size_t j = 0; j < members_; ++j) {
    const auto ha = hits(a, j);
    const auto hb = hits(b, j);
    std::size_t p = 0;
    std::size_t q = 0;
    while (p < ha.size() && q < hb.size()) {
      if (ha[p] < hb[q]) {
        ++p;
      } else if (hb[q] < ha[p]) {
        ++q;
      } else {
        ++shared;
        ++p;
        ++q;
      }
    }
  }
  return static_cast<double>(shared) / static_cast<double>(members_);
}

std::vector<double> MembershipTable::similarity_row(std::size_t a) const {
  std::vector<double> row(instances_);
  for (std::size_t y = 0; y < instances_; ++y) row[y] = similarity(a, y);
  return row;
}

double co_membership_similarity(const EnsembleModel& model,
                                const MultiViewDataset& dataset, std::size_t a,
                                std::size_t b) {
  check_fingerprint(model, dataset);
  if (a >= dataset.size() || b >= dataset.size()) {
    throw Error(ErrorCode::kIndexOutOfRange, "instance index out of range");
  }
  MembershipScratch scratch;
  std::vector<std::uint32_t> hits_a;
  std::vector<std::uint32_t> hits_b;
  std::uint64_t shared = 0;
  for (const SampleSet& member : model.members) {
    const MemberGeometry geometry = gather_member(dataset, member);
    consistent_memberships(dataset, a, geometry, model.params, scratch, hits_a);
    consistent_memberships(dataset, b, geometry, model.params, scratch, hits_b);
    std::vector<std::uint32_t> common;
    std::set_intersection(hits_a.begin(), hits_a.end(), hits_b.begin(), hits_b.end(),
                          std::back_inserter(common));
    shared += common.size();
  }
  return static_cast<double>(shared) / static_cast<double>(model.members.size());
}

}  // namespace scone
