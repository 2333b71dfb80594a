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
#include <cmath>
#include <set>

#include "gtest/gtest.h"
#include "scone/neighborhoods.h"
#include "scone/oracle.h"
#include "scone/synthetic.h"
#include "test_util.h"

namespace scone {
namespace {

using testing::single_view;

EnsembleModel model_over(const MultiViewDataset& data,
                         std::vector<std::vector<std::size_t>> members, std::size_t k) {
  EnsembleModel model;
  model.params.psi = members.front().size();
  model.params.k = k;
  model.params.t = members.size();
  for (auto& indices : members) {
    model.members.push_back(make_sample_set(data, std::move(indices)));
  }
  model.dataset_fingerprint = fingerprint(data);
  return model;
}

// True when another sample of the member shares idx's coordinates in some
// view; the index tie-break can then hand the nearest slot to the other one.
bool has_coincident_partner(const MultiViewDataset& data, const SampleSet& member,
                            std::size_t idx) {
  for (auto other : member.indices) {
    if (other == idx) continue;
    for (std::size_t v = 0; v < data.view_count(); ++v) {
      const auto a = data.point(idx, v);
      const auto b = data.point(other, v);
      if (std::equal(a.begin(), a.end(), b.begin())) return true;
    }
  }
  return false;
}

TEST(Fit, ShapeContract) {
  const auto data = make_anomaly_benchmark(DensityMode::kVaried, 0).dataset;
  SconeParams params;
  params.psi = 8;
  params.t = 200;
  params.seed = 42;
  const auto model = fit(data, params);
  ASSERT_EQ(model.members.size(), 200u);
  for (const auto& member : model.members) {
    ASSERT_EQ(member.indices.size(), 8u);
    EXPECT_EQ(std::set<std::size_t>(member.indices.begin(), member.indices.end()).size(),
              8u);
    for (auto idx : member.indices) EXPECT_LT(idx, data.size());
    ASSERT_EQ(member.radii.size(), data.view_count());
    for (const auto& r : member.radii) EXPECT_EQ(r.size(), 8u);
  }
  EXPECT_EQ(model.params, params);
  EXPECT_EQ(model.dataset_fingerprint, fingerprint(data));
}

TEST(Fit, Deterministic) {
  const auto data = make_anomaly_benchmark(DensityMode::kVaried, 1).dataset;
  SconeParams params;
  params.seed = 42;
  EXPECT_EQ(fit(data, params), fit(data, params));
  params.seed = 43;
  EXPECT_NE(fit(data, params).members, fit(data, SconeParams{}).members);
}

TEST(Fit, MemberDependsOnlyOnSeedAndIndex) {
  const auto data = make_anomaly_benchmark(DensityMode::kUniform, 1).dataset;
  SconeParams small;
  small.t = 5;
  small.seed = 9;
  SconeParams large = small;
  large.t = 50;
  const auto a = fit(data, small);
  const auto b = fit(data, large);
  for (std::size_t j = 0; j < 5; ++j) EXPECT_EQ(a.members[j], b.members[j]);
  EXPECT_EQ(a.members[3].indices, draw_member_indices(data.size(), 8, 9, 3));
}

TEST(Fit, PsiEqualToNCoversEveryIndex) {
  const auto data = single_view(1, {0, 1, 2, 3, 4, 5, 6, 7});
  SconeParams params;
  params.psi = 8;
  params.k = 1;
  params.t = 1;
  auto indices = fit(data, params).members[0].indices;
  std::sort(indices.begin(), indices.end());
  EXPECT_EQ(indices, (std::vector<std::size_t>{0, 1, 2, 3, 4, 5, 6, 7}));
}

TEST(Fit, PropagatesValidationErrors) {
  const auto data = single_view(1, {0, 1, 2, 3});
  SconeParams params;
  params.psi = 1;
  try {
    fit(data, params);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kPsiTooSmall);
  }
}

TEST(ScoreDataset, SingleHitGivesOneOverPsi) {
  const auto data = single_view(2, {0, 0, 10, 0, 0, 10, 0.5, 0, 100, 100});
  const auto model = model_over(data, {{0, 1, 2}}, 1);
  const auto scores = score_dataset(model, data);
  EXPECT_DOUBLE_EQ(scores.consistency[3], 1.0 / 3.0);
  EXPECT_EQ(scores.consistency[4], 0.0);
}

TEST(ScoreDataset, RejectsOtherDataset) {
  const auto data = single_view(1, {0, 1, 2, 3});
  const auto model = model_over(data, {{0, 1}}, 1);
  const auto other = single_view(1, {0, 1, 2, 4});
  try {
    score_dataset(model, other);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kFingerprintMismatch);
  }
}

TEST(AnomalyScores, Inversion) {
  EXPECT_EQ(anomaly_scores(ScoreVector{{1.0, 0.0, 0.25}}),
            (std::vector<double>{0.0, 1.0, 0.75}));
}

TEST(ScoreDataset, ThreadCountInvariant) {
  const auto data = make_anomaly_benchmark(DensityMode::kVaried, 3).dataset;
  SconeParams params;
  params.seed = 5;
  params.t = 50;
  const auto one = fit(data, params, ExecutionOptions{1});
  const auto many = fit(data, params, ExecutionOptions{7});
  ASSERT_EQ(one, many);
  EXPECT_EQ(score_dataset(one, data, ExecutionOptions{1}),
            score_dataset(one, data, ExecutionOptions{5}));
}

// Equivalence against the naive scorer, bounds and integrality of C̄·ψ·t,
// and positive consistency of sampled points.
TEST(ScoreDataset, MatchesNaiveScorerOnRandomFixtures) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto fixture = testing::random_fixture(seed);
    const auto& data = fixture.dataset;
    const auto& params = fixture.params;
    const auto model = fit(data, params);
    const auto fast = score_dataset(model, data);
    ASSERT_EQ(fast, naive_score(data, model.members, params)) << "seed " << seed;

    const double denom = static_cast<double>(params.psi * params.t);
    for (double c : fast.consistency) {
      EXPECT_GE(c, 0.0);
      EXPECT_LE(c, 1.0);
      // c is exactly some integer count divided by psi * t.
      const double count = std::round(c * denom);
      EXPECT_NEAR(c * denom, count, 1e-9);
      EXPECT_EQ(c, count / denom);
    }
    for (const auto& member : model.members) {
      for (auto idx : member.indices) {
        if (has_coincident_partner(data, member, idx)) continue;
        EXPECT_GE(fast.consistency[idx], 1.0 / denom) << "seed " << seed;
      }
    }
  }
}

TEST(ScoreDataset, CoincidentSamplesResolveByPosition) {
  // Instances 0 and 1 coincide; with k=1 only the earlier position is a
  // member of its own neighborhood.
  const auto data = single_view(1, {2, 2, 9});
  const auto model = model_over(data, {{1, 0, 2}}, 1);
  const auto scores = score_dataset(model, data);
  EXPECT_DOUBLE_EQ(scores.consistency[0], 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(scores.consistency[1], 1.0 / 3.0);
  EXPECT_TRUE(multiview_membership(model, 0, data, 0, 0));
  EXPECT_FALSE(multiview_membership(model, 0, data, 0, 1));
}

TEST(CoMembership, SelfSimilarityIsPerMemberCount) {
  const auto data = make_anomaly_benchmark(DensityMode::kVaried, 2, 200).dataset;
  SconeParams params;
  params.t = 20;
  params.seed = 3;
  const auto model = fit(data, params);
  const auto scores = score_dataset(model, data);
  for (std::size_t a = 0; a < data.size(); a += 13) {
    const double self = co_membership_similarity(model, data, a, a);
    EXPECT_NEAR(self, static_cast<double>(params.psi) * scores.consistency[a], 1e-12);
  }
}

TEST(CoMembership, DisjointClustersShareNothing) {
  // Two tight clusters far apart; two samples in each.
  const auto data = single_view(2, {0, 0, 1, 0, 0, 1, 100, 100, 101, 100, 100, 101,
                                    0.2, 0.1, 100.2, 100.1});
  const auto model = model_over(data, {{0, 1, 3, 4}}, 1);
  const std::size_t a = 6;
  const std::size_t b = 7;
  // Brute-force both indicator rows and confirm no shared column of ones.
  const auto embed_a = embed_memberships(model, 0, data, a);
  const auto embed_b = embed_memberships(model, 0, data, b);
  bool shared = false;
  for (std::size_t i = 0; i < 4; ++i) {
    shared = shared || (embed_a.column_and(i) && embed_b.column_and(i));
  }
  ASSERT_FALSE(shared);
  ASSERT_FALSE(embed_a.is_zero());
  ASSERT_FALSE(embed_b.is_zero());
  EXPECT_EQ(co_membership_similarity(model, data, a, b), 0.0);
}

TEST(CoMembership, DuplicatesReachSelfSimilarity) {
  const auto data = single_view(2, {0, 0, 1, 0, 0, 1, 0.3, 0.2, 0.3, 0.2, 5, 5});
  SconeParams params;
  params.psi = 3;
  params.k = 2;
  params.t = 30;
  const auto model = fit(data, params);
  const double self = co_membership_similarity(model, data, 3, 3);
  EXPECT_EQ(co_membership_similarity(model, data, 3, 4), self);
  for (std::size_t y = 0; y < data.size(); ++y) {
    EXPECT_LE(co_membership_similarity(model, data, 3, y), self);
  }
}

TEST(MembershipTable, AgreesWithPairwiseSimilarity) {
  const auto fixture = testing::random_fixture(17, 80);
  const auto model = fit(fixture.dataset, fixture.params);
  const MembershipTable table(model, fixture.dataset);
  for (std::size_t a = 0; a < fixture.dataset.size(); a += 5) {
    const auto row = table.similarity_row(a);
    for (std::size_t b = 0; b < fixture.dataset.size(); ++b) {
      EXPECT_EQ(row[b], co_membership_similarity(model, fixture.dataset, a, b));
    }
  }
}

}  // namespace
}  // namespace scone
