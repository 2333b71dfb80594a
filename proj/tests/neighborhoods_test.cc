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
#include <numeric>
#include <random>

#include "gtest/gtest.h"
#include "scone/ensemble.h"
#include "test_util.h"

namespace scone {
namespace {

using testing::matrix;

const FeatureMatrix kTriangle = matrix(3, 2, {0, 0, 3, 0, 0, 4});

// Brute force: full distance matrix, row-wise minimum off the diagonal.
std::vector<double> brute_force_radii(const FeatureMatrix& points) {
  const std::size_t n = points.rows();
  std::vector<std::vector<double>> dist(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t c = 0; c < points.cols(); ++c) {
        s += (points(i, c) - points(j, c)) * (points(i, c) - points(j, c));
      }
      dist[i][j] = std::sqrt(s);
    }
  }
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) best = std::min(best, dist[i][j]);
    }
    out[i] = best;
  }
  return out;
}

TEST(ComputeRadii, NearestOtherSample) {
  EXPECT_EQ(compute_radii(kTriangle), (std::vector<double>{3, 3, 4}));
}

TEST(ComputeRadii, CoincidentPointsGiveZero) {
  EXPECT_EQ(compute_radii(matrix(2, 2, {1, 1, 1, 1})), (std::vector<double>{0, 0}));
}

TEST(ComputeRadii, GridMatchesBruteForce) {
  FeatureMatrix grid(16, 2);
  for (std::size_t i = 0; i < 16; ++i) {
    grid(i, 0) = 1.5 * static_cast<double>(i % 4);
    grid(i, 1) = 1.5 * static_cast<double>(i / 4);
  }
  const auto expected = brute_force_radii(grid);
  // Oracle output, frozen: every grid point's nearest neighbor is one
  // spacing away.
  EXPECT_EQ(expected, std::vector<double>(16, 1.5));
  EXPECT_EQ(compute_radii(grid), expected);
}

TEST(ComputeRadii, RejectsSingleSample) {
  try {
    compute_radii(matrix(1, 2, {0, 0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kFewerThanTwoSamples);
  }
}

TEST(ComputeRadii, PermutationEquivariant) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t psi = 2 + trial % 15;
    FeatureMatrix points(psi, 3);
    std::normal_distribution<double> g;
    for (std::size_t i = 0; i < psi; ++i)
      for (std::size_t c = 0; c < 3; ++c) points(i, c) = g(rng);
    std::vector<std::size_t> perm(psi);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    FeatureMatrix permuted(psi, 3);
    for (std::size_t i = 0; i < psi; ++i)
      for (std::size_t c = 0; c < 3; ++c) permuted(i, c) = points(perm[i], c);
    const auto radii = compute_radii(points);
    const auto permuted_radii = compute_radii(permuted);
    for (std::size_t i = 0; i < psi; ++i) EXPECT_EQ(permuted_radii[i], radii[perm[i]]);
  }
}

TEST(KnnAmongSamples, Examples) {
  const std::vector<double> x{1, 0};
  auto knn = knn_among_samples(x, kTriangle, 2);
  std::sort(knn.begin(), knn.end());
  EXPECT_EQ(knn, (std::vector<std::size_t>{0, 1}));

  const std::vector<double> on_sample{0, 4};
  EXPECT_EQ(knn_among_samples(on_sample, kTriangle, 1), (std::vector<std::size_t>{2}));

  const FeatureMatrix pair = matrix(2, 2, {0, 0, 2, 0});
  EXPECT_EQ(knn_among_samples(x, pair, 1), (std::vector<std::size_t>{0}));
}

TEST(KnnAmongSamples, RejectsKAbovePsi) {
  const std::vector<double> x{1, 0};
  try {
    knn_among_samples(x, kTriangle, 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kKExceedsPsi);
  }
}

TEST(SphericalMembership, Examples) {
  const auto radii = compute_radii(kTriangle);
  const std::vector<double> x{1, 0};
  EXPECT_TRUE(spherical_membership(x, 0, kTriangle, radii, 1));
  // Inside sample 1's sphere, but sample 1 is not the nearest sample.
  EXPECT_FALSE(spherical_membership(x, 1, kTriangle, radii, 1));
  const std::vector<double> far{100, 100};
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_FALSE(spherical_membership(far, i, kTriangle, radii, 3));
  }
}

TEST(SphericalMembership, BoundaryIsInclusive) {
  const auto radii = compute_radii(kTriangle);
  const std::vector<double> on_boundary{-3, 0};  // exactly r_0 = 3 from sample 0
  EXPECT_TRUE(spherical_membership(on_boundary, 0, kTriangle, radii, 1));
}

TEST(VoronoiMembership, Examples) {
  const FeatureMatrix pair = matrix(2, 2, {0, 0, 3, 0});
  const std::vector<double> x{1, 0};
  EXPECT_TRUE(voronoi_membership(x, 0, pair));
  EXPECT_FALSE(voronoi_membership(x, 1, pair));
  const std::vector<double> far{100, 100};
  EXPECT_TRUE(voronoi_membership(far, 1, pair));
  const std::vector<double> midpoint{1.5, 0};
  EXPECT_TRUE(voronoi_membership(midpoint, 0, pair));
  EXPECT_FALSE(voronoi_membership(midpoint, 1, pair));
}

// Samples are instances 0..2; identical layout in both views.
//   3: next to sample 0 in both views
//   4: far from everything
//   5: next to sample 0 in view 1, next to sample 1 in view 2
//   6: next to sample 0 in view 1, outside all spheres in view 2
MultiViewDataset two_view_fixture() {
  const std::vector<double> v1{0, 0, 10, 0, 0, 10, 0.5, 0, 100, 100, 0.5, 0, 0.5, 0};
  const std::vector<double> v2{0, 0, 10, 0, 0, 10, 0.5, 0, 100, 100, 10.5, 0, -30, 0};
  return MultiViewDataset({matrix(7, 2, v1), matrix(7, 2, v2)});
}

EnsembleModel model_over(const MultiViewDataset& data, std::vector<std::size_t> indices,
                         std::size_t k, Variant variant = Variant::kSpherical) {
  EnsembleModel model;
  model.params.psi = indices.size();
  model.params.k = k;
  model.params.t = 1;
  model.params.variant = variant;
  model.members.push_back(make_sample_set(data, std::move(indices)));
  model.dataset_fingerprint = fingerprint(data);
  return model;
}

TEST(MultiviewMembership, ProductOverViews) {
  const auto data = two_view_fixture();
  const auto model = model_over(data, {0, 1, 2}, 1);
  EXPECT_TRUE(multiview_membership(model, 0, data, 3, 0));   // 1 and 1
  EXPECT_FALSE(multiview_membership(model, 0, data, 6, 0));  // 1 and 0
  for (std::size_t s = 0; s < 3; ++s) {
    EXPECT_TRUE(multiview_membership(model, 0, data, s, s));  // sampled point itself
  }
}

TEST(MultiviewMembership, RejectsOtherDataset) {
  const auto data = two_view_fixture();
  const auto model = model_over(data, {0, 1, 2}, 1);
  const MultiViewDataset other({matrix(7, 2, std::vector<double>(14, 1.0)),
                                matrix(7, 2, std::vector<double>(14, 2.0))});
  try {
    multiview_membership(model, 0, other, 0, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kFingerprintMismatch);
  }
  EXPECT_THROW(embed_memberships(model, 0, other, 0), Error);
}

TEST(EmbedMemberships, AnomalyShapes) {
  const auto data = two_view_fixture();
  const auto model = model_over(data, {0, 1, 2}, 1);

  EXPECT_TRUE(embed_memberships(model, 0, data, 4).is_zero());

  const auto normal = embed_memberships(model, 0, data, 3);
  EXPECT_EQ(normal.row_count(0), 1u);
  EXPECT_EQ(normal.row_count(1), 1u);
  EXPECT_TRUE(normal.bit(0, 0));
  EXPECT_TRUE(normal.bit(1, 0));
  EXPECT_TRUE(normal.column_and(0));

  const auto class_like = embed_memberships(model, 0, data, 5);
  EXPECT_TRUE(class_like.bit(0, 0));
  EXPECT_TRUE(class_like.bit(1, 1));
  for (std::size_t i = 0; i < 3; ++i) EXPECT_FALSE(class_like.column_and(i));
}

// Row sparsity, agreement of the product with the embedding, and agreement
// of the batched membership kernel with the per-sample definition.
TEST(Memberships, PropertiesOnRandomFixtures) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    auto fixture = testing::random_fixture(seed, 60);
    const auto& data = fixture.dataset;
    const auto model = fit(data, fixture.params);
    const std::size_t k = fixture.params.effective_k();
    for (std::size_t x = 0; x < data.size(); x += 7) {
      const auto embedding = embed_memberships(model, 0, data, x);
      for (std::size_t v = 0; v < data.view_count(); ++v) {
        if (fixture.params.variant == Variant::kVoronoi) {
          EXPECT_EQ(embedding.row_count(v), 1u);
        } else {
          EXPECT_LE(embedding.row_count(v), k);
        }
      }
      const MemberGeometry geometry = gather_member(data, model.members[0]);
      for (std::size_t i = 0; i < fixture.params.psi; ++i) {
        bool all = true;
        for (std::size_t v = 0; v < data.view_count(); ++v) {
          const bool bit = fixture.params.variant == Variant::kVoronoi
                               ? voronoi_membership(data.point(x, v), i, geometry.points[v])
                               : spherical_membership(data.point(x, v), i,
                                                      geometry.points[v],
                                                      geometry.radii(v), k);
          EXPECT_EQ(embedding.bit(v, i), bit) << "seed " << seed;
          all = all && bit;
        }
        EXPECT_EQ(multiview_membership(model, 0, data, x, i), all);
        EXPECT_EQ(embedding.column_and(i), all);
      }
    }
  }
}

// Many candidates pass the radius test: exercises the nth_element path.
TEST(Memberships, ManyRadiusCandidates) {
  FeatureMatrix samples(12, 1);
  for (std::size_t i = 0; i < 12; ++i) samples(i, 0) = static_cast<double>(i % 2);
  const auto radii = std::vector<double>(12, 5.0);
  const std::vector<double> x{0.25};
  MembershipScratch scratch;
  std::vector<std::uint32_t> hits;
  view_memberships(x, samples, radii, 3, Variant::kSpherical, scratch, hits);
  EXPECT_EQ(hits, (std::vector<std::uint32_t>{0, 2, 4}));
  for (std::size_t i = 0; i < 12; ++i) {
    EXPECT_EQ(spherical_membership(x, i, samples, radii, 3), i == 0 || i == 2 || i == 4);
  }
}

TEST(SphericalMembership, TranslationInvariant) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t psi = 2 + trial % 10;
    // Dyadic coordinates keep the translated arithmetic exact.
    auto dyadic = [&] { return std::round(g(rng) * 8.0) / 8.0; };
    FeatureMatrix samples(psi, 2);
    FeatureMatrix shifted(psi, 2);
    const double dx = std::round(g(rng) * 4.0);
    const double dy = std::round(g(rng) * 4.0);
    for (std::size_t i = 0; i < psi; ++i) {
      samples(i, 0) = dyadic();
      samples(i, 1) = dyadic();
      shifted(i, 0) = samples(i, 0) + dx;
      shifted(i, 1) = samples(i, 1) + dy;
    }
    const std::vector<double> x{dyadic(), dyadic()};
    const std::vector<double> xs{x[0] + dx, x[1] + dy};
    const auto radii = compute_radii(samples);
    const auto shifted_radii = compute_radii(shifted);
    const std::size_t k = 1 + static_cast<std::size_t>(trial) % psi;
    for (std::size_t i = 0; i < psi; ++i) {
      EXPECT_EQ(spherical_membership(x, i, samples, radii, k),
                spherical_membership(xs, i, shifted, shifted_radii, k));
    }
  }
}

}  // namespace
}  // namespace scone
