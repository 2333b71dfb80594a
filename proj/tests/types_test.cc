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

#include "scone/types.h"

#include <cmath>
#include <limits>
#include <random>

#include "gtest/gtest.h"
#include "test_util.h"

namespace scone {
namespace {

MultiViewDataset dataset_of_size(std::size_t n) {
  return MultiViewDataset({FeatureMatrix(n, 1)});
}

SconeParams params(std::size_t psi, std::size_t k, std::size_t t) {
  SconeParams p;
  p.psi = psi;
  p.k = k;
  p.t = t;
  return p;
}

TEST(ValidateParams, AcceptsBoundsThatHold) {
  EXPECT_EQ(validate_params(params(8, 3, 200), dataset_of_size(1000)), std::nullopt);
}

TEST(ValidateParams, RejectsPsiBelowTwo) {
  EXPECT_EQ(validate_params(params(1, 1, 1), dataset_of_size(100)),
            ErrorCode::kPsiTooSmall);
}

TEST(ValidateParams, RejectsKAbovePsi) {
  EXPECT_EQ(validate_params(params(4, 5, 1), dataset_of_size(100)),
            ErrorCode::kKExceedsPsi);
}

TEST(ValidateParams, RejectsPsiAboveN) {
  EXPECT_EQ(validate_params(params(16, 3, 1), dataset_of_size(10)),
            ErrorCode::kPsiExceedsN);
}

TEST(ValidateParams, RejectsEmptyDatasetAndZeroCounts) {
  EXPECT_EQ(validate_params(params(8, 3, 1), std::size_t{0}), ErrorCode::kEmptyDataset);
  EXPECT_EQ(validate_params(params(8, 0, 1), dataset_of_size(10)), ErrorCode::kKTooSmall);
  EXPECT_EQ(validate_params(params(8, 3, 0), dataset_of_size(10)),
            ErrorCode::kEnsembleSizeTooSmall);
}

// Every combination yields either ok or exactly the first violated bound.
TEST(ValidateParams, IsTotal) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    std::uniform_int_distribution<std::size_t> pick(0, 12);
    const std::size_t n = pick(rng);
    const SconeParams p = params(pick(rng), pick(rng), pick(rng));
    const auto result = validate_params(p, n);
    std::optional<ErrorCode> expected;
    if (n == 0) expected = ErrorCode::kEmptyDataset;
    else if (p.psi < 2) expected = ErrorCode::kPsiTooSmall;
    else if (p.psi > n) expected = ErrorCode::kPsiExceedsN;
    else if (p.k < 1) expected = ErrorCode::kKTooSmall;
    else if (p.k > p.psi) expected = ErrorCode::kKExceedsPsi;
    else if (p.t < 1) expected = ErrorCode::kEnsembleSizeTooSmall;
    EXPECT_EQ(result, expected);
  }
}

TEST(ValidateParams, OneNnVariantForcesKToOne) {
  SconeParams p = params(8, 5, 10);
  p.variant = Variant::kSpherical1nn;
  EXPECT_EQ(p.effective_k(), 1u);
  p.variant = Variant::kSpherical;
  EXPECT_EQ(p.effective_k(), 5u);
}

TEST(MultiViewDataset, EnforcesInvariants) {
  try {
    MultiViewDataset({FeatureMatrix(3, 1), FeatureMatrix(4, 1)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kRowCountMismatch);
  }
  try {
    MultiViewDataset(std::vector<FeatureMatrix>{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyDataset);
  }
  try {
    MultiViewDataset({FeatureMatrix(2, 1, {0.0, std::numeric_limits<double>::quiet_NaN()})});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonFiniteValue);
  }
}

TEST(Fingerprint, DetectsAnyValueChange) {
  const MultiViewDataset a({FeatureMatrix(2, 2, {1, 2, 3, 4}), FeatureMatrix(2, 1, {5, 6})});
  const MultiViewDataset b({FeatureMatrix(2, 2, {1, 2, 3, 4}), FeatureMatrix(2, 1, {5, 6.5})});
  EXPECT_EQ(fingerprint(a), fingerprint(a));
  EXPECT_NE(fingerprint(a).checksum, fingerprint(b).checksum);
  EXPECT_EQ(fingerprint(a).dims, (std::vector<std::uint64_t>{2, 1}));
}

TEST(MinmaxRescale, MapsEachFeatureToUnitInterval) {
  const MultiViewDataset data({FeatureMatrix(3, 2, {0, 5, 5, 5, 10, 5})});
  const MultiViewDataset scaled = minmax_rescale(data);
  EXPECT_EQ(scaled.view(0).values()[0], 0.0);
  EXPECT_EQ(scaled.view(0)(1, 0), 0.5);
  EXPECT_EQ(scaled.view(0)(2, 0), 1.0);
  EXPECT_EQ(scaled.view(0)(1, 1), 0.0);  // constant column
}

TEST(Names, RoundTrip) {
  for (Variant v : {Variant::kSpherical, Variant::kVoronoi, Variant::kSpherical1nn}) {
    EXPECT_EQ(parse_variant(variant_name(v)), v);
  }
  EXPECT_EQ(label_from_code(4), std::nullopt);
  EXPECT_EQ(error_code_name(ErrorCode::kPsiTooSmall), "PSI_TOO_SMALL");
}

}  // namespace
}  // namespace scone
