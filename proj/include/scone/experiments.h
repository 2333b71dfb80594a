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

// Experiment protocols shared by the command-line tool and the test suites.

#ifndef SCONE_EXPERIMENTS_H_
#define SCONE_EXPERIMENTS_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "scone/oracle.h"
#include "scone/parallel.h"
#include "scone/synthetic.h"
#include "scone/types.h"

namespace scone {

// `count` normal instances drawn without replacement, in draw order.
std::vector<std::size_t> select_normals(const LabelVector& labels, std::size_t count,
                                        std::uint64_t seed);

struct DetectionResult {
  double auc = 0.0;
  std::map<Label, double> per_type;
};

DetectionResult evaluate_detection(const MultiViewDataset& dataset,
                                   const LabelVector& labels, const SconeParams& params,
                                   const ExecutionOptions& options = {});

inline constexpr Variant kAllVariants[] = {Variant::kSpherical, Variant::kSpherical1nn,
                                           Variant::kVoronoi};

struct AblationRow {
  Variant variant = Variant::kSpherical;
  std::vector<double> auc;  // one per dataset
  double mean = 0.0;
  double stddev = 0.0;
};

// Each generated dataset is fitted with params.seed set to its data seed.
std::vector<AblationRow> ablate_synthetic(DensityMode mode,
                                          std::span<const std::uint64_t> seeds,
                                          const SconeParams& params,
                                          const ExecutionOptions& options = {});

std::vector<AblationRow> ablate_dataset(const MultiViewDataset& dataset,
                                        const LabelVector& labels,
                                        const SconeParams& params,
                                        const ExecutionOptions& options = {});

struct NeighborhoodCountCheck {
  std::vector<double> view_means;  // averaged over draws
  double relative_difference = 0.0;  // (max - min) / max over views
  std::size_t draws = 0;
};

NeighborhoodCountCheck compare_view_neighborhoods(DensityMode mode, std::uint64_t data_seed,
                                                  std::size_t draws, std::size_t psi,
                                                  std::uint64_t sample_seed);

struct DensityProbe {
  double density_ratio = 10.0;  // dense over sparse generator, inside the region
  std::size_t psi = 8;
  std::size_t k = 1;
  std::size_t trials = 5000;
  std::uint64_t seed = 7;
};

// Sparse generator: uniform on [0,10]^2. Dense generator: the same support
// with extra mass on [4,6]^2. Probe (5,5), shared sample (5.3,5).
MembershipProbability run_density_probe(const DensityProbe& probe);

// Mixture weight on [4,6]^2 that makes the dense generator `ratio` times
// denser than the uniform one inside that square.
double region_weight_for_ratio(double ratio);

}  // namespace scone

#endif  // SCONE_EXPERIMENTS_H_
