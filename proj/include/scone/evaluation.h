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

#ifndef SCONE_EVALUATION_H_
#define SCONE_EVALUATION_H_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "scone/parallel.h"
#include "scone/synthetic.h"
#include "scone/types.h"

namespace scone {

// Probability that a random anomaly outscores a random normal, ties
// counted as one half. Computed from midranks. Throws kSingleClass.
double auc(std::span<const double> anomaly_scores, const std::vector<bool>& is_anomaly);

// AUC of each anomaly type against NORMAL, other types excluded. Types
// without instances (or no normals at all) are absent.
std::map<Label, double> per_type_auc(std::span<const double> anomaly_scores,
                                     const LabelVector& labels);

// AUC of all anomalies against NORMAL. Throws kSingleClass.
double overall_auc(std::span<const double> anomaly_scores, const LabelVector& labels);

struct RocPoint {
  double threshold;
  double false_positive_rate;
  double true_positive_rate;
};

// One point per distinct score, descending threshold, starting at (0, 0).
std::vector<RocPoint> roc_points(std::span<const double> anomaly_scores,
                                 const std::vector<bool>& is_anomaly);

struct BenchmarkConfig {
  std::size_t views = 2;
  DensityMode mode = DensityMode::kVaried;
  std::uint64_t data_seed = 0;
};

struct BenchmarkRow {
  std::size_t instances = 0;
  double median_seconds = 0.0;
  std::vector<double> samples;  // seconds per repetition
};

struct BenchmarkTable {
  std::vector<BenchmarkRow> rows;
  std::optional<double> slope;  // log-log least squares; absent for < 2 rows
};

// Least-squares slope of log(seconds) against log(N).
std::optional<double> loglog_slope(std::span<const BenchmarkRow> rows);

// Times fit + score_dataset for every size on generated cluster data.
// Sizes must be ascending and repetitions >= 3 (kInvalidArgument).
BenchmarkTable runtime_benchmark(std::span<const std::size_t> sizes,
                                 const SconeParams& params,
                                 const BenchmarkConfig& config,
                                 std::size_t repetitions,
                                 const ExecutionOptions& options = {});

}  // namespace scone

#endif  // SCONE_EVALUATION_H_
