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

#include "scone/evaluation.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "scone/ensemble.h"

namespace scone {

double auc(std::span<const double> anomaly_scores, const std::vector<bool>& is_anomaly) {
  const std::size_t n = anomaly_scores.size();
  if (is_anomaly.size() != n) {
    throw Error(ErrorCode::kInvalidArgument, "scores and labels differ in length");
  }
  const auto positives =
      static_cast<std::uint64_t>(std::count(is_anomaly.begin(), is_anomaly.end(), true));
  const std::uint64_t negatives = n - positives;
  if (positives == 0 || negatives == 0) {
    throw Error(ErrorCode::kSingleClass, "AUC needs both anomalies and normals");
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return anomaly_scores[a] < anomaly_scores[b];
  });
  // Twice the midrank keeps the rank sum integral.
  std::uint64_t doubled_rank_sum = 0;
  std::size_t start = 0;
  while (start < n) {
    std::size_t end = start + 1;
    while (end < n && anomaly_scores[order[end]] == anomaly_scores[order[start]]) ++end;
    const std::uint64_t doubled_midrank = start + 1 + end;
    for (std::size_t r = start; r < end; ++r) {
      if (is_anomaly[order[r]]) doubled_rank_sum += doubled_midrank;
    }
    start = end;
  }
  const std::uint64_t doubled_u = doubled_rank_sum - positives * (positives + 1);
  return static_cast<double>(doubled_u) /
         (2.0 * static_cast<double>(positives) * static_cast<double>(negatives));
}

std::map<Label, double> per_type_auc(std::span<const double> anomaly_scores,
                                     const LabelVector& labels) {
  if (labels.size() != anomaly_scores.size()) {
    throw Error(ErrorCode::kInvalidArgument, "scores and labels differ in length");
  }
  std::map<Label, double> out;
  for (Label type : {Label::kAttribute, Label::kClass, Label::kClassAttribute}) {
    std::vector<double> subset;
    std::vector<bool> positive;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == Label::kNormal || labels[i] == type) {
        subset.push_back(anomaly_scores[i]);
        positive.push_back(labels[i] == type);
      }
    }
    const auto count = std::count(positive.begin(), positive.end(), true);
    if (count == 0 || count == static_cast<std::ptrdiff_t>(positive.size())) continue;
    out[type] = auc(subset, positive);
  }
  return out;
}

double overall_auc(std::span<const double> anomaly_scores, const LabelVector& labels) {
  std::vector<bool> positive(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) positive[i] = is_anomaly(labels[i]);
  return auc(anomaly_scores, positive);
}

std::vector<RocPoint> roc_points(std::span<const double> anomaly_scores,
                                 const std::vector<bool>& is_anomaly) {
  const std::size_t n = anomaly_scores.size();
  const auto positives = std::count(is_anomaly.begin(), is_anomaly.end(), true);
  const auto negatives = static_cast<std::ptrdiff_t>(n) - positives;
  if (positives == 0 || negatives == 0) {
    throw Error(ErrorCode::kSingleClass, "ROC needs both anomalies and normals");
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return anomaly_scores[a] > anomaly_scores[b];
  });
  std::vector<RocPoint> points;
  points.push_back({std::numeric_limits<double>::infinity(), 0.0, 0.0});
  std::ptrdiff_t tp = 0;
  std::ptrdiff_t fp = 0;
  std::size_t r = 0;
  while (r < n) {
    const double threshold = anomaly_scores[order[r]];
    while (r < n && anomaly_scores[order[r]] == threshold) {
      if (is_anomaly[order[r]]) ++tp; else ++fp;
      ++r;
    }
    points.push_back({threshold, static_cast<double>(fp) / static_cast<double>(negatives),
                      static_cast<double>(tp) / static_cast<double>(positives)});
  }
  return points;
}

std::optional<double> loglog_slope(std::span<const BenchmarkRow> rows) {
  if (rows.size() < 2) return std::nullopt;
  double mx = 0.0;
  double my = 0.0;
  for (const auto& row : rows) {
    mx += std::log(static_cast<double>(row.instances));
    my += std::log(row.median_seconds);
  }
  mx /= static_cast<double>(rows.size());
  my /= static_cast<double>(rows.size());
  double sxy = 0.0;
  double sxx = 0.0;
  for (const auto& row : rows) {
    const double dx = std::log(static_cast<double>(row.instances)) - mx;
    sxy += dx * (std::log(row.median_seconds) - my);
    sxx += dx * dx;
  }
  if (sxx == 0.0) return std::nullopt;
  return sxy / sxx;
}

BenchmarkTable runtime_benchmark(std::span<const std::size_t> sizes,
                                 const SconeParams& params,
                                 const BenchmarkConfig& config,
                                 std::size_t repetitions,
                                 const ExecutionOptions& options) {
  if (repetitions < 3) {
    throw Error(ErrorCode::kInvalidArgument, "at least 3 repetitions are required");
  }
  if (!std::is_sorted(sizes.begin(), sizes.end())) {
    throw Error(ErrorCode::kInvalidArgument, "sizes must be ascending");
  }
  BenchmarkTable table;
  for (std::size_t n : sizes) {
    const SyntheticData data = make_multiview_clusters(
        default_cluster_config(config.mode, n, config.views), config.data_seed);
    BenchmarkRow row;
    row.instances = n;
    for (std::size_t rep = 0; rep < repetitions; ++rep) {
      const auto start = std::chrono::steady_clock::now();
      const EnsembleModel model = fit(data.dataset, params, options);
      const ScoreVector scores = score_dataset(model, data.dataset, options);
      const auto stop = std::chrono::steady_clock::now();
      if (scores.size() != n) throw Error(ErrorCode::kInternal, "score vector size");
      row.samples.push_back(std::chrono::duration<double>(stop - start).count());
    }
    std::vector<double> sorted = row.samples;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t mid = sorted.size() / 2;
    row.median_seconds = sorted.size() % 2 == 1 ? sorted[mid]
                                                : 0.5 * (sorted[mid - 1] + sorted[mid]);
    table.rows.push_back(std::move(row));
  }
  table.slope = loglog_slope(table.rows);
  return table;
}

}  // namespace scone
