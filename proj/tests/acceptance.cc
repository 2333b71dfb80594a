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

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero when any criterion fails. Thresholds are fixed below.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "scone/dataset_io.h"
#include "scone/ensemble.h"
#include "scone/evaluation.h"
#include "scone/experiments.h"
#include "scone/neighborhoods.h"
#include "scone/oracle.h"
#include "scone/synthetic.h"
#include "test_util.h"

namespace fs = std::filesystem;
using namespace scone;

namespace {

constexpr double kMinSyntheticAuc = 0.99;
constexpr std::size_t kSyntheticSeeds = 20;
constexpr std::size_t kRandomFixtures = 200;
constexpr std::size_t kBenchmarkRepetitions = 5;
constexpr double kSlopeLow = 0.85;
constexpr double kSlopeHigh = 1.15;
constexpr double kSignificance = 0.01;
constexpr double kMaxViewCountDifference = 0.15;
constexpr std::size_t kNeighborhoodDraws = 50;
constexpr double kMinProportion = 80.0;
constexpr std::size_t kPropertyCases = 100;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* pattern, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, value);
  return buf;
}

SconeParams default_params(std::uint64_t seed, Variant variant = Variant::kSpherical) {
  SconeParams p;
  p.psi = 8;
  p.k = 3;
  p.t = 200;
  p.seed = seed;
  p.variant = variant;
  return p;
}

// Shared by the synthetic AUC and ablation checks.
const std::vector<AblationRow>& varied_ablation() {
  static const std::vector<AblationRow> rows = [] {
    std::vector<std::uint64_t> seeds(kSyntheticSeeds);
    std::iota(seeds.begin(), seeds.end(), 0);
    return ablate_synthetic(DensityMode::kVaried, seeds, default_params(0));
  }();
  return rows;
}

Outcome synthetic_auc() {
  const double varied = varied_ablation()[0].mean;
  double uniform = 0.0;
  for (std::uint64_t seed = 0; seed < kSyntheticSeeds; ++seed) {
    const auto data = make_anomaly_benchmark(DensityMode::kUniform, seed);
    uniform += evaluate_detection(data.dataset, data.labels, default_params(seed)).auc;
  }
  uniform /= static_cast<double>(kSyntheticSeeds);
  return {varied >= kMinSyntheticAuc && uniform >= kMinSyntheticAuc,
          "mean AUC over 20 seeds: varied " + fmt("%.4f", varied) + ", uniform " +
              fmt("%.4f", uniform) + " (min 0.99)"};
}

Outcome oracle_equivalence() {
  std::size_t identical = 0;
  for (std::uint64_t seed = 0; seed < kRandomFixtures; ++seed) {
    const auto fixture = testing::random_fixture(1000 + seed);
    const auto model = fit(fixture.dataset, fixture.params);
    if (score_dataset(model, fixture.dataset) ==
        naive_score(fixture.dataset, model.members, fixture.params)) {
      ++identical;
    }
  }
  return {identical == kRandomFixtures, std::to_string(identical) + "/" +
                                            std::to_string(kRandomFixtures) +
                                            " fixtures bit-identical"};
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

int run(const std::string& command) { return std::system(command.c_str()); }

Outcome thread_determinism() {
  const fs::path dir = testing::scratch_dir("acceptance_threads");
  const std::string cli = SCONE_CLI_PATH;
  const std::string quiet = " > " + (dir / "log.txt").string() + " 2>&1";
  if (run(cli + " generate --mode varied --seed 0 --out " + dir.string() + quiet) != 0) {
    return {false, "generate failed"};
  }
  const std::string manifest = (dir / "varied-0" / "manifest.txt").string();
  for (const char* threads : {"1", "8"}) {
    const std::string scores = (dir / (std::string("scores_") + threads + ".csv")).string();
    if (run(cli + " fit-score --manifest " + manifest +
            " --psi 8 --k 3 --t 200 --seed 0 --threads " + threads + " --scores " + scores +
            quiet) != 0) {
      return {false, std::string("fit-score failed with --threads ") + threads};
    }
  }
  const std::string one = read_file(dir / "scores_1.csv");
  const std::string eight = read_file(dir / "scores_8.csv");
  return {!one.empty() && one == eight,
          "score files for --threads 1 and 8: " + std::to_string(one.size()) + " and " +
              std::to_string(eight.size()) + " bytes, " + (one == eight ? "identical" : "differ")};
}

Outcome linear_scaling() {
  const std::vector<std::size_t> sizes{10000, 30000, 100000};
  const auto table = runtime_benchmark(sizes, default_params(0), BenchmarkConfig{},
                                       kBenchmarkRepetitions, ExecutionOptions{1});
  std::string detail = "median seconds";
  for (const auto& row : table.rows) {
    detail += " " + std::to_string(row.instances) + ":" + fmt("%.3f", row.median_seconds);
  }
  const double slope = table.slope.value_or(0.0);
  detail += ", log-log slope " + fmt("%.3f", slope) + " (range [0.85, 1.15])";
  return {slope >= kSlopeLow && slope <= kSlopeHigh, detail};
}

Outcome sparse_density_membership() {
  const MembershipProbability r = run_density_probe(DensityProbe{});
  std::ostringstream p;
  p << r.p_value;
  return {r.p_sparse > r.p_dense && r.p_value < kSignificance,
          "p_sparse " + fmt("%.4f", r.p_sparse) + " > p_dense " + fmt("%.4f", r.p_dense) +
              ", one-sided p-value " + p.str() + " (max 0.01), 5000 trials"};
}

Outcome view_neighborhood_counts() {
  bool pass = true;
  std::string detail;
  for (DensityMode mode : {DensityMode::kVaried, DensityMode::kUniform}) {
    const auto check = compare_view_neighborhoods(mode, 0, kNeighborhoodDraws, 8, 123);
    pass = pass && check.relative_difference <= kMaxViewCountDifference;
    detail += std::string(detail.empty() ? "" : "; ") + std::string(density_mode_name(mode)) +
              " view means " + fmt("%.2f", check.view_means[0]) + "/" +
              fmt("%.2f", check.view_means[1]) + ", relative difference " +
              fmt("%.3f", check.relative_difference);
  }
  return {pass, detail + " (max 0.15, 50 draws)"};
}

Outcome ablation_order() {
  const auto& rows = varied_ablation();
  const double spherical = rows[0].mean;
  const double one_nn = rows[1].mean;
  const double voronoi = rows[2].mean;
  return {spherical > one_nn && one_nn > voronoi,
          "varied mean AUC spherical " + fmt("%.5f", spherical) + " > spherical-1nn " +
              fmt("%.5f", one_nn) + " > voronoi " + fmt("%.5f", voronoi)};
}

Outcome proportion() {
  const auto data = make_anomaly_benchmark(DensityMode::kVaried, 0);
  const auto model = fit(data.dataset, default_params(0));
  const auto selected = select_normals(data.labels, 20, 0);
  const auto result = proportion_consistent(data.dataset, model, 200, selected, 200);
  return {result.percentage >= kMinProportion && result.skipped.empty(),
          fmt("%.2f", result.percentage) + "% of consistent neighbors recovered over " +
              std::to_string(result.evaluated.size()) + " normals (min 80%)"};
}

// Doubled concordance count over all (anomaly, normal) pairs.
double pairwise_auc(const std::vector<double>& s, const std::vector<bool>& y) {
  std::uint64_t doubled = 0;
  std::uint64_t positives = 0;
  std::uint64_t negatives = 0;
  for (std::size_t i = 0; i < s.size(); ++i) (y[i] ? positives : negatives) += 1;
  for (std::size_t a = 0; a < s.size(); ++a) {
    if (!y[a]) continue;
    for (std::size_t n = 0; n < s.size(); ++n) {
      if (y[n]) continue;
      doubled += s[a] > s[n] ? 2 : (s[a] == s[n] ? 1 : 0);
    }
  }
  return static_cast<double>(doubled) /
         (2.0 * static_cast<double>(positives) * static_cast<double>(negatives));
}

Outcome metric_oracle() {
  std::mt19937_64 rng(77);
  std::size_t cases = 0;
  std::size_t exact = 0;
  auto check = [&](const std::vector<double>& s, const std::vector<bool>& y) {
    ++cases;
    if (auc(s, y) == pairwise_auc(s, y)) ++exact;
  };
  for (std::size_t trial = 0; trial < 200; ++trial) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 500)(rng);
    const int levels = std::uniform_int_distribution<int>(1, 50)(rng);
    std::vector<double> s(n);
    std::vector<bool> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = std::uniform_int_distribution<int>(0, levels)(rng) / static_cast<double>(levels);
      y[i] = std::bernoulli_distribution(0.1)(rng);
    }
    y[0] = true;
    y[n - 1] = false;
    check(s, y);
    check(std::vector<double>(n, 0.5), y);  // all tied
    std::vector<double> separated(n);
    for (std::size_t i = 0; i < n; ++i) separated[i] = y[i] ? 1.0 + s[i] : s[i] - 1.0;
    check(separated, y);
  }
  return {exact == cases,
          std::to_string(exact) + "/" + std::to_string(cases) +
              " cases equal the pair enumeration exactly (N <= 500, random, all-tied, separated)"};
}

// Counts the cases in which `property` returns false.
std::size_t count_violations(std::size_t cases,
                             const std::function<bool(std::uint64_t)>& property) {
  std::size_t violations = 0;
  for (std::uint64_t c = 0; c < cases; ++c) violations += property(c) ? 0 : 1;
  return violations;
}

Outcome invariant_suite() {
  std::vector<std::pair<std::string, std::size_t>> results;

  results.emplace_back("row-sparsity", count_violations(kPropertyCases, [](std::uint64_t c) {
    const auto fixture = testing::random_fixture(2000 + c, 80);
    const auto model = fit(fixture.dataset, fixture.params);
    const std::size_t k = fixture.params.effective_k();
    for (std::size_t x = 0; x < fixture.dataset.size(); ++x) {
      const auto e = embed_memberships(model, 0, fixture.dataset, x);
      for (std::size_t v = 0; v < e.views(); ++v) {
        const std::size_t ones = e.row_count(v);
        if (fixture.params.variant == Variant::kVoronoi ? ones != 1 : ones > k) return false;
      }
    }
    return true;
  }));

  results.emplace_back("neighbor-monotonicity",
                       count_violations(kPropertyCases, [](std::uint64_t c) {
    const auto fixture = testing::random_fixture(3000 + c, 40);
    const std::size_t x = c % fixture.dataset.size();
    std::vector<std::size_t> previous;
    for (std::size_t k = 1; k <= fixture.dataset.size(); ++k) {
      const auto current = consistent_neighbors(fixture.dataset, x, k);
      if (!std::includes(current.begin(), current.end(), previous.begin(), previous.end())) {
        return false;
      }
      previous = current;
    }
    return previous.size() == fixture.dataset.size();
  }));

  results.emplace_back("sampling-without-replacement",
                       count_violations(kPropertyCases, [](std::uint64_t c) {
    std::mt19937_64 rng(c);
    const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 5000)(rng);
    const std::size_t psi = std::uniform_int_distribution<std::size_t>(2, std::min<std::size_t>(n, 256))(rng);
    const auto indices = draw_member_indices(n, psi, rng(), c);
    const std::set<std::size_t> unique(indices.begin(), indices.end());
    return indices.size() == psi && unique.size() == psi && *unique.rbegin() < n;
  }));

  const fs::path dir = testing::scratch_dir("acceptance_roundtrip");
  results.emplace_back("io-round-trip", count_violations(kPropertyCases, [&](std::uint64_t c) {
    const auto fixture = testing::random_fixture(4000 + c, 60);
    const auto model = fit(fixture.dataset, fixture.params);
    const auto scores = score_dataset(model, fixture.dataset);
    LabelVector labels(fixture.dataset.size());
    for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = static_cast<Label>((i + c) % 4);
    save_model(dir / "model.txt", model);
    save_scores(dir / "scores.csv", scores, &labels);
    const auto manifest = save_dataset(dir / "data", "fixture", fixture.dataset, &labels);
    const auto loaded_scores = load_scores(dir / "scores.csv");
    const auto loaded = load_manifest(manifest);
    return load_model(dir / "model.txt") == model && loaded_scores.scores == scores &&
           loaded_scores.labels == labels && loaded.dataset == fixture.dataset &&
           loaded.labels == labels;
  }));

  results.emplace_back("label-bookkeeping",
                       count_violations(kPropertyCases, [](std::uint64_t c) {
    const auto data = make_anomaly_benchmark(c % 2 ? DensityMode::kVaried : DensityMode::kUniform, c);
    std::size_t counts[4] = {0, 0, 0, 0};
    for (Label l : data.labels) ++counts[static_cast<int>(l)];
    return counts[0] == 970 && counts[1] == 10 && counts[2] == 10 && counts[3] == 10;
  }));

  bool pass = true;
  std::string detail;
  for (const auto& [name, violations] : results) {
    pass = pass && violations == 0;
    detail += (detail.empty() ? "" : ", ") + name + " " +
              std::to_string(kPropertyCases - violations) + "/" + std::to_string(kPropertyCases);
  }
  return {pass, detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"synthetic-auc", synthetic_auc},
      {"oracle-equivalence", oracle_equivalence},
      {"thread-determinism", thread_determinism},
      {"linear-scaling", linear_scaling},
      {"sparse-density-membership", sparse_density_membership},
      {"view-neighborhood-counts", view_neighborhood_counts},
      {"ablation-order", ablation_order},
      {"consistent-neighbor-proportion", proportion},
      {"auc-pair-oracle", metric_oracle},
      {"invariant-suite", invariant_suite},
  };
  std::size_t failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& e) {
      outcome = {false, std::string("error: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!outcome.pass) ++failed;
    std::printf("%s %2zu %-31s %s [%.1fs]\n", outcome.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), outcome.detail.c_str(), seconds);
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
