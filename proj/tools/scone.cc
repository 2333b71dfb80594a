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

// scone: generate synthetic multi-view data, fit and score ensembles,
// evaluate detections, and run the ablation, benchmark and property
// experiments.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "scone/dataset_io.h"
#include "scone/ensemble.h"
#include "scone/evaluation.h"
#include "scone/experiments.h"
#include "scone/oracle.h"
#include "scone/synthetic.h"

namespace fs = std::filesystem;
using namespace scone;

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kData = 2, kInternalFailure = 3 };

enum class Format { kTable, kRows };

// Fixed-column output: aligned text or comma-separated rows.
class Table {
 public:
  explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}

  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  void print(std::ostream& out, Format format) const {
    if (format == Format::kRows) {
      print_csv(out, header_);
      for (const auto& row : rows_) print_csv(out, row);
      return;
    }
    std::vector<std::size_t> width(header_.size());
    for (std::size_t c = 0; c < header_.size(); ++c) width[c] = header_[c].size();
    for (const auto& row : rows_)
      for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    auto line = [&](const std::vector<std::string>& row) {
      std::string text;
      for (std::size_t c = 0; c < row.size(); ++c) {
        std::string cell = row[c];
        if (c + 1 < row.size()) cell.resize(width[c] + 2, ' ');
        text += cell;
      }
      out << text << '\n';
    };
    line(header_);
    for (const auto& row : rows_) line(row);
  }

 private:
  static void print_csv(std::ostream& out, const std::vector<std::string>& row) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << row[c];
    out << '\n';
  }

  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

std::string fixed(double value, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, value);
  return buf;
}

// Tables show rounded values; rows carry full precision.
std::string number(double value, Format format, int digits = 4) {
  return format == Format::kRows ? format_double(value) : fixed(value, digits);
}

std::size_t default_threads() {
  if (const char* env = std::getenv("SCONE_THREADS")) {
    try {
      return static_cast<std::size_t>(std::stoul(env));
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidArgument, "SCONE_THREADS must be a nonnegative integer");
    }
  }
  return 0;
}

struct CommonOptions {
  std::size_t threads = 0;
  std::string format_name = "table";

  Format format() const { return format_name == "rows" ? Format::kRows : Format::kTable; }
};

struct ModelOptions {
  SconeParams params;
  std::string variant = "spherical";

  SconeParams resolved() const {
    SconeParams p = params;
    const auto v = parse_variant(variant);
    if (!v) throw Error(ErrorCode::kInvalidArgument, "unknown variant '" + variant + "'");
    p.variant = *v;
    return p;
  }
};

void add_model_options(CLI::App* cmd, ModelOptions& opts) {
  cmd->add_option("--psi", opts.params.psi, "Subsample size per ensemble member")
      ->capture_default_str();
  cmd->add_option("--k", opts.params.k, "Nearest samples admitted per view")
      ->capture_default_str();
  cmd->add_option("--t", opts.params.t, "Ensemble size")->capture_default_str();
  cmd->add_option("--seed", opts.params.seed, "Sampling seed")->capture_default_str();
  cmd->add_option("--variant", opts.variant, "spherical, voronoi or spherical-1nn")
      ->capture_default_str();
}

void add_common_options(CLI::App* cmd, CommonOptions& opts, bool parallel = true) {
  if (parallel) cmd->add_option("--threads", opts.threads, "Worker threads (0: all cores)");
  cmd->add_option("--format", opts.format_name, "table or rows")
      ->check(CLI::IsMember({"table", "rows"}))
      ->capture_default_str();
}

DensityMode density_mode(const std::string& name) {
  const auto mode = parse_density_mode(name);
  if (!mode) throw Error(ErrorCode::kInvalidArgument, "unknown density mode '" + name + "'");
  return *mode;
}

LoadedDataset load_input(const std::string& manifest, bool normalize) {
  LoadedDataset loaded = load_manifest(manifest);
  if (normalize) loaded.dataset = minmax_rescale(loaded.dataset);
  return loaded;
}

const LabelVector& require_labels(const LoadedDataset& loaded, const std::string& why) {
  if (!loaded.labels) {
    throw Error(ErrorCode::kInvalidArgument, "the manifest has no labels; " + why);
  }
  return *loaded.labels;
}

// generate -------------------------------------------------------------------

struct GenerateOptions {
  std::string mode = "varied";
  std::vector<std::uint64_t> seeds{0};
  std::size_t instances = 1000;
  std::size_t views = 2;
  AnomalyPlan plan;
  std::string out;
};

int run_generate(const GenerateOptions& o) {
  const DensityMode mode = density_mode(o.mode);
  for (std::uint64_t seed : o.seeds) {
    const SyntheticData data = make_anomaly_benchmark(mode, seed, o.instances, o.plan, o.views);
    const std::string name = std::string(density_mode_name(mode)) + "-" + std::to_string(seed);
    std::cout << save_dataset(fs::path(o.out) / name, name, data.dataset, &data.labels).string()
              << '\n';
  }
  return kOk;
}

// fit-score and score ----------------------------------------------------------

struct FitScoreOptions {
  std::string manifest;
  std::string scores;
  std::string model;
  bool normalize = false;
  bool grid = false;
  ModelOptions model_options;
  CommonOptions common;
};

constexpr std::size_t kGridPsi[] = {2, 4, 8, 16, 32, 64, 128, 256};
constexpr std::size_t kGridK[] = {1, 3, 5, 7, 11, 21, 51, 101};

// Best labeled AUC over the search grid; the first maximum in grid order wins.
SconeParams search_grid(const MultiViewDataset& dataset, const LabelVector& labels,
                        const SconeParams& base, const CommonOptions& common) {
  Table table({"psi", "k", "auc"});
  std::optional<SconeParams> best;
  double best_auc = -1.0;
  for (std::size_t psi : kGridPsi) {
    for (std::size_t k : kGridK) {
      SconeParams p = base;
      p.psi = psi;
      p.k = k;
      if (validate_params(p, dataset)) continue;
      if (p.variant != Variant::kSpherical && k != kGridK[0]) continue;  // k unused
      const double auc =
          evaluate_detection(dataset, labels, p, ExecutionOptions{common.threads}).auc;
      table.add({std::to_string(psi), std::to_string(k), number(auc, common.format())});
      if (auc > best_auc) {
        best_auc = auc;
        best = p;
      }
    }
  }
  if (!best) throw Error(ErrorCode::kPsiExceedsN, "no grid point fits this dataset");
  table.print(std::cout, common.format());
  std::cout << "selected psi=" << best->psi << " k=" << best->k << '\n';
  return *best;
}

int run_fit_score(const FitScoreOptions& o) {
  const LoadedDataset loaded = load_input(o.manifest, o.normalize);
  SconeParams params = o.model_options.resolved();
  if (o.grid) {
    const LabelVector& labels =
        require_labels(loaded, "--grid selects parameters by labeled AUC");
    params = search_grid(loaded.dataset, labels, params, o.common);
  }
  const ExecutionOptions exec{o.common.threads};
  const EnsembleModel model = fit(loaded.dataset, params, exec);
  const ScoreVector scores = score_dataset(model, loaded.dataset, exec);
  save_scores(o.scores, scores, loaded.labels ? &*loaded.labels : nullptr);
  if (!o.model.empty()) save_model(o.model, model);
  return kOk;
}

struct ScoreOptions {
  std::string manifest;
  std::string model;
  std::string scores;
  bool normalize = false;
  CommonOptions common;
};

int run_score(const ScoreOptions& o) {
  const LoadedDataset loaded = load_input(o.manifest, o.normalize);
  const EnsembleModel model = load_model(o.model);
  const ScoreVector scores =
      score_dataset(model, loaded.dataset, ExecutionOptions{o.common.threads});
  save_scores(o.scores, scores, loaded.labels ? &*loaded.labels : nullptr);
  return kOk;
}

// evaluate ---------------------------------------------------------------------

struct EvaluateOptions {
  std::string scores;
  std::string labels;
  std::string roc;
  CommonOptions common;
};

int run_evaluate(const EvaluateOptions& o) {
  const LoadedScores loaded = load_scores(o.scores);
  LabelVector labels;
  if (!o.labels.empty()) {
    labels = load_labels(o.labels);
  } else if (loaded.labels) {
    labels = *loaded.labels;
  } else {
    throw Error(ErrorCode::kInvalidArgument,
                "the scores file has no label column; pass --labels");
  }
  if (labels.size() != loaded.scores.size()) {
    throw Error(ErrorCode::kRowCountMismatch,
                std::to_string(labels.size()) + " labels for " +
                    std::to_string(loaded.scores.size()) + " scores");
  }
  const std::vector<double> scores = anomaly_scores(loaded.scores);
  Table table({"metric", "auc"});
  table.add({"overall", number(overall_auc(scores, labels), o.common.format())});
  for (const auto& [label, value] : per_type_auc(scores, labels)) {
    table.add({std::string(label_name(label)), number(value, o.common.format())});
  }
  table.print(std::cout, o.common.format());

  if (!o.roc.empty()) {
    std::vector<bool> positive;
    for (Label l : labels) positive.push_back(is_anomaly(l));
    std::ofstream out(o.roc);
    if (!out) throw Error(ErrorCode::kIoError, "cannot write " + o.roc);
    out << "threshold,false_positive_rate,true_positive_rate\n";
    for (const RocPoint& p : roc_points(scores, positive)) {
      out << format_double(p.threshold) << ',' << format_double(p.false_positive_rate) << ','
          << format_double(p.true_positive_rate) << '\n';
    }
    if (!out) throw Error(ErrorCode::kIoError, "write failed for " + o.roc);
  }
  return kOk;
}

// ablate -----------------------------------------------------------------------

struct AblateOptions {
  std::string manifest;
  bool normalize = false;
  std::string mode = "varied";
  std::vector<std::uint64_t> seeds;
  ModelOptions model_options;
  CommonOptions common;
};

int run_ablate(const AblateOptions& o) {
  const SconeParams params = o.model_options.resolved();
  const ExecutionOptions exec{o.common.threads};
  std::vector<AblationRow> rows;
  if (!o.manifest.empty()) {
    const LoadedDataset loaded = load_input(o.manifest, o.normalize);
    rows = ablate_dataset(loaded.dataset, require_labels(loaded, "ablation reports AUC"),
                          params, exec);
  } else {
    std::vector<std::uint64_t> seeds = o.seeds;
    if (seeds.empty()) {
      for (std::uint64_t s = 0; s < 20; ++s) seeds.push_back(s);
    }
    rows = ablate_synthetic(density_mode(o.mode), seeds, params, exec);
  }
  Table table({"variant", "auc_mean", "auc_std", "datasets"});
  for (const AblationRow& row : rows) {
    table.add({std::string(variant_name(row.variant)), number(row.mean, o.common.format()),
               number(row.stddev, o.common.format()), std::to_string(row.auc.size())});
  }
  table.print(std::cout, o.common.format());
  return kOk;
}

// benchmark --------------------------------------------------------------------

struct BenchmarkOptions {
  std::vector<std::size_t> sizes{10000, 30000, 100000};
  std::size_t repetitions = 5;
  std::string mode = "varied";
  std::size_t views = 2;
  std::uint64_t data_seed = 0;
  ModelOptions model_options;
  CommonOptions common;
};

int run_benchmark(const BenchmarkOptions& o) {
  const BenchmarkConfig config{o.views, density_mode(o.mode), o.data_seed};
  const BenchmarkTable result =
      runtime_benchmark(o.sizes, o.model_options.resolved(), config, o.repetitions,
                        ExecutionOptions{o.common.threads});
  Table table({"instances", "median_seconds"});
  for (const BenchmarkRow& row : result.rows) {
    table.add({std::to_string(row.instances), number(row.median_seconds, o.common.format())});
  }
  table.print(std::cout, o.common.format());
  if (result.slope) {
    std::cout << (o.common.format() == Format::kRows ? "slope," : "log-log slope: ")
              << number(*result.slope, o.common.format(), 3) << '\n';
  }
  return kOk;
}

// proportion -------------------------------------------------------------------

struct ProportionOptions {
  std::string manifest;
  bool normalize = false;
  std::string mode = "varied";
  std::uint64_t data_seed = 0;
  std::size_t k_oracle = 200;
  std::size_t k_repr = 0;
  std::size_t normals = 20;
  std::uint64_t selection_seed = 0;
  bool per_instance = false;
  ModelOptions model_options;
  CommonOptions common;
};

int run_proportion(const ProportionOptions& o) {
  MultiViewDataset dataset({FeatureMatrix(1, 1)});
  LabelVector labels;
  if (!o.manifest.empty()) {
    LoadedDataset loaded = load_input(o.manifest, o.normalize);
    labels = require_labels(loaded, "normal instances are selected by label");
    dataset = std::move(loaded.dataset);
  } else {
    SyntheticData data = make_anomaly_benchmark(density_mode(o.mode), o.data_seed);
    dataset = std::move(data.dataset);
    labels = std::move(data.labels);
  }
  const ExecutionOptions exec{o.common.threads};
  const EnsembleModel model = fit(dataset, o.model_options.resolved(), exec);
  const auto selected = select_normals(labels, o.normals, o.selection_seed);
  const std::size_t k_repr = o.k_repr == 0 ? o.k_oracle : o.k_repr;
  const ProportionResult result =
      proportion_consistent(dataset, model, o.k_oracle, selected, k_repr, exec);

  if (o.per_instance) {
    Table detail({"instance", "percentage"});
    for (std::size_t i = 0; i < result.evaluated.size(); ++i) {
      detail.add({std::to_string(result.evaluated[i]),
                  number(result.per_instance[i], o.common.format(), 2)});
    }
    detail.print(std::cout, o.common.format());
  }
  for (std::size_t x : result.skipped) {
    std::cerr << "warning: instance " << x << " has no consistent neighbors; skipped\n";
  }
  Table summary({"percentage", "evaluated", "skipped"});
  summary.add({number(result.percentage, o.common.format(), 2),
               std::to_string(result.evaluated.size()), std::to_string(result.skipped.size())});
  summary.print(std::cout, o.common.format());
  return kOk;
}

// theorems ---------------------------------------------------------------------

struct TheoremOptions {
  std::string mode = "varied";
  std::uint64_t data_seed = 0;
  std::size_t draws = 50;
  std::size_t psi = 8;
  std::uint64_t sample_seed = 123;
  double tolerance = 0.15;
  DensityProbe probe;
  double alpha = 0.01;
  CommonOptions common;
};

int run_theorems(const TheoremOptions& o) {
  const NeighborhoodCountCheck counts =
      compare_view_neighborhoods(density_mode(o.mode), o.data_seed, o.draws, o.psi,
                                 o.sample_seed);
  const MembershipProbability probe = run_density_probe(o.probe);
  const bool counts_pass = counts.relative_difference <= o.tolerance;
  const bool probe_pass = probe.p_sparse > probe.p_dense && probe.p_value < o.alpha;

  std::ostringstream means;
  for (std::size_t v = 0; v < counts.view_means.size(); ++v) {
    means << (v ? "/" : "") << number(counts.view_means[v], o.common.format(), 3);
  }
  std::ostringstream p_value;
  p_value << probe.p_value;

  Table table({"check", "status", "statistic", "value", "threshold"});
  table.add({"view-neighborhood-counts", counts_pass ? "PASS" : "FAIL", "view_means",
             means.str(), ""});
  table.add({"view-neighborhood-counts", counts_pass ? "PASS" : "FAIL", "relative_difference",
             number(counts.relative_difference, o.common.format()), number(o.tolerance, o.common.format())});
  table.add({"sparser-density-membership", probe_pass ? "PASS" : "FAIL", "p_sparse",
             number(probe.p_sparse, o.common.format()), ""});
  table.add({"sparser-density-membership", probe_pass ? "PASS" : "FAIL", "p_dense",
             number(probe.p_dense, o.common.format()), ""});
  table.add({"sparser-density-membership", probe_pass ? "PASS" : "FAIL", "p_value",
             p_value.str(), number(o.alpha, o.common.format())});
  table.print(std::cout, o.common.format());
  return kOk;
}

int exit_code_for(const Error& e) {
  if (e.code() == ErrorCode::kInternal) return kInternalFailure;
  return is_parameter_error(e.code()) ? kUsage : kData;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-view anomaly detection with consistent spherical neighborhoods"};
  app.name("scone");
  app.require_subcommand(1);

  std::size_t env_threads = 0;
  try {
    env_threads = default_threads();
  } catch (const Error& e) {
    std::cerr << "scone: " << e.what() << '\n';
    return kUsage;
  }

  GenerateOptions gen;
  auto* generate = app.add_subcommand("generate", "Write synthetic two-view benchmark datasets");
  generate->add_option("--mode", gen.mode, "uniform or varied")->capture_default_str();
  generate->add_option("--seed,--seeds", gen.seeds, "Data seeds, one dataset each")
      ->expected(1, -1);
  generate->add_option("--instances", gen.instances, "Rows per dataset")->capture_default_str();
  generate->add_option("--views", gen.views, "View count")->capture_default_str();
  generate->add_option("--attribute", gen.plan.attribute, "Attribute anomalies")
      ->capture_default_str();
  generate->add_option("--class", gen.plan.class_instances, "Class anomalies (even)")
      ->capture_default_str();
  generate->add_option("--class-attribute", gen.plan.class_attribute_instances,
                       "Class-attribute anomalies (even)")
      ->capture_default_str();
  generate->add_option("--out", gen.out, "Output directory")->required();

  FitScoreOptions fs_opts;
  fs_opts.common.threads = env_threads;
  auto* fit_score = app.add_subcommand("fit-score", "Fit an ensemble and score a dataset");
  fit_score->add_option("--manifest", fs_opts.manifest, "Dataset manifest")->required();
  fit_score->add_option("--scores", fs_opts.scores, "Output scores file")->required();
  fit_score->add_option("--model", fs_opts.model, "Optional output model file");
  fit_score->add_flag("--normalize", fs_opts.normalize, "Min-max rescale each view first");
  fit_score->add_flag("--grid", fs_opts.grid, "Select psi and k by labeled AUC");
  add_model_options(fit_score, fs_opts.model_options);
  add_common_options(fit_score, fs_opts.common);

  ScoreOptions sc_opts;
  sc_opts.common.threads = env_threads;
  auto* score = app.add_subcommand("score", "Score a dataset with a saved model");
  score->add_option("--manifest", sc_opts.manifest, "Dataset manifest")->required();
  score->add_option("--model", sc_opts.model, "Model file")->required();
  score->add_option("--scores", sc_opts.scores, "Output scores file")->required();
  score->add_flag("--normalize", sc_opts.normalize, "Min-max rescale each view first");
  add_common_options(score, sc_opts.common);

  EvaluateOptions ev_opts;
  auto* evaluate = app.add_subcommand("evaluate", "Overall and per-type AUC of a scores file");
  evaluate->add_option("--scores", ev_opts.scores, "Scores file")->required();
  evaluate->add_option("--labels", ev_opts.labels, "Labels file (default: scores file column)");
  evaluate->add_option("--roc", ev_opts.roc, "Write ROC points to this file");
  add_common_options(evaluate, ev_opts.common, false);

  AblateOptions ab_opts;
  ab_opts.common.threads = env_threads;
  auto* ablate = app.add_subcommand("ablate", "Compare neighborhood variants by AUC");
  ablate->add_option("--manifest", ab_opts.manifest, "Labeled dataset (default: synthetic)");
  ablate->add_flag("--normalize", ab_opts.normalize, "Min-max rescale each view first");
  ablate->add_option("--mode", ab_opts.mode, "Synthetic density mode")->capture_default_str();
  ablate->add_option("--data-seeds", ab_opts.seeds, "Synthetic data seeds (default 0..19)");
  add_model_options(ablate, ab_opts.model_options);
  add_common_options(ablate, ab_opts.common);

  BenchmarkOptions bm_opts;
  bm_opts.common.threads = env_threads;
  auto* benchmark = app.add_subcommand("benchmark", "Runtime scaling over dataset sizes");
  benchmark->add_option("--sizes", bm_opts.sizes, "Instance counts")->capture_default_str();
  benchmark->add_option("--repetitions", bm_opts.repetitions, "Timed runs per size")
      ->capture_default_str();
  benchmark->add_option("--mode", bm_opts.mode, "Synthetic density mode")->capture_default_str();
  benchmark->add_option("--views", bm_opts.views, "View count")->capture_default_str();
  benchmark->add_option("--data-seed", bm_opts.data_seed, "Synthetic data seed");
  add_model_options(benchmark, bm_opts.model_options);
  add_common_options(benchmark, bm_opts.common);

  ProportionOptions pr_opts;
  pr_opts.common.threads = env_threads;
  auto* proportion = app.add_subcommand(
      "proportion", "Share of consistent neighbors recovered by co-membership similarity");
  proportion->add_option("--manifest", pr_opts.manifest, "Labeled dataset (default: synthetic)");
  proportion->add_flag("--normalize", pr_opts.normalize, "Min-max rescale each view first");
  proportion->add_option("--mode", pr_opts.mode, "Synthetic density mode")->capture_default_str();
  proportion->add_option("--data-seed", pr_opts.data_seed, "Synthetic data seed");
  proportion->add_option("--k-oracle", pr_opts.k_oracle, "Neighbors per view for the oracle")
      ->capture_default_str();
  proportion->add_option("--k-repr", pr_opts.k_repr, "Most similar instances (default: k-oracle)");
  proportion->add_option("--normals", pr_opts.normals, "Normal instances evaluated")
      ->capture_default_str();
  proportion->add_option("--selection-seed", pr_opts.selection_seed, "Seed for picking normals");
  proportion->add_flag("--per-instance", pr_opts.per_instance, "Print each selected instance");
  add_model_options(proportion, pr_opts.model_options);
  add_common_options(proportion, pr_opts.common);

  TheoremOptions th_opts;
  auto* theorems = app.add_subcommand(
      "theorems", "Cross-view neighborhood counts and the sparse-density membership probe");
  theorems->add_option("--mode", th_opts.mode, "Synthetic density mode")->capture_default_str();
  theorems->add_option("--data-seed", th_opts.data_seed, "Synthetic data seed");
  theorems->add_option("--draws", th_opts.draws, "Sample-set draws")->capture_default_str();
  theorems->add_option("--psi", th_opts.psi, "Samples per draw")->capture_default_str();
  theorems->add_option("--sample-seed", th_opts.sample_seed, "Seed for sample draws")
      ->capture_default_str();
  theorems->add_option("--tolerance", th_opts.tolerance, "Allowed relative difference")
      ->capture_default_str();
  theorems->add_option("--ratio", th_opts.probe.density_ratio, "Dense over sparse density")
      ->capture_default_str();
  theorems->add_option("--probe-psi", th_opts.probe.psi, "Probe sample size")
      ->capture_default_str();
  theorems->add_option("--probe-k", th_opts.probe.k, "Probe neighbor count")
      ->capture_default_str();
  theorems->add_option("--trials", th_opts.probe.trials, "Monte Carlo trials")
      ->capture_default_str();
  theorems->add_option("--probe-seed", th_opts.probe.seed, "Monte Carlo seed")
      ->capture_default_str();
  theorems->add_option("--alpha", th_opts.alpha, "Significance level")->capture_default_str();
  add_common_options(theorems, th_opts.common, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*generate) return run_generate(gen);
    if (*fit_score) return run_fit_score(fs_opts);
    if (*score) return run_score(sc_opts);
    if (*evaluate) return run_evaluate(ev_opts);
    if (*ablate) return run_ablate(ab_opts);
    if (*benchmark) return run_benchmark(bm_opts);
    if (*proportion) return run_proportion(pr_opts);
    if (*theorems) return run_theorems(th_opts);
  } catch (const Error& e) {
    std::cerr << "scone: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "scone: INTERNAL: " << e.what() << '\n';
    return kInternalFailure;
  }
  return kUsage;
}
