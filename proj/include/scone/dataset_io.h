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

// Text file formats.
//
// Feature file: comma-separated numbers, one instance per row. A first line
// that does not parse as numbers is treated as a header and skipped.
//
// Labels file: one integer per line; 0 normal, 1 attribute, 2 class,
// 3 class-attribute.
//
// Manifest: one "key = value" pair per line, '#' starts a comment.
//   name = zoo          (optional)
//   view = zoo_v1.csv   (repeated, in view order)
//   labels = zoo.labels (optional)
// Relative paths resolve against the manifest's directory.
//
// Scores: header "index,consistency,anomaly_score[,label]" then one row per
// instance. All numbers use shortest round-trip decimal rendering.
//
// Model: line-oriented, see save_model.

#ifndef SCONE_DATASET_IO_H_
#define SCONE_DATASET_IO_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "scone/types.h"

namespace scone {

// Shortest decimal string that parses back to exactly `value`.
std::string format_double(double value);

FeatureMatrix load_feature_file(const std::filesystem::path& path);
void save_feature_file(const std::filesystem::path& path, const FeatureMatrix& matrix);

LabelVector load_labels(const std::filesystem::path& path);
void save_labels(const std::filesystem::path& path, const LabelVector& labels);

struct Manifest {
  std::string name;
  std::vector<std::filesystem::path> views;  // resolved
  std::optional<std::filesystem::path> labels;
};

Manifest read_manifest(const std::filesystem::path& path);

// Writes the manifest with paths relative to its directory where possible.
void write_manifest(const std::filesystem::path& path, const Manifest& manifest);

struct LoadedDataset {
  std::string name;
  MultiViewDataset dataset;
  std::optional<LabelVector> labels;
};

// Loads every view and the optional labels. Throws kMissingFile,
// kRowCountMismatch, kNonFiniteValue, kParseError.
LoadedDataset load_manifest(const std::filesystem::path& path);

// Writes "<name>_view<v>.csv" files, labels and "manifest.txt" into
// `directory`; returns the manifest path.
std::filesystem::path save_dataset(const std::filesystem::path& directory,
                                   const std::string& name,
                                   const MultiViewDataset& dataset,
                                   const LabelVector* labels);

void save_scores(const std::filesystem::path& path, const ScoreVector& scores,
                 const LabelVector* labels = nullptr);

struct LoadedScores {
  ScoreVector scores;
  std::optional<LabelVector> labels;
};

LoadedScores load_scores(const std::filesystem::path& path);

inline constexpr int kModelFormatVersion = 1;

void save_model(const std::filesystem::path& path, const EnsembleModel& model);

// Throws kIoError, kVersionMismatch, kCorruptModel.
EnsembleModel load_model(const std::filesystem::path& path);

}  // namespace scone

#endif  // SCONE_DATASET_IO_H_
