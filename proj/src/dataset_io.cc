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

#include "scone/dataset_io.h"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string_view>
#include <unordered_set>
#include <utility>

namespace scone {
namespace fs = std::filesystem;

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    fields.push_back(trim(line.substr(start, pos == std::string_view::npos
                                                 ? std::string_view::npos
                                                 : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return fields;
}

std::vector<std::string_view> split_whitespace(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

bool parse_double(std::string_view text, double& out) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size() && !text.empty();
}

template <typename Int>
bool parse_int(std::string_view text, Int& out, int base = 10) {
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out, base);
  return ec == std::errc() && ptr == text.data() + text.size() && !text.empty();
}

std::ifstream open_input(const fs::path& path) {
  if (!fs::exists(path)) throw Error(ErrorCode::kMissingFile, path.string());
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  return in;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  return out;
}

void finish_output(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out) throw Error(ErrorCode::kIoError, "write failed for " + path.string());
}

std::string location(const fs::path& path, std::size_t line) {
  return path.string() + ":" + std::to_string(line);
}

}  // namespace

std::string format_double(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc()) throw Error(ErrorCode::kInternal, "double formatting failed");
  return std::string(buffer, ptr);
}

FeatureMatrix load_feature_file(const fs::path& path) {
  std::ifstream in = open_input(path);
  std::vector<double> values;
  std::size_t cols = 0;
  std::size_t rows = 0;
  bool first_content_line = true;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view content = trim(line);
    if (content.empty()) continue;
    const auto fields = split(content, ',');
    std::vector<double> row(fields.size());
    std::size_t bad_field = fields.size();
    for (std::size_t c = 0; c < fields.size(); ++c) {
      if (!parse_double(fields[c], row[c])) {
        bad_field = c;
        break;
      }
    }
    if (bad_field != fields.size()) {
      if (first_content_line) {
        first_content_line = false;
        continue;  // header
      }
      throw Error(ErrorCode::kParseError, location(path, line_no) + " column " +
                                              std::to_string(bad_field + 1) +
                                              ": not a number '" +
                                              std::string(fields[bad_field]) + "'");
    }
    first_content_line = false;
    if (rows == 0) {
      cols = row.size();
    } else if (row.size() != cols) {
      throw Error(ErrorCode::kParseError, location(path, line_no) + ": expected " +
                                              std::to_string(cols) + " fields, found " +
                                              std::to_string(row.size()));
    }
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (!std::isfinite(row[c])) {
        throw Error(ErrorCode::kNonFiniteValue, path.string() + " row " +
                                                    std::to_string(rows + 1) + " (line " +
                                                    std::to_string(line_no) + ") column " +
                                                    std::to_string(c + 1));
      }
    }
    values.insert(values.end(), row.begin(), row.end());
    ++rows;
  }
  if (rows == 0) throw Error(ErrorCode::kParseError, path.string() + ": no data rows");
  return FeatureMatrix(rows, cols, std::move(values));
}

void save_feature_file(const fs::path& path, const FeatureMatrix& matrix) {
  std::ofstream out = open_output(path);
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    for (std::size_t c = 0; c < matrix.cols(); ++c) {
      if (c > 0) out << ',';
      out << format_double(matrix(r, c));
    }
    out << '\n';
  }
  finish_output(out, path);
}

LabelVector load_labels(const fs::path& path) {
  std::ifstream in = open_input(path);
  LabelVector labels;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view content = trim(line);
    if (content.empty()) continue;
    int code = -1;
    const auto label = parse_int(content, code) ? label_from_code(code) : std::nullopt;
    if (!label) {
      throw Error(ErrorCode::kParseError,
                  location(path, line_no) + ": label must be 0, 1, 2 or 3");
    }
    labels.push_back(*label);
  }
  return labels;
}

void save_labels(const fs::path& path, const LabelVector& labels) {
  std::ofstream out = open_output(path);
  for (Label label : labels) out << static_cast<int>(label) << '\n';
  finish_output(out, path);
}

Manifest read_manifest(const fs::path& path) {
  std::ifstream in = open_input(path);
  const fs::path base = path.parent_path();
  auto resolve = [&](std::string_view value) {
    fs::path p{std::string(value)};
    return p.is_absolute() ? p : base / p;
  };
  Manifest manifest;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view content = line;
    if (const auto hash = content.find('#'); hash != std::string_view::npos) {
      content = content.substr(0, hash);
    }
    content = trim(content);
    if (content.empty()) continue;
    const auto eq = content.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::kParseError, location(path, line_no) + ": expected key = value");
    }
    const std::string_view key = trim(content.substr(0, eq));
    const std::string_view value = trim(content.substr(eq + 1));
    if (value.empty()) {
      throw Error(ErrorCode::kParseError, location(path, line_no) + ": empty value");
    }
    if (key == "view") {
      manifest.views.push_back(resolve(value));
    } else if (key == "labels") {
      manifest.labels = resolve(value);
    } else if (key == "name") {
      manifest.name = std::string(value);
    } else {
      throw Error(ErrorCode::kParseError,
                  location(path, line_no) + ": unknown key '" + std::string(key) + "'");
    }
  }
  if (manifest.views.empty()) {
    throw Error(ErrorCode::kParseError, path.string() + ": manifest lists no views");
  }
  return manifest;
}

void write_manifest(const fs::path& path, const Manifest& manifest) {
  const fs::path base = path.parent_path();
  auto relative = [&](const fs::path& p) {
    const fs::path rel = p.lexically_relative(base.empty() ? fs::path(".") : base);
    return rel.empty() ? p.generic_string() : rel.generic_string();
  };
  std::ofstream out = open_output(path);
  if (!manifest.name.empty()) out << "name = " << manifest.name << '\n';
  for (const auto& view : manifest.views) out << "view = " << relative(view) << '\n';
  if (manifest.labels) out << "labels = " << relative(*manifest.labels) << '\n';
  finish_output(out, path);
}

LoadedDataset load_manifest(const fs::path& path) {
  const Manifest manifest = read_manifest(path);
  std::vector<FeatureMatrix> views;
  for (const auto& view_path : manifest.views) {
    views.push_back(load_feature_file(view_path));
  }
  for (std::size_t v = 1; v < views.size(); ++v) {
    if (views[v].rows() != views[0].rows()) {
      throw Error(ErrorCode::kRowCountMismatch,
                  manifest.views[v].string() + " has " + std::to_string(views[v].rows()) +
                      " rows, " + manifest.views[0].string() + " has " +
                      std::to_string(views[0].rows()));
    }
  }
  LoadedDataset loaded{manifest.name, MultiViewDataset(std::move(views)), std::nullopt};
  if (manifest.labels) {
    LabelVector labels = load_labels(*manifest.labels);
    if (labels.size() != loaded.dataset.size()) {
      throw Error(ErrorCode::kRowCountMismatch,
                  manifest.labels->string() + " has " + std::to_string(labels.size()) +
                      " labels for " + std::to_string(loaded.dataset.size()) +
                      " instances");
    }
    loaded.labels = std::move(labels);
  }
  return loaded;
}

fs::path save_dataset(const fs::path& directory, const std::string& name,
                      const MultiViewDataset& dataset, const LabelVector* labels) {
  std::error_code ec;
  fs::create_directories(directory, ec);
  if (ec) throw Error(ErrorCode::kIoError, "cannot create " + directory.string());
  Manifest manifest;
  manifest.name = name;
  for (std::size_t v = 0; v < dataset.view_count(); ++v) {
    const fs::path view_path = directory / (name + "_view" + std::to_string(v + 1) + ".csv");
    save_feature_file(view_path, dataset.view(v));
    manifest.views.push_back(view_path);
  }
  if (labels != nullptr) {
    const fs::path labels_path = directory / (name + ".labels");
    save_labels(labels_path, *labels);
    manifest.labels = labels_path;
  }
  const fs::path manifest_path = directory / "manifest.txt";
  write_manifest(manifest_path, manifest);
  return manifest_path;
}

void save_scores(const fs::path& path, const ScoreVector& scores,
                 const LabelVector* labels) {
  if (labels != nullptr && labels->size() != scores.size()) {
    throw Error(ErrorCode::kInvalidArgument, "labels do not match score count");
  }
  std::ofstream out = open_output(path);
  out << "index,consistency,anomaly_score" << (labels != nullptr ? ",label" : "") << '\n';
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const double c = scores.consistency[i];
    out << i << ',' << format_double(c) << ',' << format_double(1.0 - c);
    if (labels != nullptr) out << ',' << static_cast<int>((*labels)[i]);
    out << '\n';
  }
  finish_output(out, path);
}

LoadedScores load_scores(const fs::path& path) {
  std::ifstream in = open_input(path);
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::kParseError, path.string() + ": empty");
  const auto header = split(trim(line), ',');
  const bool has_labels = header.size() == 4 && header[3] == "label";
  if (header.size() < 3 || header[0] != "index" || header[1] != "consistency" ||
      header[2] != "anomaly_score" || (header.size() == 4 && !has_labels) ||
      header.size() > 4) {
    throw Error(ErrorCode::kParseError, location(path, 1) + ": unexpected header");
  }
  LoadedScores loaded;
  if (has_labels) loaded.labels.emplace();
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view content = trim(line);
    if (content.empty()) continue;
    const auto fields = split(content, ',');
    std::size_t index = 0;
    double consistency = 0.0;
    if (fields.size() != header.size() || !parse_int(fields[0], index) ||
        index != loaded.scores.size() || !parse_double(fields[1], consistency)) {
      throw Error(ErrorCode::kParseError, location(path, line_no) + ": malformed score row");
    }
    loaded.scores.consistency.push_back(consistency);
    if (has_labels) {
      int code = -1;
      const auto label = parse_int(fields[3], code) ? label_from_code(code) : std::nullopt;
      if (!label) throw Error(ErrorCode::kParseError, location(path, line_no) + ": bad label");
      loaded.labels->push_back(*label);
    }
  }
  return loaded;
}

// Layout:
//   scone-model <version>
//   psi <n> / k <n> / t <n> / seed <n> / variant <name>
//   fingerprint <N> <V> <checksum hex>
//   dims <d_1> ... <d_V>
//   then per member: "member <j> <indices...>" and V lines "radii <v> <values...>"
//   end
void save_model(const fs::path& path, const EnsembleModel& model) {
  std::ofstream out = open_output(path);
  const auto& p = model.params;
  const auto& fp = model.dataset_fingerprint;
  char checksum[17];
  std::snprintf(checksum, sizeof(checksum), "%016llx",
                static_cast<unsigned long long>(fp.checksum));
  out << "scone-model " << kModelFormatVersion << '\n'
      << "psi " << p.psi << '\n'
      << "k " << p.k << '\n'
      << "t " << p.t << '\n'
      << "seed " << p.seed << '\n'
      << "variant " << variant_name(p.variant) << '\n'
      << "fingerprint " << fp.instances << ' ' << fp.views << ' ' << checksum << '\n'
      << "dims";
  for (auto d : fp.dims) out << ' ' << d;
  out << '\n';
  for (std::size_t j = 0; j < model.members.size(); ++j) {
    const SampleSet& member = model.members[j];
    out << "member " << j;
    for (auto index : member.indices) out << ' ' << index;
    out << '\n';
    for (std::size_t v = 0; v < member.radii.size(); ++v) {
      out << "radii " << v;
      for (double r : member.radii[v]) out << ' ' << format_double(r);
      out << '\n';
    }
  }
  out << "end\n";
  finish_output(out, path);
}

EnsembleModel load_model(const fs::path& path) {
  std::ifstream in = open_input(path);
  std::size_t line_no = 0;
  std::string line;
  auto corrupt = [&](const std::string& what) {
    return Error(ErrorCode::kCorruptModel, location(path, line_no) + ": " + what);
  };
  // Next line split into tokens, with its leading keyword checked.
  auto next = [&](std::string_view keyword) {
    if (!std::getline(in, line)) {
      throw corrupt("unexpected end of file, expected '" + std::string(keyword) + "'");
    }
    ++line_no;
    auto tokens = split_whitespace(line);
    if (tokens.empty() || tokens[0] != keyword) {
      throw corrupt("expected '" + std::string(keyword) + "'");
    }
    return std::vector<std::string>(tokens.begin() + 1, tokens.end());
  };
  auto single_uint = [&](std::string_view keyword) {
    const auto tokens = next(keyword);
    std::uint64_t value = 0;
    if (tokens.size() != 1 || !parse_int(tokens[0], value)) {
      throw corrupt("bad value for '" + std::string(keyword) + "'");
    }
    return value;
  };

  const auto magic = next("scone-model");
  int version = 0;
  if (magic.size() != 1 || !parse_int(magic[0], version)) throw corrupt("bad version line");
  if (version != kModelFormatVersion) {
    throw Error(ErrorCode::kVersionMismatch,
                path.string() + ": model format version " + std::to_string(version) +
                    ", expected " + std::to_string(kModelFormatVersion));
  }

  EnsembleModel model;
  model.params.psi = single_uint("psi");
  model.params.k = single_uint("k");
  model.params.t = single_uint("t");
  model.params.seed = single_uint("seed");
  const auto variant_tokens = next("variant");
  const auto variant =
      variant_tokens.size() == 1 ? parse_variant(variant_tokens[0]) : std::nullopt;
  if (!variant) throw corrupt("unknown variant");
  model.params.variant = *variant;

  const auto fp_tokens = next("fingerprint");
  auto& fp = model.dataset_fingerprint;
  if (fp_tokens.size() != 3 || !parse_int(fp_tokens[0], fp.instances) ||
      !parse_int(fp_tokens[1], fp.views) || !parse_int(fp_tokens[2], fp.checksum, 16)) {
    throw corrupt("bad fingerprint");
  }
  const auto dim_tokens = next("dims");
  if (dim_tokens.size() != fp.views || fp.views == 0) throw corrupt("bad dims");
  for (const auto& token : dim_tokens) {
    std::uint64_t d = 0;
    if (!parse_int(token, d) || d == 0) throw corrupt("bad dims");
    fp.dims.push_back(d);
  }
  if (validate_params(model.params, fp.instances)) throw corrupt("invalid parameters");

  const std::size_t psi = model.params.psi;
  for (std::size_t j = 0; j < model.params.t; ++j) {
    const auto member_tokens = next("member");
    std::size_t id = 0;
    if (member_tokens.size() != psi + 1 || !parse_int(member_tokens[0], id) || id != j) {
      throw corrupt("bad member header");
    }
    SampleSet set;
    std::unordered_set<std::size_t> seen;
    for (std::size_t i = 1; i <= psi; ++i) {
      std::size_t index = 0;
      if (!parse_int(member_tokens[i], index) || index >= fp.instances ||
          !seen.insert(index).second) {
        throw corrupt("sample indices must be distinct and in range");
      }
      set.indices.push_back(index);
    }
    for (std::size_t v = 0; v < fp.views; ++v) {
      const auto radii_tokens = next("radii");
      std::size_t view = 0;
      if (radii_tokens.size() != psi + 1 || !parse_int(radii_tokens[0], view) || view != v) {
        throw corrupt("bad radii line");
      }
      std::vector<double> radii(psi);
      for (std::size_t i = 0; i < psi; ++i) {
        if (!parse_double(radii_tokens[i + 1], radii[i]) || !std::isfinite(radii[i]) ||
            radii[i] < 0.0) {
          throw corrupt("radii must be finite and nonnegative");
        }
      }
      set.radii.push_back(std::move(radii));
    }
    model.members.push_back(std::move(set));
  }
  next("end");
  return model;
}

}  // namespace scone
