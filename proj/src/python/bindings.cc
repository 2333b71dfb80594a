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

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <string>
#include <vector>

#include "scone/dataset_io.h"
#include "scone/ensemble.h"
#include "scone/evaluation.h"
#include "scone/experiments.h"
#include "scone/oracle.h"
#include "scone/synthetic.h"

namespace py = pybind11;
using namespace scone;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

FeatureMatrix to_matrix(const Array& array) {
  if (array.ndim() != 2) throw Error(ErrorCode::kInvalidArgument, "each view must be 2-D");
  const auto rows = static_cast<std::size_t>(array.shape(0));
  const auto cols = static_cast<std::size_t>(array.shape(1));
  return FeatureMatrix(rows, cols, std::vector<double>(array.data(), array.data() + rows * cols));
}

Array to_array(const FeatureMatrix& m) {
  Array out({m.rows(), m.cols()});
  std::copy(m.values().begin(), m.values().end(), out.mutable_data());
  return out;
}

Array vector_to_array(const std::vector<double>& v) {
  Array out(std::vector<py::ssize_t>{static_cast<py::ssize_t>(v.size())});
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

MultiViewDataset make_dataset(const std::vector<Array>& views) {
  std::vector<FeatureMatrix> mats;
  for (const auto& v : views) mats.push_back(to_matrix(v));
  return MultiViewDataset(std::move(mats));
}

Variant variant_from(const std::string& name) {
  const auto v = parse_variant(name);
  if (!v) throw Error(ErrorCode::kInvalidArgument, "unknown variant '" + name + "'");
  return *v;
}

DensityMode mode_from(const std::string& name) {
  const auto m = parse_density_mode(name);
  if (!m) throw Error(ErrorCode::kInvalidArgument, "unknown density mode '" + name + "'");
  return *m;
}

py::array_t<int> labels_to_array(const LabelVector& labels) {
  py::array_t<int> out(std::vector<py::ssize_t>{static_cast<py::ssize_t>(labels.size())});
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out.mutable_data()[i] = static_cast<int>(labels[i]);
  }
  return out;
}

LabelVector labels_from(const py::array_t<int, py::array::forcecast>& codes) {
  LabelVector labels;
  for (py::ssize_t i = 0; i < codes.size(); ++i) {
    const auto label = label_from_code(codes.data()[i]);
    if (!label) throw Error(ErrorCode::kInvalidArgument, "labels must be 0, 1, 2 or 3");
    labels.push_back(*label);
  }
  return labels;
}

std::vector<bool> mask_from(const py::array_t<bool, py::array::forcecast>& mask) {
  return std::vector<bool>(mask.data(), mask.data() + mask.size());
}

std::span<const double> span_of(const Array& a) {
  return {a.data(), static_cast<std::size_t>(a.size())};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Multi-view anomaly detection with consistent spherical neighborhoods";

  py::register_exception<Error>(m, "SconeError", PyExc_ValueError);

  py::class_<MultiViewDataset>(m, "Dataset")
      .def(py::init(&make_dataset), py::arg("views"))
      .def_property_readonly("size", &MultiViewDataset::size)
      .def_property_readonly("view_count", &MultiViewDataset::view_count)
      .def_property_readonly("dims", &MultiViewDataset::dims)
      .def("view", [](const MultiViewDataset& d, std::size_t v) {
        if (v >= d.view_count()) throw Error(ErrorCode::kIndexOutOfRange, "no such view");
        return to_array(d.view(v));
      })
      .def("__len__", &MultiViewDataset::size)
      .def("__repr__", [](const MultiViewDataset& d) {
        return "<Dataset instances=" + std::to_string(d.size()) +
               " views=" + std::to_string(d.view_count()) + ">";
      });

  py::class_<SconeParams>(m, "Params")
      .def(py::init([](std::size_t psi, std::size_t k, std::size_t t, std::uint64_t seed,
                       const std::string& variant) {
             return SconeParams{psi, k, t, seed, variant_from(variant)};
           }),
           py::arg("psi") = 8, py::arg("k") = 3, py::arg("t") = 200, py::arg("seed") = 0,
           py::arg("variant") = "spherical")
      .def_readwrite("psi", &SconeParams::psi)
      .def_readwrite("k", &SconeParams::k)
      .def_readwrite("t", &SconeParams::t)
      .def_readwrite("seed", &SconeParams::seed)
      .def_property(
          "variant", [](const SconeParams& p) { return std::string(variant_name(p.variant)); },
          [](SconeParams& p, const std::string& v) { p.variant = variant_from(v); })
      .def("__eq__", [](const SconeParams& a, const SconeParams& b) { return a == b; })
      .def("__repr__", [](const SconeParams& p) {
        return "Params(psi=" + std::to_string(p.psi) + ", k=" + std::to_string(p.k) +
               ", t=" + std::to_string(p.t) + ", seed=" + std::to_string(p.seed) +
               ", variant='" + std::string(variant_name(p.variant)) + "')";
      });

  py::class_<EnsembleModel>(m, "Model")
      .def_readonly("params", &EnsembleModel::params)
      .def_property_readonly("sample_indices",
                             [](const EnsembleModel& model) {
                               std::vector<std::vector<std::size_t>> out;
                               for (const auto& s : model.members) out.push_back(s.indices);
                               return out;
                             })
      .def_property_readonly("radii",
                             [](const EnsembleModel& model) {
                               std::vector<std::vector<std::vector<double>>> out;
                               for (const auto& s : model.members) out.push_back(s.radii);
                               return out;
                             })
      .def("save", [](const EnsembleModel& model, const std::filesystem::path& path) {
        save_model(path, model);
      })
      .def_static("load", &load_model, py::arg("path"))
      .def("__eq__", [](const EnsembleModel& a, const EnsembleModel& b) { return a == b; });

  m.def("fit",
        [](const MultiViewDataset& data, const SconeParams& params, std::size_t threads) {
          py::gil_scoped_release release;
          return fit(data, params, ExecutionOptions{threads});
        },
        py::arg("dataset"), py::arg("params") = SconeParams{}, py::arg("threads") = 0,
        "Draw the ensemble of subsamples and precompute their radii.");

  m.def("score",
        [](const EnsembleModel& model, const MultiViewDataset& data, std::size_t threads) {
          ScoreVector scores;
          {
            py::gil_scoped_release release;
            scores = score_dataset(model, data, ExecutionOptions{threads});
          }
          return vector_to_array(scores.consistency);
        },
        py::arg("model"), py::arg("dataset"), py::arg("threads") = 0,
        "Consistency score per instance; low values indicate anomalies.");

  m.def("naive_score",
        [](const EnsembleModel& model, const MultiViewDataset& data) {
          check_fingerprint(model, data);
          return vector_to_array(naive_score(data, model.members, model.params).consistency);
        },
        py::arg("model"), py::arg("dataset"));

  m.def("anomaly_scores",
        [](const Array& consistency) {
          return vector_to_array(anomaly_scores(
              ScoreVector{std::vector<double>(consistency.data(),
                                              consistency.data() + consistency.size())}));
        },
        py::arg("consistency"));

  m.def("co_membership_similarity", &co_membership_similarity, py::arg("model"),
        py::arg("dataset"), py::arg("a"), py::arg("b"));

  m.def("consistent_neighbors", &consistent_neighbors, py::arg("dataset"),
        py::arg("instance"), py::arg("k"));

  m.def("proportion_consistent",
        [](const MultiViewDataset& data, const EnsembleModel& model, std::size_t k_oracle,
           const std::vector<std::size_t>& selected, std::size_t k_repr) {
          const auto r = proportion_consistent(data, model, k_oracle, selected, k_repr);
          return py::make_tuple(r.percentage, r.evaluated, r.skipped);
        },
        py::arg("dataset"), py::arg("model"), py::arg("k_oracle"), py::arg("selected"),
        py::arg("k_repr"), "Returns (percentage, evaluated, skipped).");

  m.def("auc",
        [](const Array& scores, const py::array_t<bool, py::array::forcecast>& is_anomaly) {
          return auc(span_of(scores), mask_from(is_anomaly));
        },
        py::arg("anomaly_scores"), py::arg("is_anomaly"));

  m.def("per_type_auc",
        [](const Array& scores, const py::array_t<int, py::array::forcecast>& labels) {
          py::dict out;
          for (const auto& [label, value] : per_type_auc(span_of(scores), labels_from(labels))) {
            out[py::str(std::string(label_name(label)))] = value;
          }
          return out;
        },
        py::arg("anomaly_scores"), py::arg("labels"));

  m.def("make_anomaly_benchmark",
        [](const std::string& mode, std::uint64_t seed, std::size_t instances,
           std::size_t views) {
          const auto data = make_anomaly_benchmark(mode_from(mode), seed, instances,
                                                   AnomalyPlan{}, views);
          return py::make_tuple(data.dataset, labels_to_array(data.labels));
        },
        py::arg("mode") = "varied", py::arg("seed") = 0, py::arg("instances") = 1000,
        py::arg("views") = 2, "Returns (dataset, labels) with 30 injected anomalies.");

  m.def("split_views",
        [](const Array& matrix, std::size_t view_count, std::uint64_t seed) {
          return split_views(to_matrix(matrix), view_count, seed);
        },
        py::arg("matrix"), py::arg("view_count"), py::arg("seed") = 0);

  m.def("load_manifest",
        [](const std::filesystem::path& path) {
          auto loaded = load_manifest(path);
          py::object labels = py::none();
          if (loaded.labels) labels = labels_to_array(*loaded.labels);
          return py::make_tuple(loaded.name, std::move(loaded.dataset), labels);
        },
        py::arg("path"), "Returns (name, dataset, labels or None).");

  m.def("save_dataset",
        [](const std::filesystem::path& directory, const std::string& name,
           const MultiViewDataset& data, const py::object& labels) {
          if (labels.is_none()) return save_dataset(directory, name, data, nullptr);
          const LabelVector codes = labels_from(labels.cast<py::array_t<int>>());
          return save_dataset(directory, name, data, &codes);
        },
        py::arg("directory"), py::arg("name"), py::arg("dataset"),
        py::arg("labels") = py::none());
}
