# Copyright 2026 The SCoNE Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Multi-view anomaly detection with consistent spherical neighborhoods."""

from ._core import (
    Dataset,
    Model,
    Params,
    SconeError,
    anomaly_scores,
    auc,
    co_membership_similarity,
    consistent_neighbors,
    fit,
    load_manifest,
    make_anomaly_benchmark,
    naive_score,
    per_type_auc,
    proportion_consistent,
    save_dataset,
    score,
    split_views,
)

__all__ = [
    "Dataset",
    "Model",
    "Params",
    "SconeError",
    "anomaly_scores",
    "auc",
    "co_membership_similarity",
    "consistent_neighbors",
    "fit",
    "fit_score",
    "load_manifest",
    "make_anomaly_benchmark",
    "naive_score",
    "per_type_auc",
    "proportion_consistent",
    "save_dataset",
    "score",
    "split_views",
]


def fit_score(views, params=None, threads=0):
    """Fits on ``views`` (a Dataset or list of 2-D arrays) and returns anomaly scores."""
    dataset = views if isinstance(views, Dataset) else Dataset(list(views))
    model = fit(dataset, params if params is not None else Params(), threads)
    return anomaly_scores(score(model, dataset, threads))
