// Copyright 2026 The Tablewright Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TABLEWRIGHT_REFERENCE_HPP_
#define TABLEWRIGHT_REFERENCE_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "tablewright/model_spec.hpp"

namespace tablewright {

using Label = std::uint32_t;

// Floating-point forward pass of a classifier family. Every argmax/argmin tie
// resolves to the lowest index.
Label reference_predict(const ModelSpec& spec, const FeatureVector& x);

// Forward pass of pca (centre then project) or ae (single encoder layer).
std::vector<double> reference_transform(const ModelSpec& spec, const FeatureVector& x);

// Helpers shared by the mapping layer and tests.

// Index of the leaf reached by `x` in `tree`.
int tree_leaf(const Tree& tree, const FeatureVector& x);

// Leaf label from a plurality of per-tree votes.
Label majority_label(const std::vector<int>& votes, int n_classes);

// Margins accumulated from one leaf per tree (binary xgb has one margin).
std::vector<double> xgb_margins(const ModelSpec& spec, std::span<const int> leaves);
// Binary: class 1 iff margin > 0 (probability strictly above 0.5).
Label xgb_label(const std::vector<double>& margins);

double iforest_mean_path_length(const ModelSpec& spec, std::span<const int> leaves);
// Anomaly (1) iff mean path length <= threshold.
Label iforest_label(double mean_path_length, double threshold);

}  // namespace tablewright

#endif  // TABLEWRIGHT_REFERENCE_HPP_
