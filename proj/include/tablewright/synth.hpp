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

#ifndef TABLEWRIGHT_SYNTH_HPP_
#define TABLEWRIGHT_SYNTH_HPP_

#include <cstdint>
#include <vector>

#include "tablewright/model_spec.hpp"
#include "tablewright/presets.hpp"
#include "tablewright/reference.hpp"

namespace tablewright {

// Shape of a randomly generated model. Generation is deterministic for a
// given seed on a given standard library.
struct SynthOptions {
  Family family = Family::kDt;
  int n_features = 2;
  int bit_width = 8;
  int n_classes = 2;  // out_dim for pca/ae
  int depth = 4;
  int n_trees = 6;
  int max_leaf = 1000;
  int n_instances = 128;
  int knn_points = 32;
  int knn_k = 5;
  std::vector<int> hidden{16};
};

SynthOptions synth_options(Family family, Preset preset, int n_features, int bit_width);
ModelSpec synth_model(const SynthOptions& opts, std::uint64_t seed);

// Uniform random feature vectors over the schema domain.
std::vector<FeatureVector> synth_inputs(const FeatureSchema& schema, std::size_t count, std::uint64_t seed);

struct LabelledRows {
  std::vector<FeatureVector> rows;
  std::vector<Label> labels;
};

// Isotropic Gaussian clusters clamped to the domain. Class c is centred at
// `centres[c]` with standard deviation `sigma`; classes are drawn uniformly.
LabelledRows gaussian_rows(const FeatureSchema& schema, const std::vector<std::vector<double>>& centres,
                           double sigma, std::size_t count, std::uint64_t seed);

FeatureSchema uniform_schema(int n_features, int bit_width);

// Closed-form fits used to build realistic lookup-based models from data.
ModelSpec fit_nb(const FeatureSchema& schema, const LabelledRows& data, int n_classes);
// Lloyd iterations started from the per-class means.
ModelSpec fit_kmeans(const FeatureSchema& schema, const LabelledRows& data, int n_classes);
// One-vs-one linear discriminants (pooled covariance per pair).
ModelSpec fit_linear_svm(const FeatureSchema& schema, const LabelledRows& data, int n_classes);

}  // namespace tablewright

#endif  // TABLEWRIGHT_SYNTH_HPP_
