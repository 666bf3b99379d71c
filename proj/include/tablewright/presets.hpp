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

#ifndef TABLEWRIGHT_PRESETS_HPP_
#define TABLEWRIGHT_PRESETS_HPP_

#include <string_view>

#include "tablewright/mapping.hpp"
#include "tablewright/model_spec.hpp"

namespace tablewright {

// Named model-size profiles. 0 in a bit or depth field means full precision
// or full resolution.
enum class Preset { kS, kM, kL, kH };

struct PresetParams {
  int action_bits = 8;       // svm, nb, km lb, pca, ae
  int tree_depth = 4;        // dt, rf, xgb
  int n_trees = 6;           // rf, xgb
  int max_leaf = 1000;
  int if_trees = 3;
  int if_instances = 128;
  int quadtree_depth = 2;    // km eb, knn
  int knn_neighbors = 5;
  int nn_hidden = 16;        // bnn hidden layer width
};

Preset preset_from_name(std::string_view name);
std::string_view preset_name(Preset p);
PresetParams preset_params(Preset p);

// Sets n_bits and max_depth for `family` from the preset.
void apply_preset(ConvertConfig& cfg, Family family, Preset preset);

}  // namespace tablewright

#endif  // TABLEWRIGHT_PRESETS_HPP_
