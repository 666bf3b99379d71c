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

#ifndef TABLEWRIGHT_DATASET_HPP_
#define TABLEWRIGHT_DATASET_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tablewright/model_spec.hpp"
#include "tablewright/reference.hpp"

namespace tablewright {

// CSV rows bound to a feature schema. The header names every schema feature
// (any order) and optionally a "label" column; cells are unsigned decimals.
struct Dataset {
  std::vector<FeatureVector> rows;
  std::vector<Label> labels;  // parallel to rows when has_labels
  bool has_labels = false;
};

// Throws ValidationError naming the offending column or row.
Dataset parse_dataset_csv(std::string_view text, const FeatureSchema& schema);
Dataset read_dataset_csv(const std::string& path, const FeatureSchema& schema);

std::string format_dataset_csv(const FeatureSchema& schema, const std::vector<FeatureVector>& rows,
                               const std::vector<Label>& labels = {});

}  // namespace tablewright

#endif  // TABLEWRIGHT_DATASET_HPP_
