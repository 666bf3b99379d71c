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

#ifndef TABLEWRIGHT_METRICS_HPP_
#define TABLEWRIGHT_METRICS_HPP_

#include <cstddef>
#include <vector>

#include "tablewright/reference.hpp"

namespace tablewright {

using ConfusionMatrix = std::vector<std::vector<std::size_t>>;  // [truth][prediction]

// Fraction of positions where the two label vectors agree; 1 for empty input.
double accuracy(const std::vector<Label>& predicted, const std::vector<Label>& truth);

// Switch accuracy over reference accuracy. 1 when both are 0.
double relative_accuracy(double switch_accuracy, double reference_accuracy);

ConfusionMatrix confusion_matrix(const std::vector<Label>& predicted, const std::vector<Label>& truth,
                                 int n_classes);

// Unweighted mean of per-class F1 over classes present in either vector.
double macro_f1(const std::vector<Label>& predicted, const std::vector<Label>& truth, int n_classes);

// Pearson correlation. Two constant series correlate 1 when equal, else 0;
// one constant series correlates 0.
double pearson(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace tablewright

#endif  // TABLEWRIGHT_METRICS_HPP_
