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

#include "tablewright/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "tablewright/error.hpp"

namespace tablewright {

namespace {

void require_same_size(std::size_t a, std::size_t b) {
  if (a != b) throw ValidationError("metric inputs differ in length");
}

}  // namespace

double accuracy(const std::vector<Label>& predicted, const std::vector<Label>& truth) {
  require_same_size(predicted.size(), truth.size());
  if (truth.empty()) return 1.0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) hits += predicted[i] == truth[i] ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(truth.size());
}

double relative_accuracy(double switch_accuracy, double reference_accuracy) {
  if (reference_accuracy == 0.0) return switch_accuracy == 0.0 ? 1.0 : 0.0;
  return switch_accuracy / reference_accuracy;
}

ConfusionMatrix confusion_matrix(const std::vector<Label>& predicted, const std::vector<Label>& truth,
                                 int n_classes) {
  require_same_size(predicted.size(), truth.size());
  std::size_t k = static_cast<std::size_t>(std::max(n_classes, 1));
  for (std::size_t i = 0; i < truth.size(); ++i) k = std::max({k, std::size_t{truth[i]} + 1, std::size_t{predicted[i]} + 1});
  ConfusionMatrix m(k, std::vector<std::size_t>(k, 0));
  for (std::size_t i = 0; i < truth.size(); ++i) ++m[truth[i]][predicted[i]];
  return m;
}

double macro_f1(const std::vector<Label>& predicted, const std::vector<Label>& truth, int n_classes) {
  const ConfusionMatrix m = confusion_matrix(predicted, truth, n_classes);
  double total = 0.0;
  int present = 0;
  for (std::size_t c = 0; c < m.size(); ++c) {
    std::size_t tp = m[c][c], fn = 0, fp = 0;
    for (std::size_t o = 0; o < m.size(); ++o) {
      if (o == c) continue;
      fn += m[c][o];
      fp += m[o][c];
    }
    if (tp + fn + fp == 0) continue;
    ++present;
    total += 2.0 * static_cast<double>(tp) / static_cast<double>(2 * tp + fn + fp);
  }
  return present == 0 ? 1.0 : total / present;
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  require_same_size(a.size(), b.size());
  if (a.empty()) return 1.0;
  const double n = static_cast<double>(a.size());
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (saa == 0.0 && sbb == 0.0) return a == b ? 1.0 : 0.0;
  if (saa == 0.0 || sbb == 0.0) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

}  // namespace tablewright
