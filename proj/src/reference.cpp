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

#include "tablewright/reference.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tablewright/error.hpp"

namespace tablewright {

namespace {

template <typename T, typename Better>
std::size_t arg_best(const std::vector<T>& values, Better better) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i)
    if (better(values[i], values[best])) best = i;
  return best;
}

Label predict_trees(const ModelSpec& spec, const FeatureVector& x) {
  const TreeParams& params = spec.trees();
  std::vector<int> leaves;
  for (const Tree& tree : params.trees) leaves.push_back(tree_leaf(tree, x));
  switch (spec.family) {
    case Family::kDt:
      return static_cast<Label>(params.trees[0].nodes[leaves[0]].label);
    case Family::kRf: {
      std::vector<int> votes;
      for (std::size_t t = 0; t < leaves.size(); ++t)
        votes.push_back(params.trees[t].nodes[leaves[t]].label);
      return majority_label(votes, spec.n_classes);
    }
    case Family::kXgb:
      return xgb_label(xgb_margins(spec, leaves));
    default:
      return iforest_label(iforest_mean_path_length(spec, leaves), params.iforest.threshold());
  }
}

double squared_distance(const FeatureVector& x, const std::vector<double>& c) {
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = static_cast<double>(x[i]) - c[i];
    sum += d * d;
  }
  return sum;
}

Label predict_knn(const ModelSpec& spec, const FeatureVector& x) {
  const auto& p = spec.as<KnnParams>();
  std::vector<std::pair<double, std::size_t>> order;
  order.reserve(p.points.size());
  for (std::size_t i = 0; i < p.points.size(); ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double d = static_cast<double>(x[j]) - static_cast<double>(p.points[i][j]);
      sum += d * d;
    }
    order.emplace_back(sum, i);
  }
  // Nearest first; equal distances keep the lower point index.
  std::partial_sort(order.begin(), order.begin() + p.k, order.end());
  std::vector<int> votes;
  for (int i = 0; i < p.k; ++i) votes.push_back(p.labels[order[i].second]);
  return majority_label(votes, spec.n_classes);
}

Label predict_svm(const ModelSpec& spec, const FeatureVector& x) {
  const auto& p = spec.as<SvmParams>();
  std::vector<int> votes(spec.n_classes, 0);
  for (const Hyperplane& h : p.hyperplanes) {
    double s = h.b;
    for (std::size_t i = 0; i < x.size(); ++i) s += h.w[i] * static_cast<double>(x[i]);
    if (s > 0.0)
      ++votes[h.class_a];
    else if (s < 0.0)
      ++votes[h.class_b];
    else
      ++votes[std::min(h.class_a, h.class_b)];
  }
  return static_cast<Label>(arg_best(votes, std::greater<>()));
}

double log2_gaussian(double x, double mean, double variance) {
  const double d = x - mean;
  return (-0.5 * std::log(2.0 * M_PI * variance) - d * d / (2.0 * variance)) / std::log(2.0);
}

Label predict_nb(const ModelSpec& spec, const FeatureVector& x) {
  const auto& p = spec.as<NbParams>();
  std::vector<double> score(spec.n_classes);
  for (int c = 0; c < spec.n_classes; ++c) {
    double s = std::log2(p.priors[c]);
    for (std::size_t i = 0; i < x.size(); ++i)
      s += log2_gaussian(static_cast<double>(x[i]), p.means[c][i], p.variances[c][i]);
    score[c] = s;
  }
  return static_cast<Label>(arg_best(score, std::greater<>()));
}

// Layer input bits, most significant feature bit first.
std::vector<bool> bnn_input_bits(const FeatureSchema& schema, const FeatureVector& x) {
  std::vector<bool> bits;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (int b = schema.width(i) - 1; b >= 0; --b) bits.push_back((x[i] >> b) & 1U);
  return bits;
}

Label predict_bnn(const ModelSpec& spec, const FeatureVector& x) {
  const auto& p = spec.as<BnnParams>();
  std::vector<bool> in = bnn_input_bits(spec.schema, x);
  std::vector<int> counts;
  for (std::size_t l = 0; l < p.layers.size(); ++l) {
    const BnnLayer& layer = p.layers[l];
    counts.clear();
    std::vector<bool> out;
    for (const auto& row : layer.rows) {
      int count = 0;
      for (std::size_t b = 0; b < row.size(); ++b) count += (row[b] == in[b]) ? 1 : 0;
      counts.push_back(count);
      // sign(): 1 when at least half of the products are +1.
      out.push_back(2 * count >= layer.in_width);
    }
    in = std::move(out);
  }
  return static_cast<Label>(arg_best(counts, std::greater<>()));
}

}  // namespace

int tree_leaf(const Tree& tree, const FeatureVector& x) {
  int id = 0;
  while (!tree.nodes[id].is_leaf()) {
    const TreeNode& node = tree.nodes[id];
    id = x[node.feature] <= node.threshold ? node.left : node.right;
  }
  return id;
}

Label majority_label(const std::vector<int>& votes, int n_classes) {
  std::vector<int> counts(n_classes, 0);
  for (int v : votes) ++counts[v];
  return static_cast<Label>(arg_best(counts, std::greater<>()));
}

std::vector<double> xgb_margins(const ModelSpec& spec, std::span<const int> leaves) {
  const TreeParams& params = spec.trees();
  const bool binary = spec.n_classes <= 2;
  std::vector<double> margins(binary ? 1 : spec.n_classes, params.base_score);
  for (std::size_t t = 0; t < params.trees.size(); ++t) {
    const Tree& tree = params.trees[t];
    margins[binary ? 0 : tree.target_class] += tree.nodes[leaves[t]].value;
  }
  return margins;
}

Label xgb_label(const std::vector<double>& margins) {
  if (margins.size() == 1) return margins[0] > 0.0 ? 1 : 0;
  return static_cast<Label>(arg_best(margins, std::greater<>()));
}

double iforest_mean_path_length(const ModelSpec& spec, std::span<const int> leaves) {
  const TreeParams& params = spec.trees();
  double sum = 0.0;
  for (std::size_t t = 0; t < params.trees.size(); ++t) sum += params.trees[t].nodes[leaves[t]].value;
  return sum / static_cast<double>(params.trees.size());
}

Label iforest_label(double mean_path_length, double threshold) {
  return mean_path_length <= threshold ? 1 : 0;
}

Label reference_predict(const ModelSpec& spec, const FeatureVector& x) {
  if (!is_classifier(spec.family))
    throw ValidationError(std::string(family_name(spec.family)) +
                          " is a transform; use reference_transform");
  check_feature_vector(spec.schema, x);
  switch (spec.family) {
    case Family::kDt:
    case Family::kRf:
    case Family::kXgb:
    case Family::kIForest:
      return predict_trees(spec, x);
    case Family::kKMeans: {
      const auto& c = spec.as<KMeansParams>().centroids;
      std::vector<double> d;
      for (const auto& centroid : c) d.push_back(squared_distance(x, centroid));
      return static_cast<Label>(arg_best(d, std::less<>()));
    }
    case Family::kKnn:
      return predict_knn(spec, x);
    case Family::kSvm:
      return predict_svm(spec, x);
    case Family::kNb:
      return predict_nb(spec, x);
    case Family::kBnn:
      return predict_bnn(spec, x);
    default:
      break;
  }
  throw ValidationError("unsupported family");
}

std::vector<double> reference_transform(const ModelSpec& spec, const FeatureVector& x) {
  if (spec.family != Family::kPca && spec.family != Family::kAe)
    throw ValidationError(std::string(family_name(spec.family)) +
                          " is a classifier; use reference_predict");
  check_feature_vector(spec.schema, x);
  std::vector<double> out(spec.n_classes, 0.0);
  if (spec.family == Family::kPca) {
    const auto& p = spec.as<PcaParams>();
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double centred = static_cast<double>(x[i]) - p.means[i];
      for (int j = 0; j < spec.n_classes; ++j) out[j] += centred * p.components[i][j];
    }
  } else {
    const auto& p = spec.as<AeParams>();
    for (int j = 0; j < spec.n_classes; ++j) out[j] = p.bias[j];
    for (std::size_t i = 0; i < x.size(); ++i)
      for (int j = 0; j < spec.n_classes; ++j) out[j] += static_cast<double>(x[i]) * p.weights[i][j];
  }
  return out;
}

}  // namespace tablewright
