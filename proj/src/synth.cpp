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

#include "tablewright/synth.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "tablewright/error.hpp"

namespace tablewright {

namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

std::uint64_t uniform_int(Rng& rng, std::uint64_t lo, std::uint64_t hi) {
  return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
}

double normal(Rng& rng, double mean, double sd) { return std::normal_distribution<double>(mean, sd)(rng); }

// Random axis-aligned tree. Every node draws from its own generator, seeded by
// the tree seed and the node's position, so the same seed at a larger depth
// grows the shallower tree further instead of drawing a different one.
// `leaf` fills a fresh leaf given its depth and the node's generator.
Tree random_tree(const FeatureSchema& schema, int depth, int max_leaf, Rng& rng,
                 const std::function<void(TreeNode&, int, Rng&)>& leaf) {
  Tree tree;
  const std::uint64_t tree_seed = rng();
  std::vector<std::pair<std::uint64_t, std::uint64_t>> box;
  for (std::size_t f = 0; f < schema.size(); ++f) box.emplace_back(0, schema.max_value(f));
  int leaves = 1;
  // `path` is the heap position: root 1, children 2p and 2p+1 (wraps past depth 63).
  std::function<int(int, std::uint64_t)> grow = [&](int d, std::uint64_t path) -> int {
    const int id = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();
    std::seed_seq seq{tree_seed & 0xffffffffu, tree_seed >> 32, path & 0xffffffffu, path >> 32};
    Rng node_rng(seq);
    std::vector<std::size_t> splittable;
    for (std::size_t f = 0; f < box.size(); ++f)
      if (box[f].first < box[f].second) splittable.push_back(f);
    const bool keep_going = d == 0 || uniform(node_rng, 0, 1) < 0.85;
    const bool split = d < depth && !splittable.empty() && leaves < max_leaf && keep_going;
    if (!split) {
      leaf(tree.nodes[id], d, node_rng);
      return id;
    }
    ++leaves;
    const std::size_t f = splittable[uniform_int(node_rng, 0, splittable.size() - 1)];
    const auto saved = box[f];
    const std::uint64_t t = uniform_int(node_rng, saved.first, saved.second - 1);
    tree.nodes[id].feature = static_cast<int>(f);
    tree.nodes[id].threshold = t;
    box[f] = {saved.first, t};
    const int left = grow(d + 1, 2 * path);
    box[f] = {t + 1, saved.second};
    const int right = grow(d + 1, 2 * path + 1);
    box[f] = saved;
    tree.nodes[id].left = left;
    tree.nodes[id].right = right;
    return id;
  };
  grow(0, 1);
  return tree;
}

std::vector<double> random_point(const FeatureSchema& schema, Rng& rng) {
  std::vector<double> p;
  for (std::size_t f = 0; f < schema.size(); ++f) p.push_back(uniform(rng, 0.0, static_cast<double>(schema.max_value(f))));
  return p;
}

void normalise_priors(std::vector<double>& priors) {
  double sum = 0.0;
  for (double p : priors) sum += p;
  double acc = 0.0;
  for (std::size_t c = 0; c + 1 < priors.size(); ++c) {
    priors[c] /= sum;
    acc += priors[c];
  }
  priors.back() = 1.0 - acc;
}

// Solves A x = b for small dense systems by partial pivoting.
std::vector<double> solve(std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    if (a[col][col] == 0.0) continue;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double factor = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
      b[r] -= factor * b[col];
    }
  }
  std::vector<double> x(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) x[i] = a[i][i] == 0.0 ? 0.0 : b[i] / a[i][i];
  return x;
}

std::vector<std::vector<double>> class_means(const LabelledRows& data, int n_classes, std::size_t n,
                                             std::vector<std::size_t>& counts) {
  std::vector<std::vector<double>> means(static_cast<std::size_t>(n_classes), std::vector<double>(n, 0.0));
  counts.assign(static_cast<std::size_t>(n_classes), 0);
  for (std::size_t i = 0; i < data.rows.size(); ++i) {
    const Label c = data.labels[i];
    if (c >= static_cast<Label>(n_classes)) throw ValidationError("label " + std::to_string(c) + " out of range");
    ++counts[c];
    for (std::size_t f = 0; f < n; ++f) means[c][f] += static_cast<double>(data.rows[i][f]);
  }
  for (std::size_t c = 0; c < means.size(); ++c)
    for (double& m : means[c]) m = counts[c] ? m / static_cast<double>(counts[c]) : 0.0;
  return means;
}

}  // namespace

FeatureSchema uniform_schema(int n_features, int bit_width) {
  FeatureSchema schema;
  for (int f = 0; f < n_features; ++f) schema.features.push_back({"f" + std::to_string(f), bit_width});
  return schema;
}

SynthOptions synth_options(Family family, Preset preset, int n_features, int bit_width) {
  const PresetParams p = preset_params(preset);
  SynthOptions o;
  o.family = family;
  o.n_features = n_features;
  o.bit_width = bit_width;
  o.depth = p.tree_depth;
  o.n_trees = family == Family::kIForest ? p.if_trees : p.n_trees;
  o.max_leaf = p.max_leaf;
  o.n_instances = p.if_instances;
  o.knn_k = p.knn_neighbors;
  o.hidden = {p.nn_hidden};
  if (family == Family::kDt) o.n_trees = 1;
  return o;
}

ModelSpec synth_model(const SynthOptions& o, std::uint64_t seed) {
  if (o.n_features < 1 || o.bit_width < 1 || o.bit_width > 32)
    throw ValidationError("synth: need at least one feature of 1..32 bits");
  Rng rng(seed);
  ModelSpec spec;
  spec.family = o.family;
  spec.schema = uniform_schema(o.n_features, o.bit_width);
  spec.n_classes = std::max(o.n_classes, 1);
  const int k = spec.n_classes;
  const std::size_t n = spec.schema.size();
  switch (o.family) {
    case Family::kDt:
    case Family::kRf: {
      TreeParams tp;
      const int trees = o.family == Family::kDt ? 1 : std::max(o.n_trees, 1);
      for (int t = 0; t < trees; ++t)
        tp.trees.push_back(random_tree(spec.schema, o.depth, o.max_leaf, rng, [&](TreeNode& leaf, int, Rng& r) {
          leaf.label = static_cast<int>(uniform_int(r, 0, static_cast<std::uint64_t>(k - 1)));
        }));
      spec.params = std::move(tp);
      break;
    }
    case Family::kXgb: {
      TreeParams tp;
      tp.base_score = normal(rng, 0.0, 0.1);
      for (int t = 0; t < std::max(o.n_trees, 1); ++t) {
        tp.trees.push_back(random_tree(spec.schema, o.depth, o.max_leaf, rng,
                                       [&](TreeNode& leaf, int, Rng& r) { leaf.value = normal(r, 0.0, 0.5); }));
        tp.trees.back().target_class = k > 2 ? t % k : 0;
      }
      spec.params = std::move(tp);
      break;
    }
    case Family::kIForest: {
      spec.n_classes = 2;
      TreeParams tp;
      tp.iforest.n_instances = std::max(o.n_instances, 2);
      for (int t = 0; t < std::max(o.n_trees, 1); ++t)
        tp.trees.push_back(random_tree(spec.schema, o.depth, o.max_leaf, rng, [&](TreeNode& leaf, int d, Rng& r) {
          const double size = static_cast<double>(uniform_int(r, 1, std::max<std::uint64_t>(2, tp.iforest.n_instances >> d)));
          leaf.value = d + average_path_length(size, tp.iforest.gamma);
        }));
      spec.params = std::move(tp);
      break;
    }
    case Family::kKMeans: {
      KMeansParams km;
      for (int c = 0; c < k; ++c) km.centroids.push_back(random_point(spec.schema, rng));
      spec.params = std::move(km);
      break;
    }
    case Family::kKnn: {
      KnnParams knn;
      std::vector<std::vector<double>> centres;
      for (int c = 0; c < k; ++c) centres.push_back(random_point(spec.schema, rng));
      const int points = std::max(o.knn_points, 1);
      for (int i = 0; i < points; ++i) {
        FeatureVector x;
        for (std::size_t f = 0; f < n; ++f) x.push_back(uniform_int(rng, 0, spec.schema.max_value(f)));
        int best = 0;
        double best_d = 0.0;
        for (int c = 0; c < k; ++c) {
          double d = 0.0;
          for (std::size_t f = 0; f < n; ++f) d += std::pow(static_cast<double>(x[f]) - centres[c][f], 2);
          if (c == 0 || d < best_d) {
            best = c;
            best_d = d;
          }
        }
        knn.points.push_back(std::move(x));
        knn.labels.push_back(best);
      }
      knn.k = std::clamp(o.knn_k, 1, points);
      spec.params = std::move(knn);
      break;
    }
    case Family::kSvm: {
      SvmParams svm;
      for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b) {
          Hyperplane h;
          h.class_a = a;
          h.class_b = b;
          const std::vector<double> centre = random_point(spec.schema, rng);
          double bias = 0.0;
          for (std::size_t f = 0; f < n; ++f) {
            h.w.push_back(normal(rng, 0.0, 1.0));
            bias -= h.w.back() * centre[f];
          }
          h.b = bias;
          svm.hyperplanes.push_back(std::move(h));
        }
      spec.params = std::move(svm);
      break;
    }
    case Family::kNb: {
      NbParams nb;
      for (int c = 0; c < k; ++c) {
        nb.priors.push_back(uniform(rng, 0.5, 1.5));
        nb.means.push_back(random_point(spec.schema, rng));
        std::vector<double> var;
        for (std::size_t f = 0; f < n; ++f) {
          const double sd = static_cast<double>(spec.schema.max_value(f) + 1) / 6.0 * uniform(rng, 0.5, 1.5);
          var.push_back(std::max(sd * sd, 0.25));
        }
        nb.variances.push_back(std::move(var));
      }
      normalise_priors(nb.priors);
      spec.params = std::move(nb);
      break;
    }
    case Family::kPca: {
      PcaParams pca;
      for (std::size_t f = 0; f < n; ++f) {
        pca.means.push_back(static_cast<double>(spec.schema.max_value(f)) / 2.0 + normal(rng, 0.0, 4.0));
        std::vector<double> row;
        for (int j = 0; j < k; ++j) row.push_back(normal(rng, 0.0, 1.0 / std::sqrt(static_cast<double>(n))));
        pca.components.push_back(std::move(row));
      }
      spec.params = std::move(pca);
      break;
    }
    case Family::kAe: {
      AeParams ae;
      for (std::size_t f = 0; f < n; ++f) {
        std::vector<double> row;
        for (int j = 0; j < k; ++j) row.push_back(normal(rng, 0.0, 1.0 / static_cast<double>(n)));
        ae.weights.push_back(std::move(row));
      }
      for (int j = 0; j < k; ++j) ae.bias.push_back(normal(rng, 0.0, 1.0));
      spec.params = std::move(ae);
      break;
    }
    case Family::kBnn: {
      BnnParams bnn;
      std::vector<int> widths{spec.schema.total_width()};
      for (int h : o.hidden) widths.push_back(std::max(h, 1));
      widths.push_back(k);
      for (std::size_t l = 0; l + 1 < widths.size(); ++l) {
        BnnLayer layer;
        layer.in_width = widths[l];
        for (int j = 0; j < widths[l + 1]; ++j) {
          std::vector<bool> row;
          for (int b = 0; b < widths[l]; ++b) row.push_back(uniform_int(rng, 0, 1) == 1);
          layer.rows.push_back(std::move(row));
        }
        bnn.layers.push_back(std::move(layer));
      }
      spec.params = std::move(bnn);
      break;
    }
  }
  validate(spec);
  return spec;
}

std::vector<FeatureVector> synth_inputs(const FeatureSchema& schema, std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<FeatureVector> rows(count);
  for (FeatureVector& x : rows)
    for (std::size_t f = 0; f < schema.size(); ++f) x.push_back(uniform_int(rng, 0, schema.max_value(f)));
  return rows;
}

LabelledRows gaussian_rows(const FeatureSchema& schema, const std::vector<std::vector<double>>& centres,
                           double sigma, std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  LabelledRows out;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t c = uniform_int(rng, 0, centres.size() - 1);
    FeatureVector x;
    for (std::size_t f = 0; f < schema.size(); ++f) {
      const double v = std::round(normal(rng, centres[c][f], sigma));
      x.push_back(static_cast<std::uint64_t>(std::clamp(v, 0.0, static_cast<double>(schema.max_value(f)))));
    }
    out.rows.push_back(std::move(x));
    out.labels.push_back(static_cast<Label>(c));
  }
  return out;
}

ModelSpec fit_nb(const FeatureSchema& schema, const LabelledRows& data, int n_classes) {
  const std::size_t n = schema.size();
  std::vector<std::size_t> counts;
  NbParams nb;
  nb.means = class_means(data, n_classes, n, counts);
  nb.variances.assign(static_cast<std::size_t>(n_classes), std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < data.rows.size(); ++i)
    for (std::size_t f = 0; f < n; ++f) {
      const double d = static_cast<double>(data.rows[i][f]) - nb.means[data.labels[i]][f];
      nb.variances[data.labels[i]][f] += d * d;
    }
  for (std::size_t c = 0; c < nb.variances.size(); ++c) {
    for (double& v : nb.variances[c]) v = std::max(counts[c] ? v / static_cast<double>(counts[c]) : 1.0, 0.25);
    nb.priors.push_back(static_cast<double>(counts[c] + 1));
  }
  normalise_priors(nb.priors);
  ModelSpec spec{Family::kNb, schema, n_classes, std::move(nb)};
  validate(spec);
  return spec;
}

ModelSpec fit_kmeans(const FeatureSchema& schema, const LabelledRows& data, int n_classes) {
  const std::size_t n = schema.size();
  std::vector<std::size_t> counts;
  KMeansParams km;
  km.centroids = class_means(data, n_classes, n, counts);
  for (int iter = 0; iter < 50; ++iter) {
    std::vector<std::vector<double>> sums(km.centroids.size(), std::vector<double>(n, 0.0));
    std::vector<std::size_t> sizes(km.centroids.size(), 0);
    for (const FeatureVector& x : data.rows) {
      std::size_t best = 0;
      double best_d = 0.0;
      for (std::size_t c = 0; c < km.centroids.size(); ++c) {
        double d = 0.0;
        for (std::size_t f = 0; f < n; ++f) d += std::pow(static_cast<double>(x[f]) - km.centroids[c][f], 2);
        if (c == 0 || d < best_d) {
          best = c;
          best_d = d;
        }
      }
      ++sizes[best];
      for (std::size_t f = 0; f < n; ++f) sums[best][f] += static_cast<double>(x[f]);
    }
    bool moved = false;
    for (std::size_t c = 0; c < km.centroids.size(); ++c) {
      if (sizes[c] == 0) continue;
      for (std::size_t f = 0; f < n; ++f) {
        const double next = sums[c][f] / static_cast<double>(sizes[c]);
        moved = moved || next != km.centroids[c][f];
        km.centroids[c][f] = next;
      }
    }
    if (!moved) break;
  }
  ModelSpec spec{Family::kKMeans, schema, n_classes, std::move(km)};
  validate(spec);
  return spec;
}

ModelSpec fit_linear_svm(const FeatureSchema& schema, const LabelledRows& data, int n_classes) {
  const std::size_t n = schema.size();
  std::vector<std::size_t> counts;
  const auto means = class_means(data, n_classes, n, counts);
  SvmParams svm;
  for (int a = 0; a < n_classes; ++a)
    for (int b = a + 1; b < n_classes; ++b) {
      std::vector<std::vector<double>> cov(n, std::vector<double>(n, 0.0));
      std::size_t total = 0;
      for (std::size_t i = 0; i < data.rows.size(); ++i) {
        const Label c = data.labels[i];
        if (c != static_cast<Label>(a) && c != static_cast<Label>(b)) continue;
        ++total;
        for (std::size_t p = 0; p < n; ++p)
          for (std::size_t q = 0; q < n; ++q)
            cov[p][q] += (static_cast<double>(data.rows[i][p]) - means[c][p]) *
                         (static_cast<double>(data.rows[i][q]) - means[c][q]);
      }
      for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = 0; q < n; ++q) cov[p][q] /= static_cast<double>(std::max<std::size_t>(total, 1));
        cov[p][p] += 1e-6;
      }
      std::vector<double> diff(n);
      for (std::size_t f = 0; f < n; ++f) diff[f] = means[a][f] - means[b][f];
      Hyperplane h;
      h.class_a = a;
      h.class_b = b;
      h.w = solve(cov, diff);
      for (std::size_t f = 0; f < n; ++f) h.b -= h.w[f] * (means[a][f] + means[b][f]) / 2.0;
      svm.hyperplanes.push_back(std::move(h));
    }
  ModelSpec spec{Family::kSvm, schema, n_classes, std::move(svm)};
  validate(spec);
  return spec;
}

}  // namespace tablewright
