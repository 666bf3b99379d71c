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


#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "tablewright/reference.hpp"
#include "test_util.hpp"

namespace tablewright {
namespace {

using testing::fixture;

TEST(Reference, SingleSplitTree) {
  ModelSpec spec = fixture("dt_single_split.json");
  EXPECT_EQ(reference_predict(spec, {3}), 0u);
  EXPECT_EQ(reference_predict(spec, {4}), 0u);
  EXPECT_EQ(reference_predict(spec, {5}), 1u);
}

TEST(Reference, SvmZeroGoesToLowerClass) {
  ModelSpec spec = fixture("svm_tie.json");
  EXPECT_EQ(reference_predict(spec, {5, 5}), 0u);
  EXPECT_EQ(reference_predict(spec, {6, 5}), 0u);  // w.x = 1 votes for class 0
  EXPECT_EQ(reference_predict(spec, {5, 6}), 1u);
}

TEST(Reference, SvmThreeClassVotes) {
  ModelSpec spec = fixture("svm_three_class.json");
  // Low f0, low f1: class 0 wins both of its pairs.
  EXPECT_EQ(reference_predict(spec, {1, 1}), 0u);
  EXPECT_EQ(reference_predict(spec, {12, 2}), 1u);
  EXPECT_EQ(reference_predict(spec, {2, 12}), 2u);
}

TEST(Reference, IForestThreshold) {
  ModelSpec spec = fixture("iforest_small.json");
  const double t = 128.0;
  const double expected = 2.0 * (std::log(t - 1.0) + 0.5772156649) - 2.0 * (t - 1.0) / t;
  EXPECT_NEAR(spec.trees().iforest.threshold(), expected, 1e-12);
  EXPECT_EQ(iforest_label(2.0, expected), 1u);
  EXPECT_EQ(iforest_label(expected, expected), 1u);
  EXPECT_EQ(iforest_label(expected + 1e-9, expected), 0u);
}

TEST(Reference, IForestMeanPathLength) {
  ModelSpec spec = fixture("iforest_small.json");
  // x = (0, 0): path lengths 1, 1 and 1 + c(100) -> mean below the threshold.
  EXPECT_EQ(reference_predict(spec, {0, 0}), 1u);
  // x = (8, 8): 2 + c(40), 1 + c(120), 1 + c(100).
  EXPECT_EQ(reference_predict(spec, {8, 8}), 0u);
}

TEST(Reference, XgbMarginSign) {
  ModelSpec spec = fixture("xgb_two_trees.json");
  EXPECT_EQ(reference_predict(spec, {0, 0}), 1u);  // 1.5
  EXPECT_EQ(reference_predict(spec, {0, 7}), 1u);  // 0.5
  EXPECT_EQ(reference_predict(spec, {7, 0}), 0u);  // -0.5
  EXPECT_EQ(reference_predict(spec, {7, 7}), 0u);  // -1.5
  EXPECT_EQ(xgb_label({0.0}), 0u);
  EXPECT_EQ(xgb_label({1e-12}), 1u);
  EXPECT_EQ(xgb_label({0.2, 0.7, 0.7}), 1u);
}

TEST(Reference, MajorityTieBreaksLow) {
  EXPECT_EQ(majority_label({1, 0}, 2), 0u);
  EXPECT_EQ(majority_label({2, 1, 2, 1}, 3), 1u);
  EXPECT_EQ(majority_label({2, 2, 0}, 3), 2u);
}

TEST(Reference, PcaAndAe) {
  ModelSpec pca = fixture("pca_two_to_one.json");
  EXPECT_EQ(reference_transform(pca, {3, 4}), std::vector<double>{7.0});
  ModelSpec ae = fixture("ae_scalar.json");
  EXPECT_EQ(reference_transform(ae, {3}), std::vector<double>{7.0});
}

TEST(Reference, PcaAtMeansIsZero) {
  ModelSpec spec;
  spec.family = Family::kPca;
  spec.schema.features = {{"a", 4}, {"b", 4}};
  spec.n_classes = 2;
  spec.params = PcaParams{{5.0, 9.0}, {{0.3, -1.0}, {2.0, 0.5}}};
  validate(spec);
  for (double v : reference_transform(spec, {5, 9})) EXPECT_DOUBLE_EQ(v, 0.0);
}

TEST(Reference, AeIdentity) {
  ModelSpec spec;
  spec.family = Family::kAe;
  spec.schema.features = {{"a", 4}, {"b", 4}};
  spec.n_classes = 2;
  spec.params = AeParams{{{1.0, 0.0}, {0.0, 1.0}}, {0.0, 0.0}};
  validate(spec);
  EXPECT_EQ(reference_transform(spec, {11, 2}), (std::vector<double>{11.0, 2.0}));
}

TEST(Reference, KMeansNearestAndTie) {
  ModelSpec spec = fixture("kmeans_three.json");
  EXPECT_EQ(reference_predict(spec, {4, 5}), 0u);
  EXPECT_EQ(reference_predict(spec, {25, 8}), 1u);
  EXPECT_EQ(reference_predict(spec, {15, 27}), 2u);
  ModelSpec sym;
  sym.family = Family::kKMeans;
  sym.schema.features = {{"a", 4}};
  sym.n_classes = 2;
  sym.params = KMeansParams{{{4.0}, {10.0}}};
  validate(sym);
  EXPECT_EQ(reference_predict(sym, {7}), 0u);
}

TEST(Reference, NbPriorsDecideIdenticalConditionals) {
  ModelSpec spec;
  spec.family = Family::kNb;
  spec.schema.features = {{"a", 4}};
  spec.n_classes = 2;
  spec.params = NbParams{{0.3, 0.7}, {{6.0}, {6.0}}, {{4.0}, {4.0}}};
  validate(spec);
  testing::for_each_point(spec.schema, [&](const FeatureVector& x) { EXPECT_EQ(reference_predict(spec, x), 1u); });
}

TEST(Reference, KnnMajority) {
  ModelSpec spec = fixture("knn_clusters.json");
  EXPECT_EQ(reference_predict(spec, {0, 0}), 0u);
  EXPECT_EQ(reference_predict(spec, {15, 15}), 1u);
}

TEST(Reference, BnnXnorPopcount) {
  // One layer, input 1010 against rows 1010 (popcount 4) and 0101 (popcount 0).
  ModelSpec spec;
  spec.family = Family::kBnn;
  spec.schema.features = {{"a", 2}, {"b", 2}};
  spec.n_classes = 2;
  spec.params = BnnParams{{BnnLayer{4, {{true, false, true, false}, {false, true, false, true}}}}};
  validate(spec);
  EXPECT_EQ(reference_predict(spec, {2, 2}), 0u);  // 10 10
  EXPECT_EQ(reference_predict(spec, {1, 1}), 1u);  // 01 01
  EXPECT_EQ(reference_predict(spec, {0, 0}), 0u);  // 2 vs 2, lowest index
}

TEST(Reference, BnnHiddenSign) {
  ModelSpec spec = fixture("bnn_small.json");
  // Oracle computed bit by bit.
  const auto& layers = spec.as<BnnParams>().layers;
  testing::for_each_point(spec.schema, [&](const FeatureVector& x) {
    std::vector<bool> in = {bool(x[0] & 2), bool(x[0] & 1), bool(x[1] & 2), bool(x[1] & 1)};
    for (std::size_t l = 0; l < layers.size(); ++l) {
      std::vector<int> pops;
      for (const auto& row : layers[l].rows) {
        int pop = 0;
        for (std::size_t i = 0; i < row.size(); ++i) pop += row[i] == in[i];
        pops.push_back(pop);
      }
      if (l + 1 == layers.size()) {
        Label best = pops[1] > pops[0] ? 1 : 0;
        EXPECT_EQ(reference_predict(spec, x), best);
      } else {
        in.clear();
        const int w = static_cast<int>(layers[l].rows[0].size());
        for (int p : pops) in.push_back(2 * p >= w);
      }
    }
  });
}

}  // namespace
}  // namespace tablewright
