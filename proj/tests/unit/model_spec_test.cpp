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
#include <string>

#include "tablewright/error.hpp"
#include "tablewright/model_spec.hpp"
#include "test_util.hpp"

namespace tablewright {
namespace {

using testing::fixture;
using testing::fixture_path;

std::string error_of(const std::string& text) {
  try {
    validate(parse_model_spec(text));
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

TEST(ModelSpec, MinimalTree) {
  ModelSpec spec = fixture("dt_single_split.json");
  EXPECT_EQ(spec.family, Family::kDt);
  ASSERT_EQ(spec.schema.size(), 1u);
  EXPECT_EQ(spec.schema.width(0), 3);
  EXPECT_EQ(spec.trees().trees.size(), 1u);
  EXPECT_EQ(spec.trees().trees[0].depth(), 1);
}

TEST(ModelSpec, SvmHyperplaneCount) {
  try {
    fixture("svm_bad_count.json");
    FAIL() << "expected a validation error";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("expected m=3 hyperplanes"), std::string::npos) << e.what();
    EXPECT_EQ(e.exit_code(), 2);
  }
}

TEST(ModelSpec, ZeroVarianceRejected) {
  EXPECT_THROW(fixture("nb_zero_variance.json"), ValidationError);
}

TEST(ModelSpec, MissingFileIsIoError) {
  try {
    load_model_spec(fixture_path("does_not_exist.json"));
    FAIL();
  } catch (const IoError& e) {
    EXPECT_EQ(e.exit_code(), 3);
  }
}

TEST(ModelSpec, RoundTripEveryFixture) {
  for (const char* name : {"dt_single_split.json", "rf_two_trees.json", "xgb_two_trees.json",
                           "iforest_small.json", "kmeans_three.json", "knn_clusters.json",
                           "svm_tie.json", "svm_three_class.json", "nb_two_class.json",
                           "pca_two_to_one.json", "ae_scalar.json", "bnn_small.json"}) {
    SCOPED_TRACE(name);
    ModelSpec spec = fixture(name);
    ModelSpec again = parse_model_spec(serialize_model_spec(spec));
    EXPECT_EQ(spec, again);
  }
}

TEST(ModelSpec, RejectsMalformedDocuments) {
  EXPECT_NE(error_of("not json").find("JSON"), std::string::npos);
  EXPECT_NE(error_of(R"({"schema_version":2,"family":"dt","features":[],"n_classes":2,"params":{}})")
                .find("schema_version"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"family":"tree","features":[{"name":"x","bit_width":3}],"n_classes":2,"params":{}})")
                .find("unknown model family"),
            std::string::npos);
  // Threshold outside the 3-bit domain.
  EXPECT_FALSE(error_of(R"({"family":"dt","features":[{"name":"x","bit_width":3}],"n_classes":2,
      "params":{"tree":{"nodes":[{"feature":0,"threshold":9,"left":1,"right":2},{"label":0},{"label":1}]}}})")
                   .empty());
  // Leaf label out of range.
  EXPECT_FALSE(error_of(R"({"family":"dt","features":[{"name":"x","bit_width":3}],"n_classes":2,
      "params":{"tree":{"nodes":[{"feature":0,"threshold":1,"left":1,"right":2},{"label":0},{"label":5}]}}})")
                   .empty());
  // Child index loops back to the root.
  EXPECT_FALSE(error_of(R"({"family":"dt","features":[{"name":"x","bit_width":3}],"n_classes":2,
      "params":{"tree":{"nodes":[{"feature":0,"threshold":1,"left":0,"right":1},{"label":0}]}}})")
                   .empty());
  EXPECT_NE(error_of(R"({"family":"dt","features":[{"name":"x","bit_width":3},{"name":"x","bit_width":2}],
      "n_classes":2,"params":{"tree":{"nodes":[{"label":0}]}}})")
                .find("duplicate feature name"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"family":"bnn","features":[{"name":"x","bit_width":2}],"n_classes":2,
      "params":{"layers":[{"weights":["101","010"]}]}})")
                .find("layers[0]"),
            std::string::npos);
}

TEST(ModelSpec, FeatureVectorChecks) {
  ModelSpec spec = fixture("dt_single_split.json");
  EXPECT_NO_THROW(check_feature_vector(spec.schema, {7}));
  EXPECT_THROW(check_feature_vector(spec.schema, {8}), ValidationError);
  EXPECT_THROW(check_feature_vector(spec.schema, {1, 2}), ValidationError);
}

TEST(ModelSpec, FamilyNames) {
  for (Family f : {Family::kDt, Family::kRf, Family::kXgb, Family::kIForest, Family::kKMeans, Family::kKnn,
                   Family::kSvm, Family::kNb, Family::kPca, Family::kAe, Family::kBnn})
    EXPECT_EQ(family_from_name(family_name(f)), f);
  EXPECT_THROW(family_from_name("lstm"), ValidationError);
  EXPECT_FALSE(is_classifier(Family::kPca));
  EXPECT_TRUE(is_tree_family(Family::kIForest));
}

TEST(ModelSpec, IForestLeafSizeExpandsToPathLength) {
  ModelSpec spec = fixture("iforest_small.json");
  // Leaf with 40 samples at depth 2: 2 + c(40).
  const double h39 = std::log(39.0) + 0.5772156649;
  const double c40 = 2.0 * h39 - 2.0 * 39.0 / 40.0;
  EXPECT_NEAR(spec.trees().trees[0].nodes[3].value, 2.0 + c40, 1e-9);
}

}  // namespace
}  // namespace tablewright
