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

#include <string>

#include "tablewright/dataset.hpp"
#include "tablewright/error.hpp"
#include "test_util.hpp"

namespace tablewright {
namespace {

FeatureSchema schema() { return FeatureSchema{{{"a", 4}, {"b", 2}}}; }

std::string error_of(const std::string& text) {
  try {
    parse_dataset_csv(text, schema());
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

TEST(Dataset, ParsesAnyColumnOrder) {
  Dataset d = parse_dataset_csv("label,b,a\n1,3,15\n0,0,2\n", schema());
  ASSERT_EQ(d.rows.size(), 2u);
  EXPECT_TRUE(d.has_labels);
  EXPECT_EQ(d.rows[0], (FeatureVector{15, 3}));
  EXPECT_EQ(d.labels, (std::vector<Label>{1, 0}));
}

TEST(Dataset, WithoutLabels) {
  Dataset d = parse_dataset_csv("a,b\n1,1\n", schema());
  EXPECT_FALSE(d.has_labels);
  EXPECT_EQ(d.rows.size(), 1u);
  EXPECT_TRUE(parse_dataset_csv("a,b\n", schema()).rows.empty());
}

TEST(Dataset, Errors) {
  EXPECT_NE(error_of("a\n1\n").find("column 'b' is missing"), std::string::npos);
  EXPECT_NE(error_of("a,b,c\n1,1,1\n").find("column 'c' is not a feature of the model"), std::string::npos);
  EXPECT_NE(error_of("a,b\n1,7\n").find("line 2, column 'b'"), std::string::npos);
  EXPECT_NE(error_of("a,b\n1,x\n").find("line 2, column 'b'"), std::string::npos);
  EXPECT_NE(error_of("a,b\n1,1\n2\n").find("line 3"), std::string::npos);
  EXPECT_THROW(read_dataset_csv("/nonexistent.csv", schema()), IoError);
}

TEST(Dataset, FormatRoundTrip) {
  std::vector<FeatureVector> rows = {{1, 2}, {15, 0}};
  std::vector<Label> labels = {0, 1};
  Dataset d = parse_dataset_csv(format_dataset_csv(schema(), rows, labels), schema());
  EXPECT_EQ(d.rows, rows);
  EXPECT_EQ(d.labels, labels);
}

TEST(Dataset, Fixture) {
  ModelSpec spec = testing::fixture("dt_single_split.json");
  Dataset d = read_dataset_csv(testing::fixture_path("dt_single_split.csv"), spec.schema);
  for (std::size_t i = 0; i < d.rows.size(); ++i) EXPECT_EQ(reference_predict(spec, d.rows[i]), d.labels[i]);
}

}  // namespace
}  // namespace tablewright
