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

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "tablewright/error.hpp"
#include "tablewright/mapping.hpp"
#include "tablewright/p4.hpp"
#include "tablewright/serialize.hpp"
#include "test_util.hpp"

namespace tablewright {
namespace {

using testing::config;
using testing::fixture;

// Set TABLEWRIGHT_UPDATE_GOLDEN=1 to rewrite the golden files.
void expect_golden(const std::string& name, const std::string& text) {
  const std::string path = std::string(TABLEWRIGHT_GOLDEN_DIR) + "/" + name;
  const char* update = std::getenv("TABLEWRIGHT_UPDATE_GOLDEN");
  if (update && std::string(update) == "1") {
    write_text_file(path, text);
    return;
  }
  EXPECT_EQ(text, read_text_file(path)) << "golden mismatch: " << path;
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (std::size_t pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

TEST(P4, EmptyProgramSkeleton) {
  PipelineProgram p;
  p.name = "empty";
  p.fields = {{"in_x", 4}, {"out", 4}};
  p.inputs = {"in_x"};
  p.outputs = {"out"};
  const std::string src = emit_p4(p);
  EXPECT_EQ(count(src, "\n  table "), 0u);
  EXPECT_NE(src.find("parser "), std::string::npos);
  EXPECT_NE(src.find("control TwIngress"), std::string::npos);
  EXPECT_NE(src.find("control TwEgress"), std::string::npos);
  EXPECT_NE(src.find("V1Switch("), std::string::npos);
  expect_golden("empty.p4", src);
}

TEST(P4, SingleSplitTree) {
  PipelineProgram p = convert(fixture("dt_single_split.json"), config(Variant::kEb));
  const std::string src = emit_p4(p);
  EXPECT_EQ(count(src, "\n  table "), 2u);
  EXPECT_NE(src.find("ternary;"), std::string::npos);
  EXPECT_NE(src.find(".apply();"), std::string::npos);
  expect_golden("dt_single_split_eb.p4", src);
}

TEST(P4, BinaryNetwork) {
  PipelineProgram p = convert(fixture("bnn_small.json"), config(Variant::kDm));
  const std::string src = emit_p4(p);
  EXPECT_NE(src.find("register<bit<"), std::string::npos);
  EXPECT_NE(src.find(".read("), std::string::npos);
  EXPECT_NE(src.find("^"), std::string::npos);
  expect_golden("bnn_small_dm.p4", src);
}

TEST(P4, EveryConverterEmits) {
  for (const char* name : {"rf_two_trees.json", "xgb_two_trees.json", "iforest_small.json", "kmeans_three.json",
                           "knn_clusters.json", "svm_three_class.json", "nb_two_class.json",
                           "pca_two_to_one.json", "ae_scalar.json"}) {
    ModelSpec spec = fixture(name);
    for (Variant v : supported_variants(spec.family)) {
      const std::string src = emit_p4(convert(spec, config(v)));
      EXPECT_NE(src.find("V1Switch("), std::string::npos) << name;
      EXPECT_EQ(count(src, "{"), count(src, "}")) << name;
    }
  }
  EXPECT_THROW(arch_from_name("tna"), ValidationError);
}

}  // namespace
}  // namespace tablewright
