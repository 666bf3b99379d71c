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

#include "json.hpp"
#include "tablewright/error.hpp"
#include "tablewright/mapping.hpp"
#include "tablewright/serialize.hpp"
#include "tablewright/synth.hpp"
#include "test_util.hpp"

namespace tablewright {
namespace {

using nlohmann::json;
using testing::config;
using testing::fixture;

std::vector<std::pair<std::string, PipelineProgram>> all_programs() {
  std::vector<std::pair<std::string, PipelineProgram>> out;
  auto add = [&](const std::string& name, Variant v, int bits = 8) {
    ModelSpec spec = fixture(name + ".json");
    out.emplace_back(name + "/" + std::string(variant_name(v)), convert(spec, config(v, bits)));
  };
  add("dt_single_split", Variant::kEb);
  add("dt_single_split", Variant::kDm);
  add("rf_two_trees", Variant::kEb);
  add("rf_two_trees", Variant::kDm);
  add("xgb_two_trees", Variant::kEb);
  add("iforest_small", Variant::kEb);
  add("kmeans_three", Variant::kEb);
  add("kmeans_three", Variant::kLb);
  add("knn_clusters", Variant::kEb);
  add("svm_three_class", Variant::kLb);
  add("nb_two_class", Variant::kLb);
  add("pca_two_to_one", Variant::kLb, 16);
  add("ae_scalar", Variant::kLb, 16);
  add("bnn_small", Variant::kDm);
  return out;
}

TEST(Serialize, ProgramRoundTrip) {
  for (const auto& [name, p] : all_programs()) {
    SCOPED_TRACE(name);
    EXPECT_EQ(program_from_json(program_to_json(p)), p);
  }
}

TEST(Serialize, EntriesRoundTrip) {
  for (const auto& [name, p] : all_programs()) {
    SCOPED_TRACE(name);
    PipelineProgram skeleton = program_from_json(program_to_json(p, false));
    for (const Table& t : skeleton.tables) EXPECT_TRUE(t.entries.empty());
    PipelineProgram loaded = apply_entries(skeleton, emit_entries(p));
    EXPECT_EQ(loaded, p);
  }
}

TEST(Serialize, EntriesDocumentShape) {
  ModelSpec spec = fixture("dt_single_split.json");
  PipelineProgram p = convert(spec, config(Variant::kEb));
  json doc = json::parse(emit_entries(p));
  EXPECT_EQ(doc["schema_version"], 1);
  ASSERT_EQ(doc["tables"].size(), 2u);
  EXPECT_EQ(doc["tables"][0]["entries"].size(), 2u);
  EXPECT_EQ(doc["tables"][1]["entries"].size(), 1u);
  for (const json& t : doc["tables"]) EXPECT_TRUE(t.contains("default_action"));
  for (const json& e : doc["tables"][0]["entries"]) {
    EXPECT_TRUE(e["match"][0].contains("mask"));
    EXPECT_TRUE(e.contains("priority"));
  }
}

TEST(Serialize, EmptyTablesKeepDefaults) {
  PipelineProgram p;
  p.name = "empty";
  p.fields = {{"x", 2}, {"y", 2}};
  p.inputs = {"x"};
  p.outputs = {"y"};
  Table t;
  t.name = "t";
  t.keys = {"x"};
  t.actions = {{"set_y", {"y"}}};
  t.default_action = {0, {3}};
  p.tables.push_back(t);
  json doc = json::parse(emit_entries(p));
  EXPECT_TRUE(doc["tables"][0]["entries"].empty());
  EXPECT_EQ(doc["tables"][0]["default_action"]["data"][0], 3);
  EXPECT_EQ(apply_entries(p, emit_entries(p)), p);
}

TEST(Serialize, WeightsAsBitRows) {
  ModelSpec spec = fixture("bnn_small.json");
  PipelineProgram p = convert(spec, config(Variant::kDm));
  json doc = json::parse(emit_weights(p));
  ASSERT_FALSE(doc["registers"].empty());
  EXPECT_EQ(doc["registers"][0]["rows"][0], "1010");
  EXPECT_TRUE(json::parse(emit_weights(convert(fixture("dt_single_split.json"), config(Variant::kEb))))["registers"]
                  .empty());
}

TEST(Serialize, RejectsBadDocuments) {
  ModelSpec spec = fixture("dt_single_split.json");
  PipelineProgram p = convert(spec, config(Variant::kEb));
  EXPECT_THROW(program_from_json("{"), ValidationError);
  json doc = json::parse(emit_entries(p));
  doc["tables"][0]["name"] = "nope";
  EXPECT_THROW(apply_entries(p, doc.dump()), ValidationError);
  doc = json::parse(emit_entries(p));
  doc["tables"][1]["entries"][0]["action"] = "launch";
  EXPECT_THROW(apply_entries(p, doc.dump()), ValidationError);
  doc = json::parse(emit_entries(p));
  doc["tables"][1]["entries"][0]["match"][0]["value"] = 99;
  EXPECT_THROW(apply_entries(p, doc.dump()), ValidationError);
  json prog = json::parse(program_to_json(p));
  prog["schema_version"] = 7;
  EXPECT_THROW(program_from_json(prog.dump()), ValidationError);
}

TEST(Serialize, FileErrors) {
  EXPECT_THROW(read_text_file("/nonexistent/dir/file.json"), IoError);
  EXPECT_THROW(write_text_file("/nonexistent/dir/file.json", "x"), IoError);
}

}  // namespace
}  // namespace tablewright
