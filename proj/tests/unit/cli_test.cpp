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
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>

#include "json.hpp"
#include "tablewright/dataset.hpp"
#include "tablewright/serialize.hpp"
#include "tablewright/synth.hpp"
#include "test_util.hpp"

namespace tablewright {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    if (std::string(TABLEWRIGHT_CLI_PATH).empty()) GTEST_SKIP() << "command-line tool not built";
    dir_ = fs::temp_directory_path() /
           ("tablewright_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override {
    if (!dir_.empty()) fs::remove_all(dir_);
  }

  // Runs the tool with `args`; stdout lands in out_, stderr in err_.
  int run(const std::string& args, const std::string& env = "") {
    const fs::path out = dir_ / "stdout.txt", err = dir_ / "stderr.txt";
    const std::string cmd = env + " '" + std::string(TABLEWRIGHT_CLI_PATH) + "' " + args + " >'" + out.string() +
                            "' 2>'" + err.string() + "'";
    const int status = std::system(cmd.c_str());
    out_ = read_text_file(out.string());
    err_ = read_text_file(err.string());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
  std::string out_, err_;
};

std::string fixture(const std::string& name) { return "'" + testing::fixture_path(name) + "'"; }

TEST_F(Cli, ConvertWritesFourFiles) {
  ASSERT_EQ(run("convert --model " + fixture("dt_single_split.json") + " --out " + path("dt")), 0) << err_;
  for (const char* f : {"program.json", "entries.json", "model.p4", "report.json"})
    EXPECT_TRUE(fs::exists(dir_ / "dt" / f)) << f;
  EXPECT_FALSE(fs::exists(dir_ / "dt" / "weights.json"));
  json report = json::parse(read_text_file(path("dt/report.json")));
  EXPECT_EQ(report["stages"], 2);
  EXPECT_EQ(report["total_entries"], 3);
}

TEST_F(Cli, ConvertBnnWritesWeights) {
  ASSERT_EQ(run("convert --model " + fixture("bnn_small.json") + " --out " + path("bnn")), 0) << err_;
  EXPECT_TRUE(fs::exists(dir_ / "bnn" / "weights.json"));
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run("convert --model " + fixture("kmeans_three.json") + " --variant dm --out " + path("x")), 2);
  EXPECT_NE(err_.find("variant not supported for family"), std::string::npos) << err_;
  EXPECT_EQ(run("convert --model " + fixture("svm_bad_count.json") + " --out " + path("x")), 2);
  EXPECT_EQ(run("convert --model " + path("missing.json") + " --out " + path("x")), 3);
  EXPECT_EQ(run("convert --model " + fixture("rf_two_trees.json") + " --entry-budget 2 --out " + path("x")), 4);
  EXPECT_EQ(run("convert --model " + fixture("dt_single_split.json") + " --preset XL --out " + path("x")), 2);
  EXPECT_EQ(run("frobnicate"), 2);
}

TEST_F(Cli, SimulateToyLabels) {
  ASSERT_EQ(run("convert --model " + fixture("dt_single_split.json") + " --out " + path("dt")), 0);
  ASSERT_EQ(run("simulate --program " + path("dt/program.json") + " --entries " + path("dt/entries.json") +
                " --dataset " + fixture("dt_single_split.csv")),
            0)
      << err_;
  EXPECT_EQ(out_, "prediction\n0\n0\n0\n1\n1\n");
}

TEST_F(Cli, SimulateConstantProgram) {
  // A tree that is a single leaf.
  ModelSpec spec = testing::fixture("dt_single_split.json");
  std::get<TreeParams>(spec.params).trees[0].nodes = {{-1, 0, -1, -1, 1}};
  write_text_file(path("leaf.json"), serialize_model_spec(spec));
  ASSERT_EQ(run("convert --model '" + path("leaf.json") + "' --out " + path("leaf")), 0) << err_;
  ASSERT_EQ(run("simulate --program " + path("leaf/program.json") + " --entries " + path("leaf/entries.json") +
                " --dataset " + fixture("dt_single_split.csv")),
            0);
  EXPECT_EQ(out_, "prediction\n1\n1\n1\n1\n1\n");
}

TEST_F(Cli, SimulateMatchesInProcess) {
  SynthOptions o = synth_options(Family::kRf, Preset::kS, 3, 8);
  ModelSpec spec = synth_model(o, 17);
  write_text_file(path("rf.json"), serialize_model_spec(spec));
  std::vector<FeatureVector> rows = synth_inputs(spec.schema, 10000, 3);
  write_text_file(path("rows.csv"), format_dataset_csv(spec.schema, rows, {}));
  ASSERT_EQ(run("convert --model " + path("rf.json") + " --out " + path("rf")), 0) << err_;
  ASSERT_EQ(run("simulate --program " + path("rf/program.json") + " --entries " + path("rf/entries.json") +
                " --dataset " + path("rows.csv") + " --out " + path("pred.csv")),
            0)
      << err_;
  PipelineProgram p = convert(spec, [] {
    ConvertConfig cfg;
    apply_preset(cfg, Family::kRf, Preset::kS);
    cfg.variant = Variant::kEb;
    return cfg;
  }());
  std::istringstream lines(read_text_file(path("pred.csv")));
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "prediction");
  Simulator sim(p);
  for (const FeatureVector& x : rows) {
    ASSERT_TRUE(std::getline(lines, line));
    ASSERT_EQ(line, std::to_string(sim.run(x)[0]));
  }
}

TEST_F(Cli, CompareExactAndLowBits) {
  ASSERT_EQ(run("convert --model " + fixture("dt_single_split.json") + " --out " + path("dt")), 0);
  ASSERT_EQ(run("compare --model " + fixture("dt_single_split.json") + " --program " + path("dt/program.json") +
                " --entries " + path("dt/entries.json") + " --dataset " + fixture("dt_single_split.csv")),
            0)
      << err_;
  json m = json::parse(out_);
  EXPECT_EQ(m["relative_accuracy"], 1.0);
  EXPECT_EQ(m["agreement"], 1.0);

  ModelSpec nb = testing::fixture("nb_two_class.json");
  std::vector<FeatureVector> rows = synth_inputs(nb.schema, 500, 1);
  std::vector<Label> labels;
  for (const auto& x : rows) labels.push_back(reference_predict(nb, x));
  write_text_file(path("nb.csv"), format_dataset_csv(nb.schema, rows, labels));
  for (const std::string bits : {"4", "full"}) {
    ASSERT_EQ(run("convert --model " + fixture("nb_two_class.json") + " --bits " + bits + " --out " + path("nb")), 0)
        << err_;
    ASSERT_EQ(run("compare --model " + fixture("nb_two_class.json") + " --program " + path("nb/program.json") +
                  " --entries " + path("nb/entries.json") + " --dataset " + path("nb.csv")),
              0)
        << err_;
    const double rel = json::parse(out_)["relative_accuracy"];
    EXPECT_GE(rel, 0.0);
    EXPECT_LE(rel, 1.0);
    if (bits == "full") {
      EXPECT_EQ(rel, 1.0);
    }
  }
}

TEST_F(Cli, CompareVectorProgram) {
  ASSERT_EQ(run("convert --model " + fixture("pca_two_to_one.json") + " --bits 16 --out " + path("pca")), 0);
  write_text_file(path("pca.csv"), "f0,f1\n3,4\n0,0\n15,2\n");
  ASSERT_EQ(run("compare --model " + fixture("pca_two_to_one.json") + " --program " + path("pca/program.json") +
                " --entries " + path("pca/entries.json") + " --dataset " + path("pca.csv")),
            0)
      << err_;
  EXPECT_GE(json::parse(out_)["mean_pearson"].get<double>(), 0.999);
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream cl(line);
    std::string cell;
    while (std::getline(cl, cell, ',')) cells.push_back(cell);
    out.push_back(cells);
  }
  return out;
}

TEST_F(Cli, SweepStagesAndEntries) {
  ASSERT_EQ(run("sweep --family rf --axis n_trees --range 1:12 --samples 200 --out " + path("rf.csv")), 0) << err_;
  auto rows = csv_rows(read_text_file(path("rf.csv")));
  ASSERT_EQ(rows.size(), 13u);
  EXPECT_EQ(rows[0][5], "stages");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i][1], std::to_string(i));
    EXPECT_EQ(rows[i][5], "3");
    EXPECT_EQ(rows[i][8], "1");
  }
  ASSERT_EQ(run("sweep --family dt --axis depth --range 2:8 --samples 200 --out " + path("dt.csv")), 0) << err_;
  rows = csv_rows(read_text_file(path("dt.csv")));
  ASSERT_EQ(rows.size(), 8u);
  for (std::size_t i = 2; i < rows.size(); ++i) EXPECT_GE(std::stoul(rows[i][4]), std::stoul(rows[i - 1][4]));
}

TEST_F(Cli, SweepBits) {
  ASSERT_EQ(run("sweep --family nb --axis n_bits --range 4,6,8,12,16,full --samples 500"), 0) << err_;
  auto rows = csv_rows(out_);
  ASSERT_EQ(rows.size(), 7u);
  EXPECT_EQ(rows.back()[8], "1");
  EXPECT_EQ(run("sweep --family nb --axis depth --range 2:3"), 2);
}

TEST_F(Cli, LogLevelFromEnvironment) {
  ASSERT_EQ(run("convert --model " + fixture("dt_single_split.json") + " --out " + path("dt"), "TABLEWRIGHT_LOG=debug"),
            0);
  EXPECT_NE(err_.find("[debug]"), std::string::npos) << err_;
  ASSERT_EQ(run("convert --model " + fixture("dt_single_split.json") + " --out " + path("dt"), "TABLEWRIGHT_LOG=error"),
            0);
  EXPECT_TRUE(err_.empty()) << err_;
}

}  // namespace
}  // namespace tablewright
