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
#include <random>
#include <regex>

#include "tablewright/error.hpp"
#include "tablewright/mapping.hpp"
#include "tablewright/metrics.hpp"
#include "tablewright/synth.hpp"
#include "test_util.hpp"

namespace tablewright {
namespace {

using testing::config;
using testing::fixture;
using testing::label_mismatches;

std::vector<double> dequantized(const PipelineProgram& p, const FeatureVector& x) {
  std::vector<std::uint64_t> words = simulate(p, x);
  std::vector<double> out;
  for (std::size_t j = 0; j < words.size(); ++j)
    out.push_back((static_cast<double>(words[j]) - p.output_scales[j].offset) / p.output_scales[j].scale);
  return out;
}

double sampled_agreement(const ModelSpec& spec, const PipelineProgram& p, std::size_t count, std::uint64_t seed) {
  Simulator sim(p);
  std::size_t agree = 0;
  for (const FeatureVector& x : synth_inputs(spec.schema, count, seed))
    agree += sim.run(x)[0] == reference_predict(spec, x);
  return static_cast<double>(agree) / static_cast<double>(count);
}

TEST(MapSvmLb, OneAccumulatorPerHyperplane) {
  ModelSpec spec = fixture("svm_three_class.json");
  PipelineProgram p = map_svm_lb(spec, config(Variant::kLb));
  const std::regex acc("acc_[0-9]+");
  int n = 0;
  for (const FieldDecl& f : p.fields) n += std::regex_match(f.name, acc);
  EXPECT_EQ(n, 3);
}

TEST(MapSvmLb, ConstantWhenWeightsVanish) {
  ModelSpec spec = fixture("svm_three_class.json");
  for (Hyperplane& h : std::get<SvmParams>(spec.params).hyperplanes) {
    h.w = {0.0, 0.0};
    h.b = 1.0;
  }
  PipelineProgram p = map_svm_lb(spec, config(Variant::kLb));
  testing::for_each_point(spec.schema, [&](const FeatureVector& x) { EXPECT_EQ(simulate(p, x)[0], 0u); });
}

TEST(MapSvmLb, FullPrecisionIntegerWeightsExact) {
  for (const char* name : {"svm_tie.json", "svm_three_class.json"}) {
    ModelSpec spec = fixture(name);
    EXPECT_EQ(label_mismatches(spec, map_svm_lb(spec, config(Variant::kLb, kFullPrecisionBits))), 0u) << name;
  }
  ModelSpec spec;
  spec.family = Family::kSvm;
  spec.schema.features = {{"a", 6}, {"b", 6}};
  spec.n_classes = 2;
  spec.params = SvmParams{{{{3.0, -2.0}, -17.0, 1, 0}}};
  validate(spec);
  EXPECT_EQ(label_mismatches(spec, map_svm_lb(spec, config(Variant::kLb, kFullPrecisionBits))), 0u);
}

TEST(MapSvmLb, HyperplaneOrderDoesNotMatter) {
  ModelSpec spec = fixture("svm_three_class.json");
  ModelSpec swapped = spec;
  auto& hs = std::get<SvmParams>(swapped.params).hyperplanes;
  std::reverse(hs.begin(), hs.end());
  std::swap(hs[0].class_a, hs[0].class_b);
  for (double& w : hs[0].w) w = -w;
  hs[0].b = -hs[0].b;
  PipelineProgram a = map_svm_lb(spec, config(Variant::kLb, kFullPrecisionBits));
  PipelineProgram b = map_svm_lb(swapped, config(Variant::kLb, kFullPrecisionBits));
  std::size_t differ = 0;
  testing::for_each_point(spec.schema, [&](const FeatureVector& x) {
    // A zero margin breaks to the lower class in both forms.
    differ += simulate(a, x) != simulate(b, x);
  });
  EXPECT_EQ(differ, 0u);
}

TEST(MapNbLb, PriorsDecideIdenticalConditionals) {
  ModelSpec spec;
  spec.family = Family::kNb;
  spec.schema.features = {{"a", 4}, {"b", 4}};
  spec.n_classes = 2;
  spec.params = NbParams{{0.2, 0.8}, {{6.0, 9.0}, {6.0, 9.0}}, {{4.0, 2.0}, {4.0, 2.0}}};
  validate(spec);
  PipelineProgram p = map_nb_lb(spec, config(Variant::kLb, 12));
  testing::for_each_point(spec.schema, [&](const FeatureVector& x) { EXPECT_EQ(simulate(p, x)[0], 1u); });
}

TEST(MapNbLb, RandomGaussianSixteenBits) {
  ModelSpec spec = synth_model([] {
    SynthOptions o;
    o.family = Family::kNb;
    o.n_features = 3;
    o.bit_width = 8;
    o.n_classes = 3;
    return o;
  }(), 21);
  EXPECT_GE(sampled_agreement(spec, map_nb_lb(spec, config(Variant::kLb, 16)), 10000, 1), 0.99);
  EXPECT_EQ(sampled_agreement(spec, map_nb_lb(spec, config(Variant::kLb, kFullPrecisionBits)), 10000, 1), 1.0);
}

TEST(MapNbLb, ShiftedLogPriorsKeepDecisions) {
  // Scaling every prior by the same factor leaves the argmax unchanged.
  ModelSpec spec = fixture("nb_two_class.json");
  ModelSpec scaled = spec;
  for (double& p : std::get<NbParams>(scaled.params).priors) p *= 0.25;
  PipelineProgram a = map_nb_lb(spec, config(Variant::kLb, kFullPrecisionBits));
  PipelineProgram b = map_nb_lb(scaled, config(Variant::kLb, kFullPrecisionBits));
  testing::for_each_point(spec.schema, [&](const FeatureVector& x) { EXPECT_EQ(simulate(a, x), simulate(b, x)); });
  EXPECT_EQ(label_mismatches(spec, a), 0u);
}

TEST(MapKmLb, PointAtCentroid) {
  ModelSpec spec;
  spec.family = Family::kKMeans;
  spec.schema.features = {{"a", 5}, {"b", 5}};
  spec.n_classes = 3;
  spec.params = KMeansParams{{{4.0, 5.0}, {25.0, 8.0}, {14.0, 27.0}}};
  validate(spec);
  PipelineProgram p = map_km_lb(spec, config(Variant::kLb));
  EXPECT_EQ(simulate(p, {4, 5})[0], 0u);
  EXPECT_EQ(simulate(p, {25, 8})[0], 1u);
  EXPECT_EQ(simulate(p, {14, 27})[0], 2u);
}

TEST(MapKmLb, SymmetricCentroidsTieLow) {
  ModelSpec spec;
  spec.family = Family::kKMeans;
  spec.schema.features = {{"a", 4}};
  spec.n_classes = 2;
  spec.params = KMeansParams{{{3.5}, {11.5}}};
  validate(spec);
  EXPECT_EQ(simulate(map_km_lb(spec, config(Variant::kLb)), {7})[0], 0u);
  EXPECT_EQ(simulate(map_km_lb(spec, config(Variant::kLb)), {8})[0], 1u);
}

TEST(MapKmLb, RandomSixteenBitsAndFull) {
  ModelSpec spec = synth_model([] {
    SynthOptions o;
    o.family = Family::kKMeans;
    o.n_features = 3;
    o.bit_width = 8;
    o.n_classes = 3;
    return o;
  }(), 4);
  EXPECT_GE(sampled_agreement(spec, map_km_lb(spec, config(Variant::kLb, 16)), 10000, 2), 0.99);
  EXPECT_EQ(sampled_agreement(spec, map_km_lb(spec, config(Variant::kLb, kFullPrecisionBits)), 10000, 2), 1.0);
}

TEST(MapPcaLb, MeansGiveZero) {
  ModelSpec spec;
  spec.family = Family::kPca;
  spec.schema.features = {{"a", 6}, {"b", 6}};
  spec.n_classes = 2;
  spec.params = PcaParams{{20.0, 41.0}, {{0.6, -0.8}, {0.8, 0.6}}};
  validate(spec);
  PipelineProgram p = map_pca_lb(spec, config(Variant::kLb, 16));
  for (double v : dequantized(p, {20, 41})) EXPECT_NEAR(v, 0.0, 1e-3);
}

TEST(MapPcaLb, IdentityAtFullPrecision) {
  ModelSpec spec;
  spec.family = Family::kPca;
  spec.schema.features = {{"a", 5}, {"b", 5}};
  spec.n_classes = 2;
  spec.params = PcaParams{{0.0, 0.0}, {{1.0, 0.0}, {0.0, 1.0}}};
  validate(spec);
  PipelineProgram p = map_pca_lb(spec, config(Variant::kLb, kFullPrecisionBits));
  testing::for_each_point(spec.schema, [&](const FeatureVector& x) {
    auto y = dequantized(p, x);
    EXPECT_EQ(y[0], static_cast<double>(x[0]));
    EXPECT_EQ(y[1], static_cast<double>(x[1]));
  });
}

TEST(MapPcaLb, TwoToOne) {
  ModelSpec spec = fixture("pca_two_to_one.json");
  PipelineProgram p = map_pca_lb(spec, config(Variant::kLb, kFullPrecisionBits));
  EXPECT_EQ(dequantized(p, {3, 4}), std::vector<double>{7.0});
}

TEST(MapPcaLb, RandomPearson) {
  ModelSpec spec = synth_model([] {
    SynthOptions o;
    o.family = Family::kPca;
    o.n_features = 5;
    o.bit_width = 8;
    o.n_classes = 2;
    return o;
  }(), 8);
  PipelineProgram p = map_pca_lb(spec, config(Variant::kLb, 16));
  std::vector<std::vector<double>> got(2), want(2);
  for (const FeatureVector& x : synth_inputs(spec.schema, 10000, 3)) {
    auto y = dequantized(p, x);
    auto r = reference_transform(spec, x);
    for (int j = 0; j < 2; ++j) {
      got[j].push_back(y[j]);
      want[j].push_back(r[j]);
    }
  }
  for (int j = 0; j < 2; ++j) EXPECT_GE(pearson(got[j], want[j]), 0.999);
}

TEST(MapAeLb, ZeroWeightsGiveBias) {
  ModelSpec spec;
  spec.family = Family::kAe;
  spec.schema.features = {{"a", 4}, {"b", 4}};
  spec.n_classes = 2;
  spec.params = AeParams{{{0.0, 0.0}, {0.0, 0.0}}, {1.5, -2.0}};
  validate(spec);
  PipelineProgram p = map_ae_lb(spec, config(Variant::kLb, 16));
  testing::for_each_point(spec.schema, [&](const FeatureVector& x) {
    auto y = dequantized(p, x);
    EXPECT_NEAR(y[0], 1.5, 1e-3);
    EXPECT_NEAR(y[1], -2.0, 1e-3);
  });
}

TEST(MapAeLb, Scalar) {
  ModelSpec spec = fixture("ae_scalar.json");
  EXPECT_EQ(dequantized(map_ae_lb(spec, config(Variant::kLb, kFullPrecisionBits)), {3}), std::vector<double>{7.0});
}

TEST(MapLb, UniquePopulation) {
  ModelSpec spec = fixture("nb_two_class.json");
  ConvertConfig cfg = config(Variant::kLb, 16);
  cfg.population = Population::kUnique;
  cfg.unique_values = {{10, 16, 20, 44, 50}, {20, 40}};
  PipelineProgram p = map_nb_lb(spec, cfg);
  EXPECT_EQ(p.tables[0].entries.size(), 5u);
  EXPECT_EQ(p.tables[1].entries.size(), 2u);
  for (std::uint64_t a : cfg.unique_values[0])
    for (std::uint64_t b : cfg.unique_values[1]) EXPECT_EQ(simulate(p, {a, b})[0], reference_predict(spec, {a, b}));
  cfg.unique_values.clear();
  EXPECT_THROW(map_nb_lb(spec, cfg), ValidationError);
}

TEST(MapLb, CompressedFeatureTablesAgree) {
  ModelSpec spec = fixture("nb_two_class.json");
  PipelineProgram exact = map_nb_lb(spec, config(Variant::kLb, 12));
  for (MatchKind kind : {MatchKind::kTernary, MatchKind::kLpm}) {
    ConvertConfig cfg = config(Variant::kLb, 12);
    cfg.lb_match = kind;
    PipelineProgram c = map_nb_lb(spec, cfg);
    testing::for_each_point(spec.schema, [&](const FeatureVector& x) { EXPECT_EQ(simulate(c, x), simulate(exact, x)); });
  }
}

}  // namespace
}  // namespace tablewright
