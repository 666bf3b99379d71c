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

#ifndef TABLEWRIGHT_MAPPING_HPP_
#define TABLEWRIGHT_MAPPING_HPP_

#include <cstdint>
#include <string_view>
#include <vector>

#include "tablewright/model_spec.hpp"
#include "tablewright/program.hpp"
#include "tablewright/table_utils.hpp"

namespace tablewright {

// Mapping strategy: encode-based, lookup-based or direct mapping.
enum class Variant { kEb, kLb, kDm };

std::string_view variant_name(Variant v);
Variant variant_from_name(std::string_view name);
std::vector<Variant> supported_variants(Family family);
Variant default_variant(Family family);

// How lookup-based feature tables are populated. kAuto enumerates the whole
// domain for features of at most 16 bits and falls back to kUnique otherwise.
enum class Population { kAuto, kFullDomain, kUnique };

// Final aggregation for encode-based random forests.
enum class VoteMode { kTable, kLogic };

struct ConvertConfig {
  Variant variant = Variant::kEb;
  // Action-data width of lookup-based intermediate words.
  int n_bits = 8;
  // Quadtree depth for kmeans/knn encode-based mappings.
  int max_depth = 4;
  // Match kind of encode-based feature tables. kExact enumerates every value
  // and disables default-action compression in the code tables.
  MatchKind feature_match = MatchKind::kTernary;
  // Match kind of lookup-based feature tables (ternary/lpm compress runs).
  MatchKind lb_match = MatchKind::kExact;
  Population population = Population::kAuto;
  // Observed values per feature, used by Population::kUnique.
  std::vector<std::vector<std::uint64_t>> unique_values;
  VoteMode vote_mode = VoteMode::kTable;
  // Install the most common outcome as the decision-table default.
  bool use_default_action = true;
  std::uint64_t entry_budget = std::uint64_t{1} << 22;
  int key_bits_budget = 512;
  int register_word_bits = 64;
};

// Dispatches on the model family and cfg.variant. Throws ValidationError when
// the pair is unsupported and BudgetError when a limit is exceeded.
PipelineProgram convert(const ModelSpec& spec, const ConvertConfig& cfg);

// Encode-based.
PipelineProgram map_dt_eb(const ModelSpec& spec, const ConvertConfig& cfg);
PipelineProgram map_rf_eb(const ModelSpec& spec, const ConvertConfig& cfg);
PipelineProgram map_xgb_eb(const ModelSpec& spec, const ConvertConfig& cfg);
PipelineProgram map_if_eb(const ModelSpec& spec, const ConvertConfig& cfg);
PipelineProgram map_km_eb(const ModelSpec& spec, const ConvertConfig& cfg);
PipelineProgram map_knn_eb(const ModelSpec& spec, const ConvertConfig& cfg);

// Lookup-based.
PipelineProgram map_svm_lb(const ModelSpec& spec, const ConvertConfig& cfg);
PipelineProgram map_nb_lb(const ModelSpec& spec, const ConvertConfig& cfg);
PipelineProgram map_km_lb(const ModelSpec& spec, const ConvertConfig& cfg);
PipelineProgram map_pca_lb(const ModelSpec& spec, const ConvertConfig& cfg);
PipelineProgram map_ae_lb(const ModelSpec& spec, const ConvertConfig& cfg);

// Direct mapping.
PipelineProgram map_dt_dm(const ModelSpec& spec, const ConvertConfig& cfg);
PipelineProgram map_rf_dm(const ModelSpec& spec, const ConvertConfig& cfg);
PipelineProgram map_bnn_dm(const ModelSpec& spec, const ConvertConfig& cfg);

// Per-feature value intervals induced by the thresholds one tree applies to
// `feature`, ascending. Interval i is the region encoded as code i.
std::vector<std::pair<std::uint64_t, std::uint64_t>> tree_feature_intervals(
    const Tree& tree, int feature, std::uint64_t max_value);

// Every combination of leaves (one per tree) whose regions intersect,
// in lexicographic order. Throws BudgetError past `budget` tuples.
std::vector<std::vector<int>> reachable_leaf_tuples(const ModelSpec& spec, std::uint64_t budget);

}  // namespace tablewright

#endif  // TABLEWRIGHT_MAPPING_HPP_
