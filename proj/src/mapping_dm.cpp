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

#include <algorithm>
#include <deque>
#include <limits>

#include "builder.hpp"
#include "tablewright/error.hpp"
#include "tablewright/mapping.hpp"

namespace tablewright {

namespace {

using detail::ProgramBuilder;

void require_family(const ModelSpec& spec, Family family, const char* mapper) {
  if (spec.family != family)
    throw ValidationError(std::string(mapper) + ": expected a " + std::string(family_name(family)) +
                          " model, got " + std::string(family_name(spec.family)));
}

// Breadth-first ids (root = 0) and node depths.
void bfs_number(const Tree& tree, std::vector<int>& id, std::vector<int>& depth) {
  id.assign(tree.nodes.size(), -1);
  depth.assign(tree.nodes.size(), 0);
  std::deque<int> queue{0};
  int next = 0;
  while (!queue.empty()) {
    const int n = queue.front();
    queue.pop_front();
    id[n] = next++;
    const TreeNode& node = tree.nodes[n];
    if (node.is_leaf()) continue;
    depth[node.left] = depth[n] + 1;
    depth[node.right] = depth[n] + 1;
    queue.push_back(node.left);
    queue.push_back(node.right);
  }
}

// One tree as a ladder of per-level node tables. Level d selects the feature
// named by feat_d, compares it with thr_d, and the next table keyed on
// (node_d, cmp_d) either descends or writes the leaf label into `out`.
void tree_ladder(ProgramBuilder& b, const ModelSpec& spec, const Tree& tree, const std::string& prefix,
                 const std::string& out) {
  const int depth = tree.depth();
  if (depth == 0) {
    b.op(OpCode::kConst, out, {}, static_cast<std::uint64_t>(tree.nodes[0].label));
    return;
  }
  std::vector<int> id, level;
  bfs_number(tree, id, level);
  const int id_width = bits_for(tree.nodes.size() + 1);
  const std::uint64_t done = width_mask(id_width);
  const int feat_width = bits_for(spec.schema.size());
  int value_width = 1;
  for (std::size_t f = 0; f < spec.schema.size(); ++f) value_width = std::max(value_width, spec.schema.width(f));

  auto name = [&](const char* what, int d) { return prefix + what + std::to_string(d); };
  std::string node = b.field(name("node_", 0), id_width);
  std::string feat = b.field(name("feat_", 0), feat_width);
  std::string thr = b.field(name("thr_", 0), value_width);
  const TreeNode& root = tree.nodes[0];
  b.op(OpCode::kConst, node, {}, 0);
  b.op(OpCode::kConst, feat, {}, static_cast<std::uint64_t>(root.feature));
  b.op(OpCode::kConst, thr, {}, root.threshold);

  for (int d = 0; d < depth; ++d) {
    const std::string val = b.field(name("val_", d), value_width);
    std::vector<std::string> select_srcs{feat};
    for (const std::string& in : b.inputs()) select_srcs.push_back(in);
    b.op(OpCode::kSelect, val, select_srcs);
    const std::string cmp = b.field(name("cmp_", d), 1);
    b.op(OpCode::kLe, cmp, {val, thr});

    const bool last = d + 1 == depth;
    const std::string next_node = b.field(name("node_", d + 1), id_width);
    std::string next_feat, next_thr;
    if (!last) {
      next_feat = b.field(name("feat_", d + 1), feat_width);
      next_thr = b.field(name("thr_", d + 1), value_width);
    }
    Table& table = b.table(name("level_", d + 1), MatchKind::kExact, {node, cmp});
    if (!last) table.actions.push_back({"branch", {next_node, next_feat, next_thr}});
    table.actions.push_back({"leaf", {out, next_node}});
    table.actions.push_back({"nop", {}});
    const int leaf_action = last ? 0 : 1;
    for (std::size_t n = 0; n < tree.nodes.size(); ++n) {
      const TreeNode& parent = tree.nodes[n];
      if (parent.is_leaf() || level[n] != d) continue;
      for (int cmp_value : {1, 0}) {
        const int child = cmp_value == 1 ? parent.left : parent.right;
        const TreeNode& c = tree.nodes[child];
        TableEntry e;
        e.keys = {MatchKey::exact(static_cast<std::uint64_t>(id[n])),
                  MatchKey::exact(static_cast<std::uint64_t>(cmp_value))};
        if (c.is_leaf()) {
          e.action_id = leaf_action;
          e.action_data = {static_cast<std::uint64_t>(c.label), done};
        } else {
          e.action_id = 0;
          e.action_data = {static_cast<std::uint64_t>(id[child]), static_cast<std::uint64_t>(c.feature),
                           c.threshold};
        }
        table.entries.push_back(std::move(e));
      }
    }
    // Finished paths park on `done`, which no entry matches.
    table.default_action = last ? ActionCall{leaf_action + 1, {}} : ActionCall{0, {done, 0, 0}};
    std::sort(table.entries.begin(), table.entries.end(), [](const TableEntry& x, const TableEntry& y) {
      return std::pair(x.keys[0].value, x.keys[1].value) < std::pair(y.keys[0].value, y.keys[1].value);
    });
    b.count_entries(table.entries.size(), std::numeric_limits<std::uint64_t>::max());
    node = next_node;
    feat = next_feat;
    thr = next_thr;
  }
}

}  // namespace

PipelineProgram map_dt_dm(const ModelSpec& spec, const ConvertConfig& cfg) {
  require_family(spec, Family::kDt, "map_dt_dm");
  ProgramBuilder b(spec, Variant::kDm);
  const std::string label = b.field("label", bits_for(spec.n_classes));
  tree_ladder(b, spec, spec.trees().trees[0], "", label);
  detail::check_budget(b.entries(), cfg.entry_budget, "program dt_dm");
  b.label_output(label);
  return b.finish();
}

PipelineProgram map_rf_dm(const ModelSpec& spec, const ConvertConfig& cfg) {
  require_family(spec, Family::kRf, "map_rf_dm");
  ProgramBuilder b(spec, Variant::kDm);
  const auto& trees = spec.trees().trees;
  std::vector<std::string> votes;
  for (std::size_t t = 0; t < trees.size(); ++t) {
    votes.push_back(b.field("vote_t" + std::to_string(t), bits_for(spec.n_classes)));
    tree_ladder(b, spec, trees[t], "t" + std::to_string(t) + "_", votes.back());
  }
  detail::check_budget(b.entries(), cfg.entry_budget, "program rf_dm");
  const std::string label = b.field("label", bits_for(spec.n_classes));
  b.vote_logic(votes, spec.n_classes, label);
  b.set_config("vote", "logic");
  b.label_output(label);
  return b.finish();
}

PipelineProgram map_bnn_dm(const ModelSpec& spec, const ConvertConfig& cfg) {
  require_family(spec, Family::kBnn, "map_bnn_dm");
  const auto& layers = spec.as<BnnParams>().layers;
  const int word_limit = std::min(cfg.register_word_bits, 64);
  ProgramBuilder b(spec, Variant::kDm);
  const int in_width = spec.schema.total_width();
  if (in_width > word_limit)
    throw BudgetError("bnn input is " + std::to_string(in_width) + " bits, register words hold " +
                      std::to_string(word_limit));
  std::string input = b.field("bnn_in0", in_width);
  b.op(OpCode::kConcat, input, b.inputs());

  std::vector<std::string> last_counts;
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const BnnLayer& layer = layers[l];
    const int width = layer.in_width;
    if (width > word_limit)
      throw BudgetError("layer " + std::to_string(l) + " is " + std::to_string(width) +
                        " bits wide, register words hold " + std::to_string(word_limit));
    const std::string tag = "l" + std::to_string(l);
    std::vector<std::uint64_t> words;
    for (const auto& row : layer.rows) {
      std::uint64_t w = 0;
      for (int i = 0; i < width; ++i)
        if (row[static_cast<std::size_t>(i)]) w |= std::uint64_t{1} << (width - 1 - i);
      words.push_back(w);
    }
    const std::string reg = "w_" + tag;
    b.reg(reg, width, std::move(words));

    const bool final_layer = l + 1 == layers.size();
    const int count_width = bits_for(static_cast<std::uint64_t>(width) + 1);
    std::vector<std::string> signs;
    last_counts.clear();
    for (std::size_t j = 0; j < layer.rows.size(); ++j) {
      const std::string node = tag + "_n" + std::to_string(j);
      const std::string weight = b.field("wt_" + node, width);
      b.reg_read(weight, reg, j);
      const std::string agree = b.field("xnor_" + node, width);
      b.op(OpCode::kXnor, agree, {input, weight});
      const std::string count = b.field("pop_" + node, count_width);
      b.op(OpCode::kPopcount, count, {agree});
      if (final_layer) {
        last_counts.push_back(count);
        continue;
      }
      const std::string sign = b.field("sign_" + node, 1);
      b.op(OpCode::kGe, sign, {count}, static_cast<std::uint64_t>((width + 1) / 2));
      signs.push_back(sign);
    }
    if (!final_layer) {
      input = b.field("bnn_in" + std::to_string(l + 1), static_cast<int>(signs.size()));
      b.op(OpCode::kConcat, input, signs);
    }
  }
  const std::string label = b.field("label", bits_for(spec.n_classes));
  b.op(OpCode::kArgmax, label, last_counts);
  b.set_config("register_word_bits", std::to_string(word_limit));
  b.label_output(label);
  return b.finish();
}

}  // namespace tablewright
