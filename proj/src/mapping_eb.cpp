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
#include <functional>
#include <map>
#include <unordered_map>

#include "builder.hpp"
#include "tablewright/error.hpp"
#include "tablewright/mapping.hpp"
#include "tablewright/reference.hpp"

namespace tablewright {

namespace {

using detail::ProgramBuilder;
using Interval = std::pair<std::uint64_t, std::uint64_t>;

std::vector<Interval> intervals_from_thresholds(std::vector<std::uint64_t> thresholds,
                                                std::uint64_t max_value) {
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());
  std::vector<Interval> out;
  std::uint64_t lo = 0;
  for (std::uint64_t t : thresholds) {
    if (t >= max_value) break;  // x <= max always holds; no boundary
    out.emplace_back(lo, t);
    lo = t + 1;
  }
  out.emplace_back(lo, max_value);
  return out;
}

std::size_t interval_index(const std::vector<Interval>& iv, std::uint64_t v) {
  auto it = std::upper_bound(iv.begin(), iv.end(), v,
                             [](std::uint64_t x, const Interval& i) { return x < i.first; });
  return static_cast<std::size_t>(it - iv.begin()) - 1;
}

struct LeafBox {
  int node = 0;
  std::vector<Interval> box;  // per feature, value space
};

std::vector<LeafBox> leaf_boxes(const Tree& tree, const FeatureSchema& schema) {
  std::vector<LeafBox> out;
  std::vector<Interval> root;
  for (std::size_t f = 0; f < schema.size(); ++f) root.emplace_back(0, schema.max_value(f));
  std::function<void(int, std::vector<Interval>&)> walk = [&](int id, std::vector<Interval>& box) {
    const TreeNode& node = tree.nodes[id];
    if (node.is_leaf()) {
      out.push_back({id, box});
      return;
    }
    const Interval saved = box[node.feature];
    if (saved.first <= node.threshold) {
      box[node.feature].second = std::min(saved.second, node.threshold);
      walk(node.left, box);
      box[node.feature] = saved;
    }
    if (saved.second > node.threshold) {
      box[node.feature].first = std::max(saved.first, node.threshold + 1);
      walk(node.right, box);
      box[node.feature] = saved;
    }
  };
  walk(0, root);
  std::sort(out.begin(), out.end(), [](const LeafBox& a, const LeafBox& b) { return a.node < b.node; });
  return out;
}

// Dense leaf numbering in node-index order.
std::vector<int> leaf_ids(const Tree& tree) {
  std::vector<int> ids(tree.nodes.size(), -1);
  int next = 0;
  for (std::size_t i = 0; i < tree.nodes.size(); ++i)
    if (tree.nodes[i].is_leaf()) ids[i] = next++;
  return ids;
}

int leaf_count(const Tree& tree) {
  int n = 0;
  for (const TreeNode& node : tree.nodes) n += node.is_leaf() ? 1 : 0;
  return n;
}

// Code layout of an encode-based forest: which code fields each tree reads.
struct ForestLayout {
  std::vector<std::vector<std::vector<Interval>>> intervals;  // [tree][feature]
  std::vector<std::vector<std::string>> code_fields;          // [tree][feature], "" if unused
};

ForestLayout layout_forest(ProgramBuilder& b, const ModelSpec& spec) {
  const auto& trees = spec.trees().trees;
  const bool single = trees.size() == 1;
  ForestLayout layout;
  layout.intervals.resize(trees.size());
  layout.code_fields.resize(trees.size());
  for (std::size_t t = 0; t < trees.size(); ++t) {
    for (std::size_t f = 0; f < spec.schema.size(); ++f) {
      auto iv = tree_feature_intervals(trees[t], static_cast<int>(f), spec.schema.max_value(f));
      std::string name;
      if (iv.size() > 1) {
        name = single ? "code_f" + std::to_string(f) : "code_f" + std::to_string(f) + "_t" + std::to_string(t);
        name = b.field(name, bits_for(iv.size()));
      }
      layout.intervals[t].push_back(std::move(iv));
      layout.code_fields[t].push_back(std::move(name));
    }
  }
  return layout;
}

// Ranks candidate default outcomes: the most frequent one wins, then the one
// whose entries are costliest, then the lowest value.
std::uint64_t pick_default(const std::map<std::uint64_t, std::pair<std::size_t, std::size_t>>& tally) {
  std::uint64_t best = tally.begin()->first;
  auto best_score = tally.begin()->second;
  for (const auto& [value, score] : tally)
    if (score > best_score) {
      best = value;
      best_score = score;
    }
  return best;
}

void build_feature_tables(ProgramBuilder& b, const ModelSpec& spec, const ConvertConfig& cfg,
                          const ForestLayout& layout) {
  const std::size_t n_trees = layout.intervals.size();
  for (std::size_t f = 0; f < spec.schema.size(); ++f) {
    std::vector<std::size_t> users;
    std::vector<std::uint64_t> thresholds;
    for (std::size_t t = 0; t < n_trees; ++t) {
      if (layout.code_fields[t][f].empty()) continue;
      users.push_back(t);
      for (std::size_t i = 0; i + 1 < layout.intervals[t][f].size(); ++i)
        thresholds.push_back(layout.intervals[t][f][i].second);
    }
    if (users.empty()) continue;
    const std::uint64_t max_value = spec.schema.max_value(f);
    const int width = spec.schema.width(f);
    const auto global = intervals_from_thresholds(thresholds, max_value);

    auto codes_at = [&](std::uint64_t v) {
      std::vector<std::uint64_t> codes;
      for (std::size_t t : users) codes.push_back(interval_index(layout.intervals[t][f], v));
      return codes;
    };

    ActionDef set_codes{"set_codes_f" + std::to_string(f), {}};
    for (std::size_t t : users) set_codes.writes.push_back(layout.code_fields[t][f]);

    Table& table = b.table("feature_f" + std::to_string(f), cfg.feature_match, {b.input(f)});
    table.actions.push_back(std::move(set_codes));

    if (cfg.feature_match == MatchKind::kExact) {
      detail::check_budget(max_value + 1, cfg.entry_budget, table.name);
      for (std::uint64_t v = 0; v <= max_value; ++v)
        table.entries.push_back({{MatchKey::exact(v)}, 0, 0, codes_at(v)});
      table.default_action = {0, codes_at(0)};
      b.count_entries(table.entries.size(), cfg.entry_budget);
      continue;
    }

    std::vector<std::vector<Prefix>> prefixes;
    for (const auto& [lo, hi] : global) prefixes.push_back(range_to_prefixes(lo, hi, width));
    std::size_t default_interval = global.size();
    if (cfg.use_default_action) {
      default_interval = 0;
      for (std::size_t g = 1; g < global.size(); ++g)
        if (prefixes[g].size() > prefixes[default_interval].size()) default_interval = g;
    }
    for (std::size_t g = 0; g < global.size(); ++g) {
      if (g == default_interval) continue;
      for (const Prefix& p : prefixes[g]) {
        MatchKey key = cfg.feature_match == MatchKind::kLpm ? MatchKey::lpm(p.value, p.prefix_len, width)
                                                            : prefix_to_ternary(p, width);
        table.entries.push_back({{key}, 0, 0, codes_at(global[g].first)});
      }
    }
    if (cfg.feature_match == MatchKind::kTernary) {
      const int widths[] = {width};
      assign_ternary_priorities(table.entries, widths);
    }
    table.default_action = {0, codes_at(global[default_interval < global.size() ? default_interval : 0].first)};
    b.count_entries(table.entries.size(), cfg.entry_budget);
  }
}

// Code table of one tree: code tuple -> `output(leaf node)` written to `out`.
// `by_frequency` picks the default as the most frequent output; otherwise the
// output with the most entries.
void build_tree_table(ProgramBuilder& b, const ModelSpec& spec, const ConvertConfig& cfg,
                      const ForestLayout& layout, std::size_t t, const std::string& name,
                      const std::string& out, const std::function<std::uint64_t(int)>& output,
                      bool by_frequency) {
  const Tree& tree = spec.trees().trees[t];
  std::vector<std::size_t> used;
  std::vector<std::string> keys;
  std::vector<int> key_widths;
  for (std::size_t f = 0; f < spec.schema.size(); ++f)
    if (!layout.code_fields[t][f].empty()) {
      used.push_back(f);
      keys.push_back(layout.code_fields[t][f]);
      key_widths.push_back(bits_for(layout.intervals[t][f].size()));
    }
  const MatchKind kind = cfg.feature_match == MatchKind::kExact ? MatchKind::kExact : MatchKind::kTernary;
  Table& table = b.table(name, kind, keys);
  table.actions.push_back({"set_" + out, {out}});

  const auto boxes = leaf_boxes(tree, spec.schema);
  if (used.empty()) {
    table.default_action = {0, {output(boxes.front().node)}};
    return;
  }

  // Each leaf box expressed as a code-space box.
  struct CodeBox {
    std::uint64_t value;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> codes;
  };
  std::vector<CodeBox> code_boxes;
  for (const LeafBox& leaf : boxes) {
    CodeBox cb{output(leaf.node), {}};
    for (std::size_t f : used) {
      const auto& iv = layout.intervals[t][f];
      cb.codes.emplace_back(interval_index(iv, leaf.box[f].first), interval_index(iv, leaf.box[f].second));
    }
    code_boxes.push_back(std::move(cb));
  }

  if (kind == MatchKind::kExact) {
    std::uint64_t total = 1;
    for (std::size_t f : used) total *= layout.intervals[t][f].size();
    detail::check_budget(total, cfg.entry_budget, name);
    std::vector<std::uint64_t> tuple(used.size(), 0);
    for (std::uint64_t cell = 0; cell < total; ++cell) {
      std::uint64_t rest = cell;
      for (std::size_t k = used.size(); k-- > 0;) {
        const std::uint64_t count = layout.intervals[t][used[k]].size();
        tuple[k] = rest % count;
        rest /= count;
      }
      for (const CodeBox& cb : code_boxes) {
        bool inside = true;
        for (std::size_t k = 0; k < used.size() && inside; ++k)
          inside = cb.codes[k].first <= tuple[k] && tuple[k] <= cb.codes[k].second;
        if (!inside) continue;
        TableEntry e;
        for (std::uint64_t c : tuple) e.keys.push_back(MatchKey::exact(c));
        e.action_data = {cb.value};
        table.entries.push_back(std::move(e));
        break;
      }
    }
    table.default_action = {0, {code_boxes.front().value}};
    b.count_entries(table.entries.size(), cfg.entry_budget);
    return;
  }

  // Ternary: cartesian product of per-feature prefix covers.
  std::vector<std::vector<TableEntry>> per_leaf;
  std::map<std::uint64_t, std::pair<std::size_t, std::size_t>> tally;
  for (const CodeBox& cb : code_boxes) {
    std::vector<TableEntry> entries{TableEntry{{}, 0, 0, {cb.value}}};
    for (std::size_t k = 0; k < used.size(); ++k) {
      std::vector<TableEntry> next;
      for (const Prefix& p : range_to_prefixes(cb.codes[k].first, cb.codes[k].second, key_widths[k]))
        for (const TableEntry& e : entries) {
          TableEntry grown = e;
          grown.keys.push_back(prefix_to_ternary(p, key_widths[k]));
          next.push_back(std::move(grown));
        }
      entries = std::move(next);
    }
    auto& score = tally[cb.value];
    if (by_frequency) {
      score.first += 1;
      score.second += entries.size();
    } else {
      score.first += entries.size();
    }
    per_leaf.push_back(std::move(entries));
  }
  const std::uint64_t fallback = pick_default(tally);
  for (std::size_t l = 0; l < code_boxes.size(); ++l) {
    if (cfg.use_default_action && code_boxes[l].value == fallback) continue;
    for (TableEntry& e : per_leaf[l]) table.entries.push_back(std::move(e));
  }
  assign_ternary_priorities(table.entries, key_widths);
  table.default_action = {0, {fallback}};
  b.count_entries(table.entries.size(), cfg.entry_budget);
}

// Decision table over per-tree outputs: every reachable tuple -> label.
void build_decision_table(ProgramBuilder& b, const ConvertConfig& cfg,
                          const std::vector<std::string>& keys,
                          const std::vector<std::pair<std::vector<std::uint64_t>, std::uint64_t>>& rows,
                          const std::string& label) {
  Table& table = b.table("decision", MatchKind::kExact, keys);
  table.actions.push_back({"set_label", {label}});
  std::map<std::uint64_t, std::pair<std::size_t, std::size_t>> tally;
  for (const auto& row : rows) ++tally[row.second].first;
  const std::uint64_t fallback = tally.empty() ? 0 : pick_default(tally);
  for (const auto& [tuple, result] : rows) {
    if (cfg.use_default_action && result == fallback) continue;
    TableEntry e;
    for (std::uint64_t v : tuple) e.keys.push_back(MatchKey::exact(v));
    e.action_data = {result};
    table.entries.push_back(std::move(e));
  }
  table.default_action = {0, {fallback}};
  b.count_entries(table.entries.size(), cfg.entry_budget);
}

void require_family(const ModelSpec& spec, Family family, const char* mapper) {
  if (spec.family != family)
    throw ValidationError(std::string(mapper) + ": expected a " + std::string(family_name(family)) +
                          " model, got " + std::string(family_name(spec.family)));
}

void echo_common(ProgramBuilder& b, const ConvertConfig& cfg) {
  b.set_config("feature_match", std::string(match_kind_name(cfg.feature_match)));
  b.set_config("default_action", cfg.use_default_action ? "on" : "off");
}

}  // namespace

std::vector<std::pair<std::uint64_t, std::uint64_t>> tree_feature_intervals(const Tree& tree, int feature,
                                                                            std::uint64_t max_value) {
  std::vector<std::uint64_t> thresholds;
  for (const TreeNode& node : tree.nodes)
    if (!node.is_leaf() && node.feature == feature) thresholds.push_back(node.threshold);
  return intervals_from_thresholds(std::move(thresholds), max_value);
}

std::vector<std::vector<int>> reachable_leaf_tuples(const ModelSpec& spec, std::uint64_t budget) {
  const auto& trees = spec.trees().trees;
  std::vector<std::vector<LeafBox>> boxes;
  for (const Tree& tree : trees) boxes.push_back(leaf_boxes(tree, spec.schema));
  std::vector<std::vector<int>> out;
  std::vector<int> tuple(trees.size(), 0);
  std::vector<Interval> root;
  for (std::size_t f = 0; f < spec.schema.size(); ++f) root.emplace_back(0, spec.schema.max_value(f));

  std::function<void(std::size_t, const std::vector<Interval>&)> walk =
      [&](std::size_t t, const std::vector<Interval>& box) {
        if (t == trees.size()) {
          out.push_back(tuple);
          detail::check_budget(out.size(), budget, "reachable leaf tuples");
          return;
        }
        std::vector<Interval> next(box.size());
        for (const LeafBox& leaf : boxes[t]) {
          bool empty = false;
          for (std::size_t f = 0; f < box.size() && !empty; ++f) {
            next[f] = {std::max(box[f].first, leaf.box[f].first), std::min(box[f].second, leaf.box[f].second)};
            empty = next[f].first > next[f].second;
          }
          if (empty) continue;
          tuple[t] = leaf.node;
          walk(t + 1, next);
        }
      };
  walk(0, root);
  return out;
}

PipelineProgram map_dt_eb(const ModelSpec& spec, const ConvertConfig& cfg) {
  require_family(spec, Family::kDt, "map_dt_eb");
  ProgramBuilder b(spec, Variant::kEb);
  echo_common(b, cfg);
  const ForestLayout layout = layout_forest(b, spec);
  const std::string label = b.field("label", bits_for(spec.n_classes));
  build_feature_tables(b, spec, cfg, layout);
  const Tree& tree = spec.trees().trees[0];
  build_tree_table(b, spec, cfg, layout, 0, "decision", label,
                   [&](int node) { return static_cast<std::uint64_t>(tree.nodes[node].label); }, true);
  b.label_output(label);
  return b.finish();
}

PipelineProgram map_rf_eb(const ModelSpec& spec, const ConvertConfig& cfg) {
  require_family(spec, Family::kRf, "map_rf_eb");
  ProgramBuilder b(spec, Variant::kEb);
  echo_common(b, cfg);
  b.set_config("vote", cfg.vote_mode == VoteMode::kTable ? "table" : "logic");
  const auto& trees = spec.trees().trees;
  const ForestLayout layout = layout_forest(b, spec);
  const std::string label = b.field("label", bits_for(spec.n_classes));
  build_feature_tables(b, spec, cfg, layout);
  std::vector<std::string> votes;
  for (std::size_t t = 0; t < trees.size(); ++t) {
    votes.push_back(b.field("vote_t" + std::to_string(t), bits_for(spec.n_classes)));
    build_tree_table(b, spec, cfg, layout, t, "tree_t" + std::to_string(t), votes.back(),
                     [&](int node) { return static_cast<std::uint64_t>(trees[t].nodes[node].label); },
                     true);
  }
  if (cfg.vote_mode == VoteMode::kLogic) {
    b.vote_logic(votes, spec.n_classes, label);
  } else {
    std::map<std::vector<std::uint64_t>, std::uint64_t> rows;
    for (const auto& leaves : reachable_leaf_tuples(spec, cfg.entry_budget)) {
      std::vector<std::uint64_t> labels;
      std::vector<int> v;
      for (std::size_t t = 0; t < trees.size(); ++t) {
        labels.push_back(static_cast<std::uint64_t>(trees[t].nodes[leaves[t]].label));
        v.push_back(trees[t].nodes[leaves[t]].label);
      }
      rows.emplace(std::move(labels), majority_label(v, spec.n_classes));
    }
    build_decision_table(b, cfg, votes, {rows.begin(), rows.end()}, label);
  }
  b.label_output(label);
  return b.finish();
}

namespace {

// Shared by xgb and iforest: per-tree leaf ids, then a decision table whose
// labels are computed offline for every reachable leaf tuple.
PipelineProgram map_leaf_tuple_forest(const ModelSpec& spec, const ConvertConfig& cfg,
                                      const std::function<Label(const std::vector<int>&)>& decide) {
  ProgramBuilder b(spec, Variant::kEb);
  echo_common(b, cfg);
  const auto& trees = spec.trees().trees;
  const ForestLayout layout = layout_forest(b, spec);
  const std::string label = b.field("label", bits_for(spec.n_classes));
  build_feature_tables(b, spec, cfg, layout);
  std::vector<std::string> leaf_fields;
  std::vector<std::vector<int>> ids;
  for (std::size_t t = 0; t < trees.size(); ++t) {
    ids.push_back(leaf_ids(trees[t]));
    leaf_fields.push_back(b.field("leaf_t" + std::to_string(t), bits_for(leaf_count(trees[t]))));
    build_tree_table(b, spec, cfg, layout, t, "tree_t" + std::to_string(t), leaf_fields.back(),
                     [&, t](int node) { return static_cast<std::uint64_t>(ids[t][node]); }, false);
  }
  std::vector<std::pair<std::vector<std::uint64_t>, std::uint64_t>> rows;
  for (const auto& leaves : reachable_leaf_tuples(spec, cfg.entry_budget)) {
    std::vector<std::uint64_t> key;
    for (std::size_t t = 0; t < trees.size(); ++t) key.push_back(static_cast<std::uint64_t>(ids[t][leaves[t]]));
    rows.emplace_back(std::move(key), decide(leaves));
  }
  build_decision_table(b, cfg, leaf_fields, rows, label);
  b.label_output(label);
  return b.finish();
}

}  // namespace

PipelineProgram map_xgb_eb(const ModelSpec& spec, const ConvertConfig& cfg) {
  require_family(spec, Family::kXgb, "map_xgb_eb");
  return map_leaf_tuple_forest(spec, cfg, [&](const std::vector<int>& leaves) {
    return xgb_label(xgb_margins(spec, leaves));
  });
}

PipelineProgram map_if_eb(const ModelSpec& spec, const ConvertConfig& cfg) {
  require_family(spec, Family::kIForest, "map_if_eb");
  const double threshold = spec.trees().iforest.threshold();
  return map_leaf_tuple_forest(spec, cfg, [&](const std::vector<int>& leaves) {
    return iforest_label(iforest_mean_path_length(spec, leaves), threshold);
  });
}

namespace {

// Quadtree over a shared 2^w feature domain. A cell at depth d' is addressed by
// the top d' bits of every feature; children are numbered with feature 0 as
// the most significant selector bit.
PipelineProgram map_quadtree(const ModelSpec& spec, const ConvertConfig& cfg,
                             const std::function<Label(const std::vector<double>&)>& label_at) {
  const int n = static_cast<int>(spec.schema.size());
  const int w = spec.schema.width(0);
  for (int f = 1; f < n; ++f)
    if (spec.schema.width(f) != w)
      throw ValidationError("features[" + std::to_string(f) +
                            "].bit_width: quadtree encoding needs one shared feature width");
  if (n > 16) throw BudgetError("quadtree encoding supports at most 16 features");
  if (cfg.max_depth < 0) throw ValidationError("max_depth must be >= 0");
  const int depth = std::min(cfg.max_depth, w);
  if (depth * n > cfg.key_bits_budget)
    throw BudgetError("quadtree code needs " + std::to_string(depth * n) + " key bits, budget is " +
                      std::to_string(cfg.key_bits_budget));

  ProgramBuilder b(spec, Variant::kEb);
  b.set_config("max_depth", std::to_string(depth));
  const std::string label = b.field("label", bits_for(spec.n_classes));
  std::vector<std::string> cells;
  const int cell_width = std::max(depth, 1);
  for (int f = 0; f < n; ++f) {
    cells.push_back(b.field("cell_f" + std::to_string(f), cell_width));
    if (depth == 0)
      b.op(OpCode::kConst, cells.back(), {}, 0);
    else
      b.op(OpCode::kShr, cells.back(), {b.input(f)}, static_cast<std::uint64_t>(w - depth));
  }

  std::map<std::vector<std::uint64_t>, Label> corner_cache;
  auto corner_label = [&](const std::vector<std::uint64_t>& corner) {
    auto it = corner_cache.find(corner);
    if (it != corner_cache.end()) return it->second;
    std::vector<double> p(corner.begin(), corner.end());
    Label l = label_at(p);
    corner_cache.emplace(corner, l);
    return l;
  };

  struct Cell {
    std::vector<std::uint64_t> prefix;
    int depth;
    Label label;
  };
  std::vector<Cell> emitted;
  std::function<void(std::vector<std::uint64_t>&, int)> split = [&](std::vector<std::uint64_t>& prefix, int d) {
    const int shift = w - d;
    std::vector<std::uint64_t> lo(n), hi(n);
    for (int f = 0; f < n; ++f) {
      lo[f] = prefix[f] << shift;
      hi[f] = lo[f] + width_mask(shift);
    }
    std::vector<std::uint64_t> corner(n);
    bool agree = true;
    Label first = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n) && agree; ++mask) {
      for (int f = 0; f < n; ++f) corner[f] = (mask >> (n - 1 - f)) & 1U ? hi[f] : lo[f];
      const Label l = corner_label(corner);
      if (mask == 0) first = l;
      agree = l == first;
    }
    if (agree || d == depth) {
      Label l = first;
      if (!agree) {
        std::vector<double> centre(n);
        for (int f = 0; f < n; ++f) centre[f] = (static_cast<double>(lo[f]) + static_cast<double>(hi[f])) / 2.0;
        l = label_at(centre);
      }
      emitted.push_back({prefix, d, l});
      detail::check_budget(emitted.size(), cfg.entry_budget, "quadtree");
      return;
    }
    for (std::uint64_t child = 0; child < (std::uint64_t{1} << n); ++child) {
      std::vector<std::uint64_t> next(n);
      for (int f = 0; f < n; ++f) next[f] = (prefix[f] << 1) | ((child >> (n - 1 - f)) & 1U);
      split(next, d + 1);
    }
  };
  std::vector<std::uint64_t> root(n, 0);
  split(root, 0);

  Table& table = b.table("quadtree", MatchKind::kTernary, cells);
  table.actions.push_back({"set_label", {label}});
  std::map<std::uint64_t, std::pair<std::size_t, std::size_t>> tally;
  for (const Cell& c : emitted) ++tally[c.label].first;
  for (const Cell& c : emitted) {
    TableEntry e;
    for (int f = 0; f < n; ++f) {
      // A depth-d' prefix occupies the top d' bits of the depth-wide cell code.
      const int pad = depth - c.depth;
      e.keys.push_back(MatchKey::ternary(c.prefix[f] << pad, width_mask(depth) & ~width_mask(pad)));
    }
    e.action_data = {c.label};
    table.entries.push_back(std::move(e));
  }
  const std::vector<int> widths(n, cell_width);
  assign_ternary_priorities(table.entries, widths);
  table.default_action = {0, {pick_default(tally)}};
  b.count_entries(table.entries.size(), cfg.entry_budget);
  b.label_output(label);
  return b.finish();
}

}  // namespace

PipelineProgram map_km_eb(const ModelSpec& spec, const ConvertConfig& cfg) {
  require_family(spec, Family::kKMeans, "map_km_eb");
  const auto& centroids = spec.as<KMeansParams>().centroids;
  return map_quadtree(spec, cfg, [&](const std::vector<double>& p) {
    Label best = 0;
    double best_d = 0.0;
    for (std::size_t c = 0; c < centroids.size(); ++c) {
      double d = 0.0;
      for (std::size_t f = 0; f < p.size(); ++f) d += (p[f] - centroids[c][f]) * (p[f] - centroids[c][f]);
      if (c == 0 || d < best_d) {
        best = static_cast<Label>(c);
        best_d = d;
      }
    }
    return best;
  });
}

PipelineProgram map_knn_eb(const ModelSpec& spec, const ConvertConfig& cfg) {
  require_family(spec, Family::kKnn, "map_knn_eb");
  const auto& knn = spec.as<KnnParams>();
  return map_quadtree(spec, cfg, [&](const std::vector<double>& p) {
    std::vector<std::pair<double, std::size_t>> order;
    for (std::size_t i = 0; i < knn.points.size(); ++i) {
      double d = 0.0;
      for (std::size_t f = 0; f < p.size(); ++f) {
        const double diff = p[f] - static_cast<double>(knn.points[i][f]);
        d += diff * diff;
      }
      order.emplace_back(d, i);
    }
    std::partial_sort(order.begin(), order.begin() + knn.k, order.end());
    std::vector<int> votes;
    for (int i = 0; i < knn.k; ++i) votes.push_back(knn.labels[order[i].second]);
    return majority_label(votes, spec.n_classes);
  });
}

}  // namespace tablewright
