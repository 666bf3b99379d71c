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

#include "tablewright/table_utils.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "tablewright/error.hpp"

namespace tablewright {

Quantizer::Quantizer(const QuantizerConfig& cfg) {
  const int bits = std::clamp(cfg.n_bits, 1, 62);
  const std::uint64_t terms = static_cast<std::uint64_t>(std::max(cfg.n_terms, 1));
  domain_ = std::max<std::uint64_t>((std::uint64_t{1} << bits) / terms, 1);
  const double span = cfg.hi - cfg.lo;
  scale_ = span > 0.0 ? static_cast<double>(domain_ - 1) / span : 1.0;
  if (cfg.power_of_two_scale) scale_ = std::exp2(std::floor(std::log2(scale_)));
  zero_ = static_cast<std::int64_t>(std::llround(-cfg.lo * scale_));
}

std::uint64_t Quantizer::operator()(double v) const {
  const double word = std::round(v * scale_) + static_cast<double>(zero_);
  if (!(word > 0.0)) return 0;
  const double top = static_cast<double>(domain_ - 1);
  if (word >= top) return domain_ - 1;
  return static_cast<std::uint64_t>(word);
}

double Quantizer::dequantize_sum(std::uint64_t sum, int terms) const {
  return (static_cast<double>(sum) - static_cast<double>(zero_) * terms) / scale_;
}

std::uint64_t quantize_map(double v, const QuantizerConfig& cfg) { return Quantizer(cfg)(v); }

std::vector<Prefix> range_to_prefixes(std::uint64_t lo, std::uint64_t hi, int width) {
  if (width < 0 || width > 64) throw ValidationError("range_to_prefixes: width must be in 0..64");
  if (lo > hi) throw ValidationError("range_to_prefixes: lo > hi");
  if (hi > width_mask(width)) throw ValidationError("range_to_prefixes: hi outside the key width");
  std::vector<Prefix> out;
  std::uint64_t cur = lo;
  while (true) {
    // Largest aligned block starting at cur that stays inside [cur, hi].
    int block = cur == 0 ? width : std::min(std::countr_zero(cur), width);
    while (block > 0 && (block >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << block) - 1) > hi - cur)
      --block;
    out.push_back({cur, width - block});
    const std::uint64_t last = cur + width_mask(block);
    if (last >= hi) break;
    cur = last + 1;
  }
  return out;
}

MatchKey prefix_to_ternary(const Prefix& p, int width) {
  const std::uint64_t mask = width_mask(width) & ~width_mask(width - p.prefix_len);
  return MatchKey::ternary(p.value, mask);
}

namespace {

struct Run {
  std::uint64_t lo, hi;
  const TableEntry* entry;
};

std::vector<Run> action_runs(std::span<const TableEntry> entries, int width) {
  std::vector<const TableEntry*> sorted;
  for (const TableEntry& e : entries) {
    if (e.keys.size() != 1 || e.keys[0].kind != MatchKind::kExact)
      throw ValidationError("table transformer expects single-key exact entries");
    if (e.keys[0].value > width_mask(width))
      throw ValidationError("table transformer: key wider than " + std::to_string(width) + " bits");
    sorted.push_back(&e);
  }
  std::stable_sort(sorted.begin(), sorted.end(), [](const TableEntry* a, const TableEntry* b) {
    return a->keys[0].value < b->keys[0].value;
  });
  std::vector<Run> runs;
  for (const TableEntry* e : sorted) {
    const std::uint64_t v = e->keys[0].value;
    if (!runs.empty() && runs.back().hi == v) {
      const TableEntry* prev = runs.back().entry;
      if (prev->action_id != e->action_id || prev->action_data != e->action_data)
        throw ValidationError("table transformer: conflicting entries for key " + std::to_string(v));
      continue;
    }
    if (!runs.empty() && runs.back().hi + 1 == v && runs.back().entry->action_id == e->action_id &&
        runs.back().entry->action_data == e->action_data) {
      runs.back().hi = v;
      continue;
    }
    runs.push_back({v, v, e});
  }
  return runs;
}

}  // namespace

std::vector<TableEntry> exact_to_ternary(std::span<const TableEntry> entries, int width) {
  std::vector<TableEntry> out;
  for (const Run& run : action_runs(entries, width))
    for (const Prefix& p : range_to_prefixes(run.lo, run.hi, width))
      out.push_back({{prefix_to_ternary(p, width)}, 0, run.entry->action_id, run.entry->action_data});
  const int widths[] = {width};
  assign_ternary_priorities(out, widths);
  return out;
}

std::vector<TableEntry> exact_to_lpm(std::span<const TableEntry> entries, int width) {
  std::vector<TableEntry> out;
  for (const Run& run : action_runs(entries, width))
    for (const Prefix& p : range_to_prefixes(run.lo, run.hi, width))
      out.push_back({{MatchKey::lpm(p.value, p.prefix_len, width)}, 0, run.entry->action_id,
                     run.entry->action_data});
  return out;
}

void assign_ternary_priorities(std::vector<TableEntry>& entries, std::span<const int> key_widths) {
  std::vector<int> specificity(entries.size(), 0);
  for (std::size_t e = 0; e < entries.size(); ++e)
    for (std::size_t k = 0; k < entries[e].keys.size() && k < key_widths.size(); ++k)
      specificity[e] += std::popcount(entries[e].keys[k].effective_mask(key_widths[k]));
  std::vector<std::size_t> rank(entries.size());
  std::iota(rank.begin(), rank.end(), 0);
  std::stable_sort(rank.begin(), rank.end(),
                   [&](std::size_t a, std::size_t b) { return specificity[a] > specificity[b]; });
  const int top = static_cast<int>(entries.size());
  for (std::size_t r = 0; r < rank.size(); ++r) entries[rank[r]].priority = top - static_cast<int>(r);
}

}  // namespace tablewright
