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

#include "builder.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "tablewright/error.hpp"

namespace tablewright::detail {

std::string sanitize(const std::string& name) {
  std::string out;
  for (char c : name) out.push_back(std::isalnum(static_cast<unsigned char>(c)) ? c : '_');
  if (out.empty() || std::isdigit(static_cast<unsigned char>(out.front()))) out.insert(0, "f");
  return out;
}

void check_budget(std::uint64_t count, std::uint64_t budget, const std::string& what) {
  if (count > budget)
    throw BudgetError(what + " needs " + std::to_string(count) + " entries, budget is " +
                      std::to_string(budget));
}

ProgramBuilder::ProgramBuilder(const ModelSpec& spec, Variant variant) {
  program_.family = std::string(family_name(spec.family));
  program_.variant = std::string(variant_name(variant));
  program_.name = program_.family + "_" + program_.variant;
  std::set<std::string> used;
  for (std::size_t i = 0; i < spec.schema.size(); ++i) {
    std::string name = "in_" + sanitize(spec.schema.features[i].name);
    if (!used.insert(name).second) name += "_" + std::to_string(i);
    used.insert(name);
    program_.fields.push_back({name, spec.schema.width(i)});
    program_.inputs.push_back(name);
  }
  set_config("variant", program_.variant);
}

std::string ProgramBuilder::field(const std::string& name, int width) {
  for (const FieldDecl& f : program_.fields)
    if (f.name == name) return f.name;
  program_.fields.push_back({name, std::clamp(width, 1, 64)});
  return program_.fields.back().name;
}

Table& ProgramBuilder::table(const std::string& name, MatchKind kind, std::vector<std::string> keys) {
  Table t;
  t.name = name;
  t.kind = kind;
  t.keys = std::move(keys);
  program_.tables.push_back(std::move(t));
  return program_.tables.back();
}

void ProgramBuilder::op(OpCode code, const std::string& dst, std::vector<std::string> srcs,
                        std::uint64_t imm) {
  program_.logic.push_back({code, dst, std::move(srcs), imm, {}});
}

void ProgramBuilder::reg_read(const std::string& dst, const std::string& reg, std::uint64_t index) {
  program_.logic.push_back({OpCode::kRegRead, dst, {}, index, reg});
}

void ProgramBuilder::reg(const std::string& name, int width, std::vector<std::uint64_t> values) {
  program_.registers.push_back({name, width, std::move(values)});
}

std::string ProgramBuilder::sum(std::vector<std::string> terms, std::uint64_t imm, int width,
                                const std::string& prefix) {
  if (terms.empty()) {
    std::string dst = field(prefix, width);
    op(OpCode::kConst, dst, {}, imm);
    return dst;
  }
  int level = 0;
  bool imm_pending = imm != 0;
  if (terms.size() == 1 && imm_pending) {
    std::string dst = field(prefix, width);
    op(OpCode::kAdd, dst, {terms[0]}, imm);
    return dst;
  }
  while (terms.size() > 1) {
    std::vector<std::string> next;
    for (std::size_t i = 0; i + 1 < terms.size(); i += 2) {
      std::string dst = field(prefix + "_l" + std::to_string(level) + "_" + std::to_string(i / 2), width);
      op(OpCode::kAdd, dst, {terms[i], terms[i + 1]});
      next.push_back(dst);
    }
    if (terms.size() % 2 == 1) {
      // The odd term absorbs the immediate when one is still pending.
      if (imm_pending) {
        const std::string& dst =
            field(prefix + "_l" + std::to_string(level) + "_" + std::to_string(terms.size() / 2), width);
        op(OpCode::kAdd, dst, {terms.back()}, imm);
        imm_pending = false;
        next.push_back(dst);
      } else {
        next.push_back(terms.back());
      }
    }
    terms = std::move(next);
    ++level;
  }
  if (imm_pending) {
    std::string dst = field(prefix, width);
    op(OpCode::kAdd, dst, {terms[0]}, imm);
    return dst;
  }
  return terms[0];
}

void ProgramBuilder::vote_logic(const std::vector<std::string>& votes, int n_classes,
                                const std::string& dst) {
  const int count_width = bits_for(votes.size() + 1);
  std::vector<std::string> counts;
  for (int c = 0; c < n_classes; ++c) {
    std::vector<std::string> hits;
    for (std::size_t t = 0; t < votes.size(); ++t) {
      std::string hit = field("hit_c" + std::to_string(c) + "_t" + std::to_string(t), count_width);
      op(OpCode::kEq, hit, {votes[t]}, static_cast<std::uint64_t>(c));
      hits.push_back(hit);
    }
    counts.push_back(sum(hits, 0, count_width, "count_c" + std::to_string(c)));
  }
  op(OpCode::kArgmax, dst, counts);
}

void ProgramBuilder::set_config(const std::string& key, const std::string& value) {
  for (auto& [k, v] : program_.config)
    if (k == key) {
      v = value;
      return;
    }
  program_.config.emplace_back(key, value);
}

void ProgramBuilder::label_output(const std::string& f) {
  program_.output_kind = OutputKind::kLabel;
  program_.outputs = {f};
  program_.output_scales.clear();
}

void ProgramBuilder::vector_output(std::vector<std::string> fields, std::vector<OutputScale> scales) {
  program_.output_kind = OutputKind::kVector;
  program_.outputs = std::move(fields);
  program_.output_scales = std::move(scales);
}

void ProgramBuilder::count_entries(std::size_t n, std::uint64_t budget) {
  entries_ += n;
  check_budget(entries_, budget, "program " + program_.name);
}

PipelineProgram ProgramBuilder::finish() {
  require_valid(program_);
  return std::move(program_);
}

}  // namespace tablewright::detail
