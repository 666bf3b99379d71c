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

#ifndef TABLEWRIGHT_SRC_BUILDER_HPP_
#define TABLEWRIGHT_SRC_BUILDER_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "tablewright/mapping.hpp"
#include "tablewright/model_spec.hpp"
#include "tablewright/program.hpp"

namespace tablewright::detail {

// Incremental PipelineProgram construction shared by the converters.
class ProgramBuilder {
 public:
  ProgramBuilder(const ModelSpec& spec, Variant variant);

  const std::string& input(std::size_t feature) const { return program_.inputs[feature]; }
  const std::vector<std::string>& inputs() const { return program_.inputs; }

  std::string field(const std::string& name, int width);
  Table& table(const std::string& name, MatchKind kind, std::vector<std::string> keys);
  void op(OpCode code, const std::string& dst, std::vector<std::string> srcs,
          std::uint64_t imm = 0);
  void reg_read(const std::string& dst, const std::string& reg, std::uint64_t index);
  void reg(const std::string& name, int width, std::vector<std::uint64_t> values);

  // Balanced binary tree of adds; the immediate is folded into the first add.
  std::string sum(std::vector<std::string> terms, std::uint64_t imm, int width,
                  const std::string& prefix);
  // Plurality over per-tree label fields, lowest label on ties.
  void vote_logic(const std::vector<std::string>& votes, int n_classes, const std::string& dst);

  void set_config(const std::string& key, const std::string& value);
  void label_output(const std::string& field);
  void vector_output(std::vector<std::string> fields, std::vector<OutputScale> scales);

  PipelineProgram finish();

  std::size_t entries() const { return entries_; }
  void count_entries(std::size_t n, std::uint64_t budget);

 private:
  PipelineProgram program_;
  std::size_t entries_ = 0;
};

std::string sanitize(const std::string& name);
void check_budget(std::uint64_t count, std::uint64_t budget, const std::string& what);

}  // namespace tablewright::detail

#endif  // TABLEWRIGHT_SRC_BUILDER_HPP_
