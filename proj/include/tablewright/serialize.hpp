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

#ifndef TABLEWRIGHT_SERIALIZE_HPP_
#define TABLEWRIGHT_SERIALIZE_HPP_

#include <string>
#include <string_view>

#include "tablewright/program.hpp"

namespace tablewright {

// Canonical program document ("schema_version": 1). With include_entries
// false, tables keep their structure and default actions but no entries and
// registers carry no values; emit_entries() supplies the rest.
std::string program_to_json(const PipelineProgram& program, bool include_entries = true, int indent = 2);
PipelineProgram program_from_json(std::string_view text);

// Entries document: per-table entries and defaults plus register initializers.
std::string emit_entries(const PipelineProgram& program, int indent = 2);

// Replaces the entries, defaults and register values of `program` with the
// contents of an entries document. Throws ValidationError when a table or
// action is unknown or the result fails check_program().
PipelineProgram apply_entries(PipelineProgram program, std::string_view entries_text);

// Register contents as bit rows (most significant bit first); empty when the
// program has no registers.
std::string emit_weights(const PipelineProgram& program, int indent = 2);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

}  // namespace tablewright

#endif  // TABLEWRIGHT_SERIALIZE_HPP_
