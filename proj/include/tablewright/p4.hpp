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

#ifndef TABLEWRIGHT_P4_HPP_
#define TABLEWRIGHT_P4_HPP_

#include <string>
#include <string_view>

#include "tablewright/program.hpp"

namespace tablewright {

enum class Arch { kV1model };

Arch arch_from_name(std::string_view name);

// P4-16 source for `program`. Inputs arrive in a custom header after
// Ethernet; outputs are written to a result header. Table entries and
// register contents are not part of the source (see emit_entries). Output is
// deterministic and byte-stable.
std::string emit_p4(const PipelineProgram& program, Arch arch = Arch::kV1model);

}  // namespace tablewright

#endif  // TABLEWRIGHT_P4_HPP_
