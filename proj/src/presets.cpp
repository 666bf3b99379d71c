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

#include "tablewright/presets.hpp"

#include <string>

#include "tablewright/error.hpp"

namespace tablewright {

Preset preset_from_name(std::string_view name) {
  if (name == "S" || name == "s") return Preset::kS;
  if (name == "M" || name == "m") return Preset::kM;
  if (name == "L" || name == "l") return Preset::kL;
  if (name == "H" || name == "h") return Preset::kH;
  throw ValidationError("unknown preset '" + std::string(name) + "' (expected S, M, L or H)");
}

std::string_view preset_name(Preset p) {
  switch (p) {
    case Preset::kS:
      return "S";
    case Preset::kM:
      return "M";
    case Preset::kL:
      return "L";
    case Preset::kH:
      return "H";
  }
  return "S";
}

PresetParams preset_params(Preset p) {
  switch (p) {
    case Preset::kS:
      return {8, 4, 6, 1000, 3, 128, 2, 5, 16};
    case Preset::kM:
      return {16, 5, 9, 1000, 9, 128, 3, 5, 32};
    case Preset::kL:
      return {32, 6, 12, 1000, 12, 128, 4, 5, 48};
    case Preset::kH:
      return {0, 30, 200, 100000, 200, 1280, 0, 5, 48};
  }
  return {};
}

void apply_preset(ConvertConfig& cfg, Family family, Preset preset) {
  const PresetParams params = preset_params(preset);
  cfg.n_bits = params.action_bits == 0 ? kFullPrecisionBits : params.action_bits;
  if (family == Family::kKMeans || family == Family::kKnn)
    cfg.max_depth = params.quadtree_depth == 0 ? 64 : params.quadtree_depth;
  else if (is_tree_family(family))
    cfg.max_depth = params.tree_depth;
}

}  // namespace tablewright
