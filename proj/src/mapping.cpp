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

#include "tablewright/mapping.hpp"

#include <algorithm>
#include <string>

#include "tablewright/error.hpp"

namespace tablewright {

std::string_view variant_name(Variant v) {
  switch (v) {
    case Variant::kEb:
      return "eb";
    case Variant::kLb:
      return "lb";
    case Variant::kDm:
      return "dm";
  }
  return "eb";
}

Variant variant_from_name(std::string_view name) {
  if (name == "eb") return Variant::kEb;
  if (name == "lb") return Variant::kLb;
  if (name == "dm") return Variant::kDm;
  throw ValidationError("unknown variant '" + std::string(name) + "' (expected eb, lb or dm)");
}

std::vector<Variant> supported_variants(Family family) {
  switch (family) {
    case Family::kDt:
    case Family::kRf:
      return {Variant::kEb, Variant::kDm};
    case Family::kXgb:
    case Family::kIForest:
    case Family::kKnn:
      return {Variant::kEb};
    case Family::kKMeans:
      return {Variant::kLb, Variant::kEb};
    case Family::kSvm:
    case Family::kNb:
    case Family::kPca:
    case Family::kAe:
      return {Variant::kLb};
    case Family::kBnn:
      return {Variant::kDm};
  }
  return {};
}

Variant default_variant(Family family) { return supported_variants(family).front(); }

PipelineProgram convert(const ModelSpec& spec, const ConvertConfig& cfg) {
  validate(spec);
  const auto allowed = supported_variants(spec.family);
  if (std::find(allowed.begin(), allowed.end(), cfg.variant) == allowed.end())
    throw ValidationError("variant not supported for family: " + std::string(family_name(spec.family)) +
                          " has no " + std::string(variant_name(cfg.variant)) + " mapping");
  switch (spec.family) {
    case Family::kDt:
      return cfg.variant == Variant::kEb ? map_dt_eb(spec, cfg) : map_dt_dm(spec, cfg);
    case Family::kRf:
      return cfg.variant == Variant::kEb ? map_rf_eb(spec, cfg) : map_rf_dm(spec, cfg);
    case Family::kXgb:
      return map_xgb_eb(spec, cfg);
    case Family::kIForest:
      return map_if_eb(spec, cfg);
    case Family::kKMeans:
      return cfg.variant == Variant::kEb ? map_km_eb(spec, cfg) : map_km_lb(spec, cfg);
    case Family::kKnn:
      return map_knn_eb(spec, cfg);
    case Family::kSvm:
      return map_svm_lb(spec, cfg);
    case Family::kNb:
      return map_nb_lb(spec, cfg);
    case Family::kPca:
      return map_pca_lb(spec, cfg);
    case Family::kAe:
      return map_ae_lb(spec, cfg);
    case Family::kBnn:
      return map_bnn_dm(spec, cfg);
  }
  throw ValidationError("unknown family");
}

}  // namespace tablewright
