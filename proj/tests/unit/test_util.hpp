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


#ifndef TABLEWRIGHT_TESTS_TEST_UTIL_HPP_
#define TABLEWRIGHT_TESTS_TEST_UTIL_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "tablewright/mapping.hpp"
#include "tablewright/model_spec.hpp"
#include "tablewright/reference.hpp"
#include "tablewright/simulator.hpp"

namespace tablewright::testing {

inline std::string fixture_path(const std::string& name) {
  return std::string(TABLEWRIGHT_FIXTURE_DIR) + "/" + name;
}

inline ModelSpec fixture(const std::string& name) { return load_model_spec(fixture_path(name)); }

// Calls fn on every point of the schema's domain, first feature varying slowest.
inline void for_each_point(const FeatureSchema& schema, const std::function<void(const FeatureVector&)>& fn) {
  FeatureVector x(schema.size(), 0);
  while (true) {
    fn(x);
    std::size_t i = schema.size();
    while (i > 0) {
      --i;
      if (x[i] < schema.max_value(i)) {
        ++x[i];
        break;
      }
      x[i] = 0;
      if (i == 0) return;
    }
    if (schema.size() == 0) return;
  }
}

// Points where the program's label differs from the reference.
inline std::size_t label_mismatches(const ModelSpec& spec, const PipelineProgram& program) {
  Simulator sim(program);
  std::size_t bad = 0;
  for_each_point(spec.schema, [&](const FeatureVector& x) {
    if (sim.run(x).at(0) != reference_predict(spec, x)) ++bad;
  });
  return bad;
}

inline ConvertConfig config(Variant v, int n_bits = 8) {
  ConvertConfig cfg;
  cfg.variant = v;
  cfg.n_bits = n_bits;
  return cfg;
}

}  // namespace tablewright::testing

#endif  // TABLEWRIGHT_TESTS_TEST_UTIL_HPP_
