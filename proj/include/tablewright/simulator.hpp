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

#ifndef TABLEWRIGHT_SIMULATOR_HPP_
#define TABLEWRIGHT_SIMULATOR_HPP_

#include <cstdint>
#include <memory>
#include <vector>

#include "tablewright/model_spec.hpp"
#include "tablewright/program.hpp"

namespace tablewright {

// Executes a PipelineProgram one input at a time. Construction validates the
// program, schedules it, and precompiles lookup structures; run() is const and
// reentrant, so one Simulator may serve many threads.
//
// Table semantics: exact keys must equal the packed key; ternary tables return
// the matching entry of highest priority; lpm tables return the longest
// matching prefix. A miss executes the default action.
class Simulator {
 public:
  explicit Simulator(const PipelineProgram& program);
  ~Simulator();
  Simulator(Simulator&&) noexcept;
  Simulator& operator=(Simulator&&) noexcept;

  // Output words (one label word for classifiers).
  std::vector<std::uint64_t> run(const FeatureVector& x) const;
  int total_stages() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

std::vector<std::uint64_t> simulate(const PipelineProgram& program, const FeatureVector& x);

}  // namespace tablewright

#endif  // TABLEWRIGHT_SIMULATOR_HPP_
