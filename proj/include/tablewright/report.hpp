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

#ifndef TABLEWRIGHT_REPORT_HPP_
#define TABLEWRIGHT_REPORT_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "tablewright/program.hpp"

namespace tablewright {

enum class Profile { kSoftware, kHardware };

Profile profile_from_name(std::string_view name);
std::string_view profile_name(Profile p);

// Per-stage budgets applied by Profile::kHardware. Overruns become warnings.
struct HardwareLimits {
  int max_stages = 12;
  int max_tables_per_stage = 16;
  std::uint64_t max_entries_per_table = 65536;
  std::uint64_t max_ternary_entries_per_stage = 24 * 512;
  int max_key_bits = 512;
  int max_action_bits = 1024;
};

struct TableReport {
  std::string name;
  std::string match_kind;
  std::size_t entries = 0;
  int key_bits = 0;
  int action_bits = 0;  // widest action's data
  int stage = 0;
};

struct ResourceReport {
  std::string program;
  std::string family;
  std::string variant;
  std::vector<TableReport> tables;
  std::size_t total_entries = 0;
  int stages = 0;
  int max_key_bits = 0;
  int max_action_bits = 0;
  int total_action_bits = 0;
  std::uint64_t register_bits = 0;
  std::size_t logic_ops = 0;
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<std::string> warnings;
};

ResourceReport resource_report(const PipelineProgram& program, Profile profile = Profile::kSoftware,
                               const HardwareLimits& limits = {});

std::string report_to_json(const ResourceReport& report, int indent = 2);
// One header and one row per report; config values are not included.
std::string report_csv_header();
std::string report_csv_row(const ResourceReport& report);

}  // namespace tablewright

#endif  // TABLEWRIGHT_REPORT_HPP_
