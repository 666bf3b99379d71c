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

#ifndef TABLEWRIGHT_TABLE_UTILS_HPP_
#define TABLEWRIGHT_TABLE_UTILS_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "tablewright/program.hpp"

namespace tablewright {

// Width used when a configuration asks for "full" precision.
inline constexpr int kFullPrecisionBits = 48;

// Affine fixed-point map into the word domain [0, 2^n_bits / n_terms).
// [lo, hi] is the range of real values the map was fitted on; values outside
// it saturate. Summing n_terms outputs never overflows an n_bits word.
struct QuantizerConfig {
  int n_bits = 8;
  int n_terms = 1;
  double lo = 0.0;
  double hi = 1.0;
  // Round the scale down to a power of two so integer-valued inputs quantize
  // without rounding error.
  bool power_of_two_scale = false;
};

class Quantizer {
 public:
  explicit Quantizer(const QuantizerConfig& cfg);

  std::uint64_t operator()(double v) const;
  // Number of representable words, 2^n_bits / n_terms.
  std::uint64_t domain() const { return domain_; }
  double scale() const { return scale_; }
  // Word offset added to every term (excess-K encoding of zero).
  std::int64_t zero() const { return zero_; }
  // Recovers the real sum of `terms` quantized values from their word sum.
  double dequantize_sum(std::uint64_t sum, int terms) const;

 private:
  std::uint64_t domain_ = 1;
  double scale_ = 1.0;
  std::int64_t zero_ = 0;
};

std::uint64_t quantize_map(double v, const QuantizerConfig& cfg);

struct Prefix {
  std::uint64_t value = 0;
  int prefix_len = 0;
  bool operator==(const Prefix&) const = default;
};

// Minimal set of aligned prefixes whose union is exactly [lo, hi].
// Throws ValidationError when lo > hi or hi does not fit in `width` bits.
std::vector<Prefix> range_to_prefixes(std::uint64_t lo, std::uint64_t hi, int width);

MatchKey prefix_to_ternary(const Prefix& p, int width);

// Collapse a single-key exact table into prefix entries covering maximal runs
// of consecutive keys that share an action. Keys absent from the input stay
// unmatched, so lookups keep falling through to the table default.
std::vector<TableEntry> exact_to_ternary(std::span<const TableEntry> entries, int width);
std::vector<TableEntry> exact_to_lpm(std::span<const TableEntry> entries, int width);

// Assigns unique ternary priorities: longer masks first, then insertion order.
void assign_ternary_priorities(std::vector<TableEntry>& entries, std::span<const int> key_widths);

}  // namespace tablewright

#endif  // TABLEWRIGHT_TABLE_UTILS_HPP_
