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

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "builder.hpp"
#include "tablewright/error.hpp"
#include "tablewright/mapping.hpp"

namespace tablewright {

namespace {

using detail::ProgramBuilder;

// Real-valued intermediate terms of one feature value, one per output.
using TermFn = std::function<std::vector<double>(std::size_t feature, std::uint64_t value)>;

struct LbLayout {
  Quantizer quantizer{QuantizerConfig{}};
  int n_terms = 1;
  std::vector<std::string> sums;  // one accumulator per output
};

std::vector<std::uint64_t> populated_values(const ModelSpec& spec, const ConvertConfig& cfg, std::size_t f) {
  const std::uint64_t max_value = spec.schema.max_value(f);
  const bool full = cfg.population == Population::kFullDomain ||
                    (cfg.population == Population::kAuto && spec.schema.width(f) <= 16);
  std::vector<std::uint64_t> values;
  if (full) {
    detail::check_budget(max_value + 1, cfg.entry_budget, "feature " + std::to_string(f) + " domain");
    values.resize(max_value + 1);
    for (std::uint64_t v = 0; v <= max_value; ++v) values[v] = v;
    return values;
  }
  if (f >= cfg.unique_values.size() || cfg.unique_values[f].empty())
    throw ValidationError("unique-value population needs observed values for feature " + std::to_string(f));
  values = cfg.unique_values[f];
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  if (values.back() > max_value)
    throw ValidationError("observed value " + std::to_string(values.back()) + " outside feature " +
                          std::to_string(f) + " domain");
  detail::check_budget(values.size(), cfg.entry_budget, "feature " + std::to_string(f) + " values");
  return values;
}

int checked_bits(const ConvertConfig& cfg) {
  if (cfg.n_bits < 2 || cfg.n_bits > 62) throw ValidationError("n_bits must be in 2..62");
  return cfg.n_bits;
}

// Builds the per-feature tables and the per-output adder trees. `terms` are
// clamped below at `floor` before quantization.
LbLayout build_lb(ProgramBuilder& b, const ModelSpec& spec, const ConvertConfig& cfg, std::size_t m,
                  const TermFn& terms, const std::vector<double>& bias, bool include_zero,
                  double floor = -std::numeric_limits<double>::infinity()) {
  const int n_bits = checked_bits(cfg);
  const std::size_t n = spec.schema.size();
  LbLayout layout;
  layout.n_terms = static_cast<int>(n + (bias.empty() ? 0 : 1));

  std::vector<std::vector<std::uint64_t>> values(n);
  std::vector<std::vector<std::vector<double>>> real(n);  // [feature][value index][output]
  std::vector<std::vector<double>> fallback(n);
  double lo = include_zero ? 0.0 : std::numeric_limits<double>::infinity();
  double hi = include_zero ? 0.0 : -std::numeric_limits<double>::infinity();
  auto widen = [&](std::vector<double>& row) {
    for (double& v : row) {
      v = std::max(v, floor);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  };
  for (std::size_t f = 0; f < n; ++f) {
    values[f] = populated_values(spec, cfg, f);
    for (std::uint64_t v : values[f]) {
      real[f].push_back(terms(f, v));
      widen(real[f].back());
    }
    fallback[f] = terms(f, spec.schema.max_value(f) / 2);
    widen(fallback[f]);
  }
  std::vector<double> bias_terms = bias;
  widen(bias_terms);

  QuantizerConfig qc{n_bits, layout.n_terms, lo, hi};
  qc.power_of_two_scale = n_bits >= kFullPrecisionBits;
  layout.quantizer = Quantizer(qc);
  if (layout.quantizer.domain() < 2)
    throw ValidationError("n_bits=" + std::to_string(n_bits) + " leaves no room for " +
                          std::to_string(layout.n_terms) + " summed terms");
  const Quantizer& q = layout.quantizer;
  auto words = [&](const std::vector<double>& row) {
    std::vector<std::uint64_t> out;
    for (double v : row) out.push_back(q(v));
    return out;
  };

  std::vector<std::vector<std::string>> ir(n);
  for (std::size_t f = 0; f < n; ++f) {
    ActionDef set{"set_ir_f" + std::to_string(f), {}};
    for (std::size_t j = 0; j < m; ++j) {
      ir[f].push_back(b.field("ir_f" + std::to_string(f) + "_" + std::to_string(j), n_bits));
      set.writes.push_back(ir[f].back());
    }
    std::vector<TableEntry> exact;
    for (std::size_t i = 0; i < values[f].size(); ++i)
      exact.push_back({{MatchKey::exact(values[f][i])}, 0, 0, words(real[f][i])});
    const int width = spec.schema.width(f);
    Table& table = b.table("feature_f" + std::to_string(f), cfg.lb_match, {b.input(f)});
    table.actions.push_back(std::move(set));
    if (cfg.lb_match == MatchKind::kTernary) {
      table.entries = exact_to_ternary(exact, width);
    } else if (cfg.lb_match == MatchKind::kLpm) {
      table.entries = exact_to_lpm(exact, width);
    } else {
      table.entries = std::move(exact);
    }
    table.default_action = {0, words(fallback[f])};
    b.count_entries(table.entries.size(), cfg.entry_budget);
  }

  const int acc_width = std::min(64, n_bits + bits_for(static_cast<std::uint64_t>(layout.n_terms)));
  const std::vector<std::uint64_t> bias_words = words(bias_terms);
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<std::string> column;
    for (std::size_t f = 0; f < n; ++f) column.push_back(ir[f][j]);
    const std::uint64_t imm = bias_words.empty() ? 0 : bias_words[j];
    layout.sums.push_back(b.sum(column, imm, acc_width, "acc_" + std::to_string(j)));
  }
  b.set_config("n_bits", std::to_string(n_bits));
  b.set_config("population", cfg.population == Population::kUnique       ? "unique"
                             : cfg.population == Population::kFullDomain ? "full-domain"
                                                                         : "auto");
  b.set_config("lb_match", std::string(match_kind_name(cfg.lb_match)));
  return layout;
}

void require_family(const ModelSpec& spec, Family family, const char* mapper) {
  if (spec.family != family)
    throw ValidationError(std::string(mapper) + ": expected a " + std::string(family_name(family)) +
                          " model, got " + std::string(family_name(spec.family)));
}

std::uint64_t zero_word(const LbLayout& layout) {
  return static_cast<std::uint64_t>(layout.quantizer.zero()) * static_cast<std::uint64_t>(layout.n_terms);
}

PipelineProgram vector_program(ProgramBuilder& b, const LbLayout& layout) {
  std::vector<OutputScale> scales(layout.sums.size(),
                                  {layout.quantizer.scale(), static_cast<double>(zero_word(layout))});
  b.vector_output(layout.sums, std::move(scales));
  return b.finish();
}

}  // namespace

PipelineProgram map_svm_lb(const ModelSpec& spec, const ConvertConfig& cfg) {
  require_family(spec, Family::kSvm, "map_svm_lb");
  const auto& planes = spec.as<SvmParams>().hyperplanes;
  ProgramBuilder b(spec, Variant::kLb);
  std::vector<double> bias;
  for (const Hyperplane& h : planes) bias.push_back(h.b);
  const LbLayout layout = build_lb(
      b, spec, cfg, planes.size(),
      [&](std::size_t f, std::uint64_t v) {
        std::vector<double> row;
        for (const Hyperplane& h : planes) row.push_back(h.w[f] * static_cast<double>(v));
        return row;
      },
      bias, true);

  // Offset-binary sums: real zero sits at n_terms * K.
  const std::uint64_t z = zero_word(layout);
  const int vote_width = bits_for(planes.size() + 1);
  std::vector<std::vector<std::string>> ballots(static_cast<std::size_t>(spec.n_classes));
  for (std::size_t j = 0; j < planes.size(); ++j) {
    const Hyperplane& h = planes[j];
    // A zero decision value votes for the lower class of the pair.
    const bool a_low = h.class_a < h.class_b;
    const std::string for_a = b.field("win_a_" + std::to_string(j), vote_width);
    const std::string for_b = b.field("win_b_" + std::to_string(j), vote_width);
    b.op(a_low ? OpCode::kGe : OpCode::kGt, for_a, {layout.sums[j]}, z);
    b.op(a_low ? OpCode::kLt : OpCode::kLe, for_b, {layout.sums[j]}, z);
    ballots[static_cast<std::size_t>(h.class_a)].push_back(for_a);
    ballots[static_cast<std::size_t>(h.class_b)].push_back(for_b);
  }
  std::vector<std::string> counts;
  for (int c = 0; c < spec.n_classes; ++c)
    counts.push_back(b.sum(ballots[static_cast<std::size_t>(c)], 0, vote_width, "votes_c" + std::to_string(c)));
  const std::string label = b.field("label", bits_for(spec.n_classes));
  b.op(OpCode::kArgmax, label, counts);
  b.label_output(label);
  return b.finish();
}

PipelineProgram map_nb_lb(const ModelSpec& spec, const ConvertConfig& cfg) {
  require_family(spec, Family::kNb, "map_nb_lb");
  const auto& nb = spec.as<NbParams>();
  const std::size_t k = nb.priors.size();
  ProgramBuilder b(spec, Variant::kLb);
  std::vector<double> bias;
  for (double p : nb.priors) bias.push_back(std::log2(p));
  const int n_bits = checked_bits(cfg);
  const double terms_count = static_cast<double>(spec.schema.size() + 1);
  const double domain = std::floor(std::exp2(n_bits) / terms_count);
  const LbLayout layout = build_lb(
      b, spec, cfg, k,
      [&](std::size_t f, std::uint64_t v) {
        std::vector<double> row;
        for (std::size_t c = 0; c < k; ++c) {
          const double var = nb.variances[c][f];
          const double d = static_cast<double>(v) - nb.means[c][f];
          row.push_back((-0.5 * std::log(2.0 * std::numbers::pi * var) - d * d / (2.0 * var)) *
                        std::numbers::log2e);
        }
        return row;
      },
      bias, false, -(domain - 1.0));
  const std::string label = b.field("label", bits_for(spec.n_classes));
  b.op(OpCode::kArgmax, label, layout.sums);
  b.label_output(label);
  return b.finish();
}

PipelineProgram map_km_lb(const ModelSpec& spec, const ConvertConfig& cfg) {
  require_family(spec, Family::kKMeans, "map_km_lb");
  const auto& centroids = spec.as<KMeansParams>().centroids;
  ProgramBuilder b(spec, Variant::kLb);
  const LbLayout layout = build_lb(
      b, spec, cfg, centroids.size(),
      [&](std::size_t f, std::uint64_t v) {
        std::vector<double> row;
        for (const auto& c : centroids) {
          const double d = static_cast<double>(v) - c[f];
          row.push_back(d * d);
        }
        return row;
      },
      {}, false);
  const std::string label = b.field("label", bits_for(spec.n_classes));
  b.op(OpCode::kArgmin, label, layout.sums);
  b.label_output(label);
  return b.finish();
}

PipelineProgram map_pca_lb(const ModelSpec& spec, const ConvertConfig& cfg) {
  require_family(spec, Family::kPca, "map_pca_lb");
  const auto& pca = spec.as<PcaParams>();
  const std::size_t m = static_cast<std::size_t>(spec.n_classes);
  ProgramBuilder b(spec, Variant::kLb);
  const LbLayout layout = build_lb(
      b, spec, cfg, m,
      [&](std::size_t f, std::uint64_t v) {
        std::vector<double> row;
        for (std::size_t j = 0; j < m; ++j)
          row.push_back((static_cast<double>(v) - pca.means[f]) * pca.components[f][j]);
        return row;
      },
      {}, false);
  return vector_program(b, layout);
}

PipelineProgram map_ae_lb(const ModelSpec& spec, const ConvertConfig& cfg) {
  require_family(spec, Family::kAe, "map_ae_lb");
  const auto& ae = spec.as<AeParams>();
  const std::size_t m = static_cast<std::size_t>(spec.n_classes);
  ProgramBuilder b(spec, Variant::kLb);
  const LbLayout layout = build_lb(
      b, spec, cfg, m,
      [&](std::size_t f, std::uint64_t v) {
        std::vector<double> row;
        for (std::size_t j = 0; j < m; ++j) row.push_back(static_cast<double>(v) * ae.weights[f][j]);
        return row;
      },
      ae.bias, false);
  return vector_program(b, layout);
}

}  // namespace tablewright
