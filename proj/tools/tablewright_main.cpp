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

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <unordered_set>

#include "CLI11.hpp"
#include "json.hpp"
#include "tablewright/dataset.hpp"
#include "tablewright/error.hpp"
#include "tablewright/mapping.hpp"
#include "tablewright/metrics.hpp"
#include "tablewright/p4.hpp"
#include "tablewright/presets.hpp"
#include "tablewright/reference.hpp"
#include "tablewright/report.hpp"
#include "tablewright/serialize.hpp"
#include "tablewright/simulator.hpp"
#include "tablewright/synth.hpp"

namespace tw = tablewright;
namespace fs = std::filesystem;

namespace {

enum class LogLevel { kError, kWarn, kInfo, kDebug };

LogLevel log_level() {
  static const LogLevel level = [] {
    const char* env = std::getenv("TABLEWRIGHT_LOG");
    const std::string v = env ? env : "";
    if (v == "error") return LogLevel::kError;
    if (v == "info") return LogLevel::kInfo;
    if (v == "debug") return LogLevel::kDebug;
    return LogLevel::kWarn;
  }();
  return level;
}

void log(LogLevel level, const std::string& msg) {
  static const char* names[] = {"error", "warn", "info", "debug"};
  if (level <= log_level()) std::cerr << "[" << names[static_cast<int>(level)] << "] " << msg << "\n";
}

struct ConvertOptions {
  std::string model;
  std::string variant;
  std::string bits;
  std::optional<int> depth;
  std::string preset;
  std::string mode;
  std::string match;
  std::string vote;
  std::string dataset;
  std::string out;
  std::string profile = "software";
  bool no_default = false;
  std::uint64_t entry_budget = tw::ConvertConfig{}.entry_budget;
};

int parse_bits(const std::string& text) {
  if (text == "full") return tw::kFullPrecisionBits;
  try {
    std::size_t used = 0;
    const int v = std::stoi(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw tw::ValidationError("--bits: expected an integer or 'full', got '" + text + "'");
}

// Preset first, then explicit flags on top.
tw::ConvertConfig build_config(const tw::ModelSpec& spec, const ConvertOptions& o, const tw::Dataset* data) {
  tw::ConvertConfig cfg;
  cfg.variant = o.variant.empty() ? tw::default_variant(spec.family) : tw::variant_from_name(o.variant);
  if (!o.preset.empty()) tw::apply_preset(cfg, spec.family, tw::preset_from_name(o.preset));
  if (!o.bits.empty()) cfg.n_bits = parse_bits(o.bits);
  if (o.depth) cfg.max_depth = *o.depth;
  if (!o.match.empty()) {
    const tw::MatchKind kind = tw::match_kind_from_name(o.match);
    cfg.feature_match = kind;
    cfg.lb_match = kind;
  }
  if (!o.vote.empty()) {
    if (o.vote != "table" && o.vote != "logic") throw tw::ValidationError("--vote: expected table or logic");
    cfg.vote_mode = o.vote == "table" ? tw::VoteMode::kTable : tw::VoteMode::kLogic;
  }
  cfg.use_default_action = !o.no_default;
  cfg.entry_budget = o.entry_budget;
  if (o.mode == "full-domain") {
    cfg.population = tw::Population::kFullDomain;
  } else if (o.mode == "unique") {
    cfg.population = tw::Population::kUnique;
    if (data == nullptr) throw tw::ValidationError("--mode unique needs --dataset to collect observed values");
  } else if (!o.mode.empty()) {
    throw tw::ValidationError("--mode: expected full-domain or unique");
  }
  if (data != nullptr) {
    cfg.unique_values.assign(spec.schema.size(), {});
    for (const tw::FeatureVector& x : data->rows)
      for (std::size_t f = 0; f < x.size(); ++f) cfg.unique_values[f].push_back(x[f]);
  }
  return cfg;
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw tw::IoError("cannot create directory \"" + dir + "\": " + ec.message());
}

int cmd_convert(const ConvertOptions& o) {
  const tw::ModelSpec spec = tw::load_model_spec(o.model);
  std::optional<tw::Dataset> data;
  if (!o.dataset.empty()) data = tw::read_dataset_csv(o.dataset, spec.schema);
  const tw::ConvertConfig cfg = build_config(spec, o, data ? &*data : nullptr);
  const tw::Profile profile = tw::profile_from_name(o.profile);
  log(LogLevel::kDebug, "model " + o.model + ": family " + std::string(tw::family_name(spec.family)) + ", " +
                            std::to_string(spec.schema.size()) + " features, variant " +
                            std::string(tw::variant_name(cfg.variant)) + ", n_bits " + std::to_string(cfg.n_bits));
  const auto t0 = std::chrono::steady_clock::now();
  const tw::PipelineProgram program = tw::convert(spec, cfg);
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  const tw::ResourceReport report = tw::resource_report(program, profile);
  ensure_dir(o.out);
  const fs::path dir(o.out);
  tw::write_text_file((dir / "program.json").string(), tw::program_to_json(program, false));
  tw::write_text_file((dir / "entries.json").string(), tw::emit_entries(program));
  tw::write_text_file((dir / "model.p4").string(), tw::emit_p4(program));
  tw::write_text_file((dir / "report.json").string(), tw::report_to_json(report));
  if (!program.registers.empty()) tw::write_text_file((dir / "weights.json").string(), tw::emit_weights(program));
  log(LogLevel::kDebug, "wrote outputs to " + o.out);
  for (const std::string& w : report.warnings) log(LogLevel::kWarn, w);
  std::cout << program.name << ": " << report.tables.size() << " tables, " << report.total_entries << " entries, "
            << report.stages << " stages (" << std::fixed << std::setprecision(1) << ms << " ms) -> " << o.out << "\n";
  return 0;
}

tw::PipelineProgram load_program(const std::string& program_path, const std::string& entries_path) {
  tw::PipelineProgram p = tw::program_from_json(tw::read_text_file(program_path));
  if (!entries_path.empty()) return tw::apply_entries(std::move(p), tw::read_text_file(entries_path));
  tw::require_valid(p);
  return p;
}

// Feature schema recovered from the program's input fields ("in_<name>").
tw::FeatureSchema schema_of(const tw::PipelineProgram& p) {
  tw::FeatureSchema schema;
  for (const std::string& in : p.inputs) {
    const std::string name = in.rfind("in_", 0) == 0 ? in.substr(3) : in;
    schema.features.push_back({name, p.field(in)->width});
  }
  return schema;
}

double dequantize(const tw::PipelineProgram& p, std::size_t j, std::uint64_t word) {
  const tw::OutputScale& s = p.output_scales[j];
  return (static_cast<double>(word) - s.offset) / s.scale;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    tw::write_text_file(path, text);
  }
}

int cmd_simulate(const std::string& program_path, const std::string& entries_path, const std::string& model_path,
                 const std::string& dataset_path, const std::string& out) {
  const tw::PipelineProgram p = load_program(program_path, entries_path);
  const tw::FeatureSchema schema = model_path.empty() ? schema_of(p) : tw::load_model_spec(model_path).schema;
  const tw::Dataset data = tw::read_dataset_csv(dataset_path, schema);
  const tw::Simulator sim(p);
  std::ostringstream csv;
  csv << std::setprecision(17);
  if (p.output_kind == tw::OutputKind::kLabel) {
    csv << "prediction\n";
  } else {
    for (std::size_t j = 0; j < p.outputs.size(); ++j) csv << (j ? "," : "") << "out" << j;
    csv << "\n";
  }
  for (const tw::FeatureVector& x : data.rows) {
    const auto words = sim.run(x);
    if (p.output_kind == tw::OutputKind::kLabel) {
      csv << words[0] << "\n";
      continue;
    }
    for (std::size_t j = 0; j < words.size(); ++j) csv << (j ? "," : "") << dequantize(p, j, words[j]);
    csv << "\n";
  }
  write_output(out, csv.str());
  log(LogLevel::kInfo, "simulated " + std::to_string(data.rows.size()) + " rows");
  return 0;
}

// Rows for which some lookup-based feature table had no matching entry.
std::size_t default_hits(const tw::PipelineProgram& p, const std::vector<tw::FeatureVector>& rows) {
  if (p.variant != "lb") return 0;
  struct Probe {
    const tw::Table* table;
    std::size_t input;
    int width;
    std::unordered_set<std::uint64_t> exact;
  };
  std::vector<Probe> probes;
  for (const tw::Table& t : p.tables) {
    if (t.keys.size() != 1) continue;
    for (std::size_t i = 0; i < p.inputs.size(); ++i)
      if (p.inputs[i] == t.keys[0]) {
        Probe probe{&t, i, p.field(t.keys[0])->width, {}};
        if (t.kind == tw::MatchKind::kExact)
          for (const tw::TableEntry& e : t.entries) probe.exact.insert(e.keys[0].value);
        probes.push_back(std::move(probe));
      }
  }
  std::size_t hits = 0;
  for (const tw::FeatureVector& x : rows) {
    bool missed = false;
    for (const Probe& probe : probes) {
      const std::uint64_t v = x[probe.input];
      bool found = false;
      if (probe.table->kind == tw::MatchKind::kExact) {
        found = probe.exact.count(v) > 0;
      } else {
        for (const tw::TableEntry& e : probe.table->entries)
          if (e.keys[0].matches(v, probe.width)) {
            found = true;
            break;
          }
      }
      missed = missed || !found;
    }
    hits += missed ? 1 : 0;
  }
  return hits;
}

nlohmann::ordered_json compare_metrics(const tw::ModelSpec& spec, const tw::PipelineProgram& p,
                                       const tw::Dataset& data) {
  const tw::Simulator sim(p);
  nlohmann::ordered_json doc;
  doc["family"] = p.family;
  doc["variant"] = p.variant;
  doc["rows"] = data.rows.size();
  if (tw::is_classifier(spec.family)) {
    if (p.output_kind != tw::OutputKind::kLabel) throw tw::ValidationError("program does not output labels");
    std::vector<tw::Label> reference, switched;
    for (const tw::FeatureVector& x : data.rows) {
      reference.push_back(tw::reference_predict(spec, x));
      switched.push_back(static_cast<tw::Label>(sim.run(x)[0]));
    }
    const double agreement = tw::accuracy(switched, reference);
    doc["agreement"] = agreement;
    const std::vector<tw::Label>& truth = data.has_labels ? data.labels : reference;
    if (data.has_labels) {
      const double ref_acc = tw::accuracy(reference, truth);
      const double sw_acc = tw::accuracy(switched, truth);
      doc["reference_accuracy"] = ref_acc;
      doc["switch_accuracy"] = sw_acc;
      doc["relative_accuracy"] = tw::relative_accuracy(sw_acc, ref_acc);
      doc["reference_macro_f1"] = tw::macro_f1(reference, truth, spec.n_classes);
    } else {
      doc["relative_accuracy"] = agreement;
    }
    doc["macro_f1"] = tw::macro_f1(switched, truth, spec.n_classes);
    doc["confusion"] = tw::confusion_matrix(switched, truth, spec.n_classes);
  } else {
    if (p.output_kind != tw::OutputKind::kVector) throw tw::ValidationError("program does not output vectors");
    const std::size_t m = p.outputs.size();
    std::vector<std::vector<double>> ref(m), got(m);
    double max_err = 0.0;
    for (const tw::FeatureVector& x : data.rows) {
      const auto r = tw::reference_transform(spec, x);
      const auto words = sim.run(x);
      for (std::size_t j = 0; j < m; ++j) {
        ref[j].push_back(r[j]);
        got[j].push_back(dequantize(p, j, words[j]));
        max_err = std::max(max_err, std::abs(got[j].back() - r[j]));
      }
    }
    std::vector<double> r;
    double mean = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      r.push_back(tw::pearson(got[j], ref[j]));
      mean += r.back() / static_cast<double>(m);
    }
    doc["pearson"] = r;
    doc["mean_pearson"] = mean;
    doc["max_abs_error"] = max_err;
  }
  doc["default_hits"] = default_hits(p, data.rows);
  return doc;
}

int cmd_compare(const std::string& model_path, const std::string& program_path, const std::string& entries_path,
                const std::string& dataset_path, const std::string& out) {
  const tw::ModelSpec spec = tw::load_model_spec(model_path);
  const tw::PipelineProgram p = load_program(program_path, entries_path);
  if (p.family != tw::family_name(spec.family))
    throw tw::ValidationError("program was built for " + p.family + ", model is " +
                              std::string(tw::family_name(spec.family)));
  if (p.inputs.size() != spec.schema.size())
    throw tw::ValidationError("program has " + std::to_string(p.inputs.size()) + " inputs, model has " +
                              std::to_string(spec.schema.size()) + " features");
  const tw::Dataset data = tw::read_dataset_csv(dataset_path, spec.schema);
  write_output(out, compare_metrics(spec, p, data).dump(2) + "\n");
  return 0;
}

struct SweepOptions {
  std::string family;
  std::string axis;
  std::string range;
  std::string model;
  std::string dataset;
  std::string out;
  std::size_t samples = 2000;
  int features = 2;
  int width = 8;
  int classes = 2;
};

std::vector<int> parse_range(const std::string& text) {
  std::vector<int> out;
  auto number = [&](const std::string& s) {
    if (s == "full") return tw::kFullPrecisionBits;
    try {
      std::size_t used = 0;
      const int v = std::stoi(s, &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw tw::ValidationError("--range: cannot parse '" + s + "'");
  };
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
    if (parts.size() < 2 || parts.size() > 3) throw tw::ValidationError("--range: expected lo:hi[:step]");
    const int lo = number(parts[0]), hi = number(parts[1]), step = parts.size() == 3 ? number(parts[2]) : 1;
    if (step <= 0 || lo > hi) throw tw::ValidationError("--range: need lo <= hi and step > 0");
    for (int v = lo; v <= hi; v += step) out.push_back(v);
  } else {
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ',');) out.push_back(number(part));
  }
  if (out.empty()) throw tw::ValidationError("--range is empty");
  return out;
}

bool axis_valid(const std::string& axis, tw::Family family, tw::Variant variant) {
  const bool lb = variant == tw::Variant::kLb;
  if (axis == "depth")
    return tw::is_tree_family(family) || (variant == tw::Variant::kEb &&
                                          (family == tw::Family::kKMeans || family == tw::Family::kKnn));
  if (axis == "n_trees") return family == tw::Family::kRf || family == tw::Family::kXgb || family == tw::Family::kIForest;
  if (axis == "n_bits" || axis == "unique_values") return lb;
  if (axis == "n_features") return true;
  return false;
}

int cmd_sweep(const SweepOptions& so, const ConvertOptions& co, std::uint64_t seed) {
  const std::optional<tw::ModelSpec> fixed =
      so.model.empty() ? std::nullopt : std::optional<tw::ModelSpec>(tw::load_model_spec(so.model));
  const tw::Family family = fixed ? fixed->family : tw::family_from_name(so.family);
  if (fixed && !so.family.empty() && tw::family_from_name(so.family) != family)
    throw tw::ValidationError("--family does not match the model file");
  const tw::Variant variant = co.variant.empty() ? tw::default_variant(family) : tw::variant_from_name(co.variant);
  if (!axis_valid(so.axis, family, variant))
    throw tw::ValidationError("axis '" + so.axis + "' is not valid for " + std::string(tw::family_name(family)) + "_" +
                              std::string(tw::variant_name(variant)));
  const bool regenerates = so.axis == "n_trees" || so.axis == "n_features" || (so.axis == "depth" && tw::is_tree_family(family));
  if (fixed && regenerates) throw tw::ValidationError("axis '" + so.axis + "' regenerates the model; drop --model");
  const tw::Profile profile = tw::profile_from_name(co.profile);
  const tw::Preset preset = tw::preset_from_name(co.preset.empty() ? "S" : co.preset);

  std::ostringstream csv;
  csv << "axis,value,family,variant,entries,stages,max_key_bits,max_action_bits,relative_accuracy,pearson,convert_ms,"
         "warnings\n";
  for (int value : parse_range(so.range)) {
    tw::ModelSpec spec;
    if (fixed) {
      spec = *fixed;
    } else {
      tw::SynthOptions opts = tw::synth_options(family, preset, so.axis == "n_features" ? value : so.features, so.width);
      opts.n_classes = so.classes;
      if (so.axis == "depth") opts.depth = value;
      if (so.axis == "n_trees") opts.n_trees = value;
      spec = tw::synth_model(opts, seed);
    }
    std::vector<tw::FeatureVector> rows;
    if (!so.dataset.empty() && so.axis != "n_features") {
      rows = tw::read_dataset_csv(so.dataset, spec.schema).rows;
    } else {
      rows = tw::synth_inputs(spec.schema, so.samples, seed + 1);
    }
    ConvertOptions point = co;
    point.variant = std::string(tw::variant_name(variant));
    if (point.preset.empty()) point.preset = std::string(tw::preset_name(preset));
    tw::Dataset observed;
    observed.rows = rows;
    if (so.axis == "n_bits") point.bits = std::to_string(value);
    if (so.axis == "depth") point.depth = value;
    if (so.axis == "unique_values") {
      point.mode = "unique";
      // The first `value` distinct values of each feature, in row order.
      std::vector<std::set<std::uint64_t>> kept(spec.schema.size());
      observed.rows.clear();
      for (const tw::FeatureVector& x : rows) {
        bool fits = true;
        for (std::size_t f = 0; f < x.size(); ++f)
          fits = fits && (kept[f].count(x[f]) || kept[f].size() < static_cast<std::size_t>(value));
        if (!fits) continue;
        for (std::size_t f = 0; f < x.size(); ++f) kept[f].insert(x[f]);
        observed.rows.push_back(x);
      }
    }
    const bool need_values = so.axis == "unique_values" || point.mode == "unique";
    const tw::ConvertConfig cfg = build_config(spec, point, need_values ? &observed : nullptr);
    const auto t0 = std::chrono::steady_clock::now();
    const tw::PipelineProgram program = tw::convert(spec, cfg);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    const tw::ResourceReport report = tw::resource_report(program, profile);
    tw::Dataset data;
    data.rows = rows;
    const auto metrics = compare_metrics(spec, program, data);
    csv << so.axis << ',' << value << ',' << program.family << ',' << program.variant << ',' << report.total_entries << ','
        << report.stages << ',' << report.max_key_bits << ',' << report.max_action_bits << ',';
    if (metrics.contains("relative_accuracy")) csv << metrics["relative_accuracy"].get<double>();
    csv << ',';
    if (metrics.contains("mean_pearson")) csv << metrics["mean_pearson"].get<double>();
    csv << ',' << std::fixed << std::setprecision(3) << ms << std::defaultfloat << std::setprecision(6) << ','
        << report.warnings.size() << "\n";
    log(LogLevel::kInfo, so.axis + "=" + std::to_string(value) + " done");
  }
  write_output(so.out, csv.str());
  return 0;
}

void add_convert_flags(CLI::App* cmd, ConvertOptions& o) {
  cmd->add_option("--variant", o.variant, "Mapping variant: eb, lb or dm (default depends on the family)");
  cmd->add_option("--bits", o.bits, "Action-data bits for lookup-based mappings, or 'full'");
  cmd->add_option("--depth", o.depth, "Quadtree depth for kmeans/knn encode-based mappings");
  cmd->add_option("--preset", o.preset, "Size preset: S, M, L or H")->check(CLI::IsMember({"S", "M", "L", "H"}));
  cmd->add_option("--mode", o.mode, "Lookup table population: full-domain or unique")
      ->check(CLI::IsMember({"full-domain", "unique"}));
  cmd->add_option("--match", o.match, "Feature table match kind: exact, ternary or lpm")
      ->check(CLI::IsMember({"exact", "ternary", "lpm"}));
  cmd->add_option("--vote", o.vote, "Random-forest vote aggregation: table or logic")
      ->check(CLI::IsMember({"table", "logic"}));
  cmd->add_flag("--no-default", o.no_default, "Do not absorb the most common outcome into default actions");
  cmd->add_option("--entry-budget", o.entry_budget, "Maximum total table entries");
  cmd->add_option("--profile", o.profile, "Resource profile: software or hardware")
      ->check(CLI::IsMember({"software", "hardware"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tablewright: compile trained models into match/action pipeline programs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "tablewright 0.1.0");

  ConvertOptions conv;
  std::uint64_t seed = 1;
  auto* convert = app.add_subcommand("convert", "Convert a model into program, entries, P4 and report files");
  convert->add_option("--model", conv.model, "Model JSON")->required();
  convert->add_option("--out", conv.out, "Output directory")->required();
  convert->add_option("--dataset", conv.dataset, "CSV supplying observed values for --mode unique");
  convert->add_option("--seed", seed, "Accepted for symmetry; conversion uses no randomness");
  add_convert_flags(convert, conv);

  std::string program_path, entries_path, model_path, dataset_path, out_path;
  auto* simulate = app.add_subcommand("simulate", "Run a program over a CSV dataset");
  simulate->add_option("--program", program_path, "Program JSON")->required();
  simulate->add_option("--entries", entries_path, "Entries JSON (when the program file has none)");
  simulate->add_option("--model", model_path, "Model JSON supplying feature names");
  simulate->add_option("--dataset", dataset_path, "Input CSV")->required();
  simulate->add_option("--out", out_path, "Predictions CSV (default stdout)");

  auto* compare = app.add_subcommand("compare", "Compare a program against the model's reference inference");
  compare->add_option("--model", model_path, "Model JSON")->required();
  compare->add_option("--program", program_path, "Program JSON")->required();
  compare->add_option("--entries", entries_path, "Entries JSON (when the program file has none)");
  compare->add_option("--dataset", dataset_path, "Input CSV")->required();
  compare->add_option("--out", out_path, "Metrics JSON (default stdout)");

  SweepOptions sweep_opts;
  ConvertOptions sweep_conv;
  auto* sweep = app.add_subcommand("sweep", "Convert a series of models and tabulate resources and fidelity");
  sweep->add_option("--family", sweep_opts.family, "Model family to synthesize");
  sweep->add_option("--model", sweep_opts.model, "Fixed model JSON (for conversion-side axes)");
  sweep->add_option("--axis", sweep_opts.axis, "depth, n_trees, n_bits, n_features or unique_values")
      ->required()
      ->check(CLI::IsMember({"depth", "n_trees", "n_bits", "n_features", "unique_values"}));
  sweep->add_option("--range", sweep_opts.range, "lo:hi[:step] or a comma list (n_bits accepts 'full')")->required();
  sweep->add_option("--dataset", sweep_opts.dataset, "Evaluation CSV (default: uniform random rows)");
  sweep->add_option("--samples", sweep_opts.samples, "Random evaluation rows when no dataset is given");
  sweep->add_option("--features", sweep_opts.features, "Feature count of synthesized models");
  sweep->add_option("--width", sweep_opts.width, "Feature bit width of synthesized models");
  sweep->add_option("--classes", sweep_opts.classes, "Classes (or output dimension) of synthesized models");
  sweep->add_option("--out", sweep_opts.out, "CSV output (default stdout)");
  sweep->add_option("--seed", seed, "Seed for model and sample generation");
  add_convert_flags(sweep, sweep_conv);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (convert->parsed()) return cmd_convert(conv);
    if (simulate->parsed()) return cmd_simulate(program_path, entries_path, model_path, dataset_path, out_path);
    if (compare->parsed()) return cmd_compare(model_path, program_path, entries_path, dataset_path, out_path);
    if (sweep->parsed()) {
      if (sweep_opts.family.empty() && sweep_opts.model.empty())
        throw tw::ValidationError("sweep needs --family or --model");
      return cmd_sweep(sweep_opts, sweep_conv, seed);
    }
  } catch (const tw::Error& e) {
    log(LogLevel::kError, e.what());
    return e.exit_code();
  } catch (const std::exception& e) {
    log(LogLevel::kError, std::string("internal error: ") + e.what());
    return 1;
  }
  return 0;
}
