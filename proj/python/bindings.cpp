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


#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "tablewright/error.hpp"
#include "tablewright/mapping.hpp"
#include "tablewright/model_spec.hpp"
#include "tablewright/p4.hpp"
#include "tablewright/presets.hpp"
#include "tablewright/program.hpp"
#include "tablewright/reference.hpp"
#include "tablewright/report.hpp"
#include "tablewright/serialize.hpp"
#include "tablewright/simulator.hpp"
#include "tablewright/table_utils.hpp"

namespace py = pybind11;
namespace tw = tablewright;

namespace {

int parse_bits(const py::object& bits) {
  if (bits.is_none()) return 8;
  if (py::isinstance<py::str>(bits)) {
    if (bits.cast<std::string>() == "full") return tw::kFullPrecisionBits;
    throw tw::ValidationError("bits: expected an integer or 'full'");
  }
  return bits.cast<int>();
}

tw::PipelineProgram convert(const tw::ModelSpec& spec, const std::optional<std::string>& variant,
                            const py::object& bits, std::optional<int> depth, const std::optional<std::string>& preset,
                            const std::optional<std::string>& mode,
                            const std::optional<std::vector<tw::FeatureVector>>& observed) {
  tw::ConvertConfig cfg;
  cfg.variant = variant ? tw::variant_from_name(*variant) : tw::default_variant(spec.family);
  if (preset) tw::apply_preset(cfg, spec.family, tw::preset_from_name(*preset));
  if (!bits.is_none()) cfg.n_bits = parse_bits(bits);
  if (depth) cfg.max_depth = *depth;
  if (mode) {
    if (*mode == "full-domain") {
      cfg.population = tw::Population::kFullDomain;
    } else if (*mode == "unique") {
      cfg.population = tw::Population::kUnique;
      if (!observed) throw tw::ValidationError("mode 'unique' needs observed rows");
    } else {
      throw tw::ValidationError("mode: expected full-domain or unique");
    }
  }
  if (observed) {
    cfg.unique_values.assign(spec.schema.size(), {});
    for (const tw::FeatureVector& x : *observed)
      for (std::size_t f = 0; f < x.size() && f < spec.schema.size(); ++f) cfg.unique_values[f].push_back(x[f]);
  }
  return tw::convert(spec, cfg);
}

}  // namespace

PYBIND11_MODULE(_tablewright, m) {
  m.doc() = "Compile trained models into match/action pipeline programs.";

  static py::exception<tw::Error> error(m, "Error");
  static py::exception<tw::ValidationError> validation(m, "ValidationError", error.ptr());
  static py::exception<tw::IoError> io(m, "IoError", error.ptr());
  static py::exception<tw::BudgetError> budget(m, "BudgetError", error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const tw::ValidationError& e) {
      validation(e.what());
    } catch (const tw::IoError& e) {
      io(e.what());
    } catch (const tw::BudgetError& e) {
      budget(e.what());
    } catch (const tw::Error& e) {
      error(e.what());
    }
  });

  py::class_<tw::ModelSpec>(m, "ModelSpec")
      .def_property_readonly("family", [](const tw::ModelSpec& s) { return std::string(tw::family_name(s.family)); })
      .def_property_readonly("n_classes", [](const tw::ModelSpec& s) { return s.n_classes; })
      .def_property_readonly("feature_names",
                             [](const tw::ModelSpec& s) {
                               std::vector<std::string> names;
                               for (const tw::Feature& f : s.schema.features) names.push_back(f.name);
                               return names;
                             })
      .def_property_readonly("bit_widths",
                             [](const tw::ModelSpec& s) {
                               std::vector<int> widths;
                               for (const tw::Feature& f : s.schema.features) widths.push_back(f.bit_width);
                               return widths;
                             })
      .def("to_json", [](const tw::ModelSpec& s) { return tw::serialize_model_spec(s); })
      .def("predict", &tw::reference_predict, py::arg("x"))
      .def("transform", &tw::reference_transform, py::arg("x"))
      .def("__eq__", [](const tw::ModelSpec& a, const tw::ModelSpec& b) { return a == b; })
      .def("__repr__", [](const tw::ModelSpec& s) {
        return "<ModelSpec " + std::string(tw::family_name(s.family)) + ", " + std::to_string(s.schema.size()) +
               " features>";
      });

  py::class_<tw::PipelineProgram>(m, "Program")
      .def_readonly("name", &tw::PipelineProgram::name)
      .def_readonly("family", &tw::PipelineProgram::family)
      .def_readonly("variant", &tw::PipelineProgram::variant)
      .def_property_readonly("table_names",
                             [](const tw::PipelineProgram& p) {
                               std::vector<std::string> names;
                               for (const tw::Table& t : p.tables) names.push_back(t.name);
                               return names;
                             })
      .def_property_readonly("total_entries", &tw::PipelineProgram::total_entries)
      .def_property_readonly("stages", [](const tw::PipelineProgram& p) { return tw::stage_schedule(p).total_stages; })
      .def("simulate", [](const tw::PipelineProgram& p, const tw::FeatureVector& x) { return tw::simulate(p, x); },
           py::arg("x"))
      .def("simulate_many",
           [](const tw::PipelineProgram& p, const std::vector<tw::FeatureVector>& rows) {
             const tw::Simulator sim(p);
             std::vector<std::vector<std::uint64_t>> out;
             out.reserve(rows.size());
             for (const tw::FeatureVector& x : rows) out.push_back(sim.run(x));
             return out;
           },
           py::arg("rows"))
      .def("to_json", &tw::program_to_json, py::arg("include_entries") = true, py::arg("indent") = 2)
      .def("entries_json", &tw::emit_entries, py::arg("indent") = 2)
      .def("weights_json", &tw::emit_weights, py::arg("indent") = 2)
      .def("p4", [](const tw::PipelineProgram& p) { return tw::emit_p4(p); })
      .def("report_json",
           [](const tw::PipelineProgram& p, const std::string& profile) {
             return tw::report_to_json(tw::resource_report(p, tw::profile_from_name(profile)));
           },
           py::arg("profile") = "software")
      .def("__eq__", [](const tw::PipelineProgram& a, const tw::PipelineProgram& b) { return a == b; });

  m.def("parse_model_spec", [](const std::string& text) { return tw::parse_model_spec(text); }, py::arg("text"));
  m.def("load_model_spec", &tw::load_model_spec, py::arg("path"));
  m.def("convert", &convert, py::arg("spec"), py::kw_only(), py::arg("variant") = std::nullopt,
        py::arg("bits") = py::none(), py::arg("depth") = std::nullopt, py::arg("preset") = std::nullopt,
        py::arg("mode") = std::nullopt, py::arg("observed") = std::nullopt);
  m.def("load_program",
        [](const std::string& program_text, const std::optional<std::string>& entries_text) {
          tw::PipelineProgram p = tw::program_from_json(program_text);
          return entries_text ? tw::apply_entries(std::move(p), *entries_text) : p;
        },
        py::arg("program_json"), py::arg("entries_json") = std::nullopt);
  m.def("supported_variants", [](const std::string& family) {
    std::vector<std::string> out;
    for (tw::Variant v : tw::supported_variants(tw::family_from_name(family))) out.emplace_back(tw::variant_name(v));
    return out;
  });
  m.attr("FULL_PRECISION_BITS") = tw::kFullPrecisionBits;
}
