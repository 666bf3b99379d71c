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

#include "tablewright/p4.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "tablewright/error.hpp"

namespace tablewright {

namespace {

constexpr const char* kEtherType = "0x88b5";

class P4Writer {
 public:
  explicit P4Writer(const PipelineProgram& p) : p_(p) {
    for (const std::string& in : p.inputs) inputs_.insert(in);
  }

  std::string run() {
    header();
    types();
    parser();
    ingress();
    trailer();
    return out_.str();
  }

 private:
  int width(const std::string& f) const {
    const FieldDecl* d = p_.field(f);
    return d ? d->width : 1;
  }

  std::string ref(const std::string& f) const {
    return (inputs_.count(f) ? "hdr.features." : "meta.") + f;
  }

  std::string cast(const std::string& f, int w) const {
    if (width(f) == w) return ref(f);
    return "(bit<" + std::to_string(w) + ">)" + ref(f);
  }

  std::string action_name(const Table& t, std::size_t a) const { return "a_" + t.name + "_" + t.actions[a].name; }

  void header() {
    out_ << "// " << p_.name << ": family " << p_.family << ", variant " << p_.variant << "\n";
    for (const auto& [k, v] : p_.config) out_ << "// " << k << " = " << v << "\n";
    out_ << "#include <core.p4>\n#include <v1model.p4>\n\n";
  }

  void types() {
    out_ << "header ethernet_t {\n  bit<48> dst_addr;\n  bit<48> src_addr;\n  bit<16> ether_type;\n}\n\n";
    if (!p_.inputs.empty()) {
      out_ << "header features_t {\n";
      for (const std::string& in : p_.inputs) out_ << "  bit<" << width(in) << "> " << in << ";\n";
      out_ << "}\n\n";
    }
    if (!p_.outputs.empty()) {
      out_ << "header result_t {\n";
      for (std::size_t i = 0; i < p_.outputs.size(); ++i)
        out_ << "  bit<" << width(p_.outputs[i]) << "> out" << i << ";\n";
      out_ << "}\n\n";
    }
    out_ << "struct metadata_t {\n";
    for (const FieldDecl& f : p_.fields)
      if (!inputs_.count(f.name)) out_ << "  bit<" << f.width << "> " << f.name << ";\n";
    out_ << "}\n\n";
    out_ << "struct headers_t {\n  ethernet_t ethernet;\n";
    if (!p_.inputs.empty()) out_ << "  features_t features;\n";
    if (!p_.outputs.empty()) out_ << "  result_t result;\n";
    out_ << "}\n\n";
  }

  void parser() {
    out_ << "parser TwParser(packet_in pkt, out headers_t hdr, inout metadata_t meta,\n"
         << "                inout standard_metadata_t standard_metadata) {\n"
         << "  state start {\n    pkt.extract(hdr.ethernet);\n";
    if (p_.inputs.empty()) {
      out_ << "    transition accept;\n  }\n";
    } else {
      out_ << "    transition select(hdr.ethernet.ether_type) {\n      " << kEtherType
           << ": parse_features;\n      default: accept;\n    }\n  }\n"
           << "  state parse_features {\n    pkt.extract(hdr.features);\n    transition accept;\n  }\n";
    }
    out_ << "}\n\n";
    out_ << "control TwVerifyChecksum(inout headers_t hdr, inout metadata_t meta) {\n  apply { }\n}\n\n";
  }

  void table_decl(const Table& t) {
    for (std::size_t a = 0; a < t.actions.size(); ++a) {
      const ActionDef& def = t.actions[a];
      out_ << "  action " << action_name(t, a) << "(";
      for (std::size_t i = 0; i < def.writes.size(); ++i)
        out_ << (i ? ", " : "") << "bit<" << width(def.writes[i]) << "> v" << i;
      out_ << ") {\n";
      for (std::size_t i = 0; i < def.writes.size(); ++i) out_ << "    " << ref(def.writes[i]) << " = v" << i << ";\n";
      out_ << "  }\n";
    }
    out_ << "  table " << t.name << " {\n    key = {\n";
    for (const std::string& k : t.keys) out_ << "      " << ref(k) << " : " << match_kind_name(t.kind) << ";\n";
    out_ << "    }\n    actions = {\n";
    for (std::size_t a = 0; a < t.actions.size(); ++a) out_ << "      " << action_name(t, a) << ";\n";
    out_ << "    }\n";
    const std::size_t da = static_cast<std::size_t>(t.default_action.action_id);
    if (da < t.actions.size()) {
      out_ << "    default_action = " << action_name(t, da) << "(";
      for (std::size_t i = 0; i < t.default_action.data.size(); ++i)
        out_ << (i ? ", " : "") << t.default_action.data[i];
      out_ << ");\n";
    }
    out_ << "    size = " << std::max<std::size_t>(t.entries.size(), 1) << ";\n  }\n\n";
  }

  int widest(const std::vector<std::string>& fs) const {
    int w = 1;
    for (const std::string& f : fs) w = std::max(w, width(f));
    return w;
  }

  void logic(const LogicOp& op, std::size_t index) {
    const int dw = width(op.dst);
    const std::string dst = ref(op.dst);
    const std::string dtype = "bit<" + std::to_string(dw) + ">";
    // Second operand: a field or the immediate.
    auto rhs = [&](int w) {
      return op.srcs.size() > 1 ? cast(op.srcs[1], w) : "(bit<" + std::to_string(w) + ">)" + std::to_string(op.imm);
    };
    auto compare = [&](const char* sym) {
      const int w = widest(op.srcs);
      out_ << "    " << dst << " = (" << cast(op.srcs[0], w) << " " << sym << " " << rhs(w) << ") ? ("
           << dtype << ")1 : (" << dtype << ")0;\n";
    };
    switch (op.op) {
      case OpCode::kConst:
        out_ << "    " << dst << " = (" << dtype << ")" << op.imm << ";\n";
        break;
      case OpCode::kCopy:
        out_ << "    " << dst << " = " << cast(op.srcs[0], dw) << ";\n";
        break;
      case OpCode::kAdd:
      case OpCode::kSub:
        out_ << "    " << dst << " = " << cast(op.srcs[0], dw) << (op.op == OpCode::kAdd ? " + " : " - ") << rhs(dw)
             << ";\n";
        break;
      case OpCode::kShr:
        out_ << "    " << dst << " = (" << dtype << ")(" << ref(op.srcs[0]) << " >> " << op.imm << ");\n";
        break;
      case OpCode::kLe:
        compare("<=");
        break;
      case OpCode::kLt:
        compare("<");
        break;
      case OpCode::kGe:
        compare(">=");
        break;
      case OpCode::kGt:
        compare(">");
        break;
      case OpCode::kEq:
        compare("==");
        break;
      case OpCode::kXnor:
        out_ << "    " << dst << " = ~(" << cast(op.srcs[0], dw) << " ^ " << cast(op.srcs[1], dw) << ");\n";
        break;
      case OpCode::kPopcount: {
        const int sw = width(op.srcs[0]);
        out_ << "    " << dst << " =";
        for (int b = 0; b < sw; ++b)
          out_ << (b ? " +" : "") << (b % 4 == 0 && b ? "\n       " : " ") << "(" << dtype << ")" << ref(op.srcs[0])
               << "[" << b << ":" << b << "]";
        out_ << ";\n";
        break;
      }
      case OpCode::kSelect:
        for (std::size_t i = 1; i < op.srcs.size(); ++i) {
          out_ << (i == 1 ? "    if (" : " else if (") << ref(op.srcs[0]) << " == " << (i - 1) << ") {\n      " << dst
               << " = " << cast(op.srcs[i], dw) << ";\n    }";
        }
        out_ << " else {\n      " << dst << " = (" << dtype << ")0;\n    }\n";
        break;
      case OpCode::kArgmax:
      case OpCode::kArgmin: {
        const int w = widest(op.srcs);
        const std::string best = "best_" + std::to_string(index);
        out_ << "    bit<" << w << "> " << best << " = " << cast(op.srcs[0], w) << ";\n";
        out_ << "    " << dst << " = (" << dtype << ")0;\n";
        for (std::size_t i = 1; i < op.srcs.size(); ++i)
          out_ << "    if (" << cast(op.srcs[i], w) << (op.op == OpCode::kArgmax ? " > " : " < ") << best << ") {\n      "
               << best << " = " << cast(op.srcs[i], w) << ";\n      " << dst << " = (" << dtype << ")" << i
               << ";\n    }\n";
        break;
      }
      case OpCode::kConcat: {
        out_ << "    " << dst << " = ";
        for (std::size_t i = 0; i < op.srcs.size(); ++i) out_ << (i ? " ++ " : "") << ref(op.srcs[i]);
        out_ << ";\n";
        break;
      }
      case OpCode::kRegRead: {
        int rw = dw;
        for (const RegisterDecl& r : p_.registers)
          if (r.name == op.reg) rw = r.width;
        const std::string tmp = "word_" + std::to_string(index);
        out_ << "    bit<" << rw << "> " << tmp << ";\n    " << op.reg << ".read(" << tmp << ", " << op.imm << ");\n    "
             << dst << " = " << (rw == dw ? tmp : "(" + dtype + ")" + tmp) << ";\n";
        break;
      }
    }
  }

  void ingress() {
    out_ << "control TwIngress(inout headers_t hdr, inout metadata_t meta,\n"
         << "                  inout standard_metadata_t standard_metadata) {\n";
    for (const RegisterDecl& r : p_.registers)
      out_ << "  // " << r.values.size() << " words, loaded from the entries file\n  register<bit<" << r.width << ">>("
           << std::max<std::size_t>(r.values.size(), 1) << ") " << r.name << ";\n\n";
    for (const Table& t : p_.tables) table_decl(t);
    out_ << "  apply {\n";
    if (!p_.inputs.empty()) out_ << "    if (!hdr.features.isValid()) {\n      return;\n    }\n";
    if (p_.node_count() > 0) {
      const StageSchedule schedule = stage_schedule(p_);
      int stage = 0;
      for (std::size_t node : schedule.order) {
        if (schedule.stage[node] != stage) {
          stage = schedule.stage[node];
          out_ << "    // stage " << stage << "\n";
        }
        const NodeRef ref_node = p_.node(node);
        if (ref_node.kind == NodeRef::Kind::kTable) {
          out_ << "    " << p_.tables[ref_node.index].name << ".apply();\n";
        } else {
          logic(p_.logic[ref_node.index], ref_node.index);
        }
      }
    }
    if (!p_.outputs.empty()) {
      out_ << "    hdr.result.setValid();\n";
      for (std::size_t i = 0; i < p_.outputs.size(); ++i)
        out_ << "    hdr.result.out" << i << " = " << ref(p_.outputs[i]) << ";\n";
    }
    out_ << "    standard_metadata.egress_spec = standard_metadata.ingress_port;\n  }\n}\n\n";
  }

  void trailer() {
    out_ << "control TwEgress(inout headers_t hdr, inout metadata_t meta,\n"
         << "                 inout standard_metadata_t standard_metadata) {\n  apply { }\n}\n\n"
         << "control TwComputeChecksum(inout headers_t hdr, inout metadata_t meta) {\n  apply { }\n}\n\n"
         << "control TwDeparser(packet_out pkt, in headers_t hdr) {\n  apply {\n    pkt.emit(hdr.ethernet);\n";
    if (!p_.inputs.empty()) out_ << "    pkt.emit(hdr.features);\n";
    if (!p_.outputs.empty()) out_ << "    pkt.emit(hdr.result);\n";
    out_ << "  }\n}\n\n"
         << "V1Switch(TwParser(), TwVerifyChecksum(), TwIngress(), TwEgress(), TwComputeChecksum(), TwDeparser()) main;\n";
  }

  const PipelineProgram& p_;
  std::set<std::string> inputs_;
  std::ostringstream out_;
};

}  // namespace

Arch arch_from_name(std::string_view name) {
  if (name == "v1model") return Arch::kV1model;
  throw ValidationError("unsupported architecture '" + std::string(name) + "' (only v1model is emitted)");
}

std::string emit_p4(const PipelineProgram& program, Arch) {
  require_valid(program);
  return P4Writer(program).run();
}

}  // namespace tablewright
