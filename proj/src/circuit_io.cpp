// Copyright (c) 2026 shotsim contributors
// SPDX-License-Identifier: Apache-2.0
#include "shotsim/circuit_io.hpp"

#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace shotsim {

namespace {

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

unsigned parse_index(const std::string& tok, char prefix, size_t line_no) {
  if (tok.size() < 2 || tok[0] != prefix) {
    throw ConfigError("line " + std::to_string(line_no) + ": expected " + prefix +
                      "<index>, got '" + tok + "'");
  }
  unsigned v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data() + 1, tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw ConfigError("line " + std::to_string(line_no) + ": bad index '" + tok + "'");
  }
  return v;
}

}  // namespace

std::string circuit_to_text(const Circuit& circuit) {
  std::ostringstream out;
  out << "qubits " << circuit.num_qubits << "\n";
  out << "clbits " << circuit.num_clbits << "\n";
  for (const Instruction& ins : circuit.instructions) {
    out << gate_info(ins.kind).name;
    for (size_t i = 0; i < ins.qubits.size(); ++i) {
      out << (i == 0 ? " q" : ",q") << ins.qubits[i];
    }
    for (size_t i = 0; i < ins.params.size(); ++i) {
      out << (i == 0 ? " " : ",") << fmt_double(ins.params[i]);
    }
    if (!ins.clbits.empty()) {
      out << " ->";
      for (size_t i = 0; i < ins.clbits.size(); ++i) {
        out << (i == 0 ? " c" : ",c") << ins.clbits[i];
      }
    }
    if (ins.condition) {
      out << " if " << ins.condition->clbit_mask << "==" << ins.condition->value;
    }
    out << "\n";
  }
  return out.str();
}

Circuit circuit_from_text(const std::string& text) {
  Circuit circuit;
  std::istringstream in(text);
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;

    if (tok[0] == "qubits" || tok[0] == "clbits") {
      if (tok.size() != 2) throw ConfigError("line " + std::to_string(line_no) + ": bad header");
      const unsigned v = static_cast<unsigned>(std::stoul(tok[1]));
      (tok[0] == "qubits" ? circuit.num_qubits : circuit.num_clbits) = v;
      continue;
    }

    const auto kind = gate_kind_from_name(tok[0]);
    if (!kind) {
      throw ConfigError("line " + std::to_string(line_no) + ": unknown gate '" + tok[0] + "'");
    }
    Instruction ins;
    ins.kind = *kind;
    size_t at = 1;
    if (gate_info(*kind).arity > 0) {
      if (at >= tok.size()) {
        throw ConfigError("line " + std::to_string(line_no) + ": missing qubits");
      }
      for (const std::string& q : split(tok[at++], ',')) {
        ins.qubits.push_back(parse_index(q, 'q', line_no));
      }
    }
    if (gate_info(*kind).num_params > 0) {
      if (at >= tok.size()) {
        throw ConfigError("line " + std::to_string(line_no) + ": missing parameters");
      }
      for (const std::string& p : split(tok[at++], ',')) {
        ins.params.push_back(std::stod(p));
      }
    }
    if (at < tok.size() && tok[at] == "->") {
      if (++at >= tok.size()) {
        throw ConfigError("line " + std::to_string(line_no) + ": missing clbits after ->");
      }
      for (const std::string& c : split(tok[at++], ',')) {
        ins.clbits.push_back(parse_index(c, 'c', line_no));
      }
    }
    if (at < tok.size() && tok[at] == "if") {
      if (++at >= tok.size()) {
        throw ConfigError("line " + std::to_string(line_no) + ": missing condition");
      }
      const auto parts = split(tok[at++], '=');
      if (parts.size() != 3 || !parts[1].empty()) {
        throw ConfigError("line " + std::to_string(line_no) + ": condition must be mask==value");
      }
      ins.condition = Condition{std::stoull(parts[0]), std::stoull(parts[2])};
    }
    if (at != tok.size()) {
      throw ConfigError("line " + std::to_string(line_no) + ": trailing tokens");
    }
    circuit.instructions.push_back(std::move(ins));
  }
  return circuit;
}

namespace {

using nlohmann::json;

}  // namespace

std::string circuit_to_json(const Circuit& circuit) {
  json j;
  j["num_qubits"] = circuit.num_qubits;
  j["num_clbits"] = circuit.num_clbits;
  j["instructions"] = json::array();
  for (const Instruction& ins : circuit.instructions) {
    json ij;
    ij["kind"] = std::string(gate_info(ins.kind).name);
    ij["qubits"] = ins.qubits;
    if (!ins.clbits.empty()) ij["clbits"] = ins.clbits;
    if (!ins.params.empty()) ij["params"] = ins.params;
    if (ins.condition) {
      ij["condition"] = {{"mask", ins.condition->clbit_mask}, {"value", ins.condition->value}};
    }
    j["instructions"].push_back(std::move(ij));
  }
  return j.dump(2);
}

Circuit circuit_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("circuit parse error: ") + e.what());
  }
  Circuit circuit;
  try {
    circuit.num_qubits = j.at("num_qubits").get<unsigned>();
    circuit.num_clbits = j.at("num_clbits").get<unsigned>();
    for (const auto& ij : j.at("instructions")) {
      Instruction ins;
      const std::string name = ij.at("kind").get<std::string>();
      const auto kind = gate_kind_from_name(name);
      if (!kind) throw ConfigError("unknown gate kind: " + name);
      ins.kind = *kind;
      ins.qubits = ij.at("qubits").get<std::vector<unsigned>>();
      if (ij.contains("clbits")) ins.clbits = ij["clbits"].get<std::vector<unsigned>>();
      if (ij.contains("params")) ins.params = ij["params"].get<std::vector<double>>();
      if (ij.contains("condition")) {
        ins.condition = Condition{ij["condition"].at("mask").get<uint64_t>(),
                                  ij["condition"].at("value").get<uint64_t>()};
      }
      circuit.instructions.push_back(std::move(ins));
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("circuit structure error: ") + e.what());
  }
  return circuit;
}

Circuit load_circuit(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open circuit file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return circuit_from_json(text);
  return circuit_from_text(text);
}

}  // namespace shotsim
