// Copyright (c) 2026 shotsim contributors
// SPDX-License-Identifier: Apache-2.0
#include "shotsim/circuit.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

namespace shotsim {

namespace {

constexpr std::array<GateInfo, 17> kGateInfo = {{
    {"id", 1, 0, true},
    {"x", 1, 0, true},
    {"y", 1, 0, true},
    {"z", 1, 0, true},
    {"h", 1, 0, true},
    {"s", 1, 0, true},
    {"sdg", 1, 0, true},
    {"t", 1, 0, true},
    {"tdg", 1, 0, true},
    {"p", 1, 1, true},
    {"u", 1, 3, true},
    {"cx", 2, 0, true},
    {"cp", 2, 1, true},
    {"swap", 2, 0, true},
    {"measure", 1, 0, false},
    {"reset", 1, 0, false},
    {"barrier", 0, 0, false},
}};

}  // namespace

const GateInfo& gate_info(GateKind kind) {
  return kGateInfo[static_cast<size_t>(kind)];
}

std::optional<GateKind> gate_kind_from_name(std::string_view name) {
  for (size_t i = 0; i < kGateInfo.size(); ++i) {
    if (kGateInfo[i].name == name) return static_cast<GateKind>(i);
  }
  return std::nullopt;
}

std::vector<Violation> validate(const Circuit& circuit) {
  std::vector<Violation> out;
  if (circuit.num_clbits > 64) {
    out.push_back({0, "classical registers wider than 64 bits are unsupported"});
  }
  for (size_t i = 0; i < circuit.instructions.size(); ++i) {
    const Instruction& ins = circuit.instructions[i];
    const GateInfo& info = gate_info(ins.kind);
    auto report = [&](const std::string& msg) { out.push_back({i, msg}); };

    if (ins.qubits.size() != info.arity) {
      report("arity mismatch: " + std::string(info.name) + " expects " +
             std::to_string(info.arity) + " qubits, got " + std::to_string(ins.qubits.size()));
    }
    if (ins.params.size() != info.num_params) {
      report("parameter count mismatch for " + std::string(info.name));
    }
    std::set<unsigned> seen;
    for (unsigned q : ins.qubits) {
      if (q >= circuit.num_qubits) report("qubit " + std::to_string(q) + " out of range");
      if (!seen.insert(q).second) report("duplicate qubit " + std::to_string(q));
    }
    if (ins.kind == GateKind::MEASURE) {
      if (ins.clbits.size() != ins.qubits.size()) {
        report("measure needs one clbit per qubit");
      }
      for (unsigned c : ins.clbits) {
        if (c >= circuit.num_clbits) report("clbit " + std::to_string(c) + " out of range");
      }
    } else if (!ins.clbits.empty()) {
      report("clbits only allowed on measure");
    }
    if (ins.condition) {
      if (ins.condition->value & ~ins.condition->clbit_mask) {
        report("condition value has bits outside its mask");
      }
      if (circuit.num_clbits < 64 && (ins.condition->clbit_mask >> circuit.num_clbits) != 0) {
        report("condition mask references clbits out of range");
      }
    }
  }
  return out;
}

void require_valid(const Circuit& circuit) {
  const auto violations = validate(circuit);
  if (violations.empty()) return;
  std::ostringstream oss;
  oss << "invalid circuit:";
  size_t shown = 0;
  for (const auto& v : violations) {
    oss << " [instruction " << v.instruction << "] " << v.message << ";";
    if (++shown == 4) break;
  }
  throw std::invalid_argument(oss.str());
}

Circuit qft_circuit(unsigned n) {
  if (n < 1 || n > 30) {
    throw std::invalid_argument("qft_circuit: qubit count must be in [1, 30]");
  }
  Circuit c;
  c.num_qubits = n;
  for (unsigned k = n; k-- > 0;) {
    c.instructions.push_back({GateKind::H, {k}, {}, {}, std::nullopt});
    for (unsigned j = 0; j < k; ++j) {
      const double theta = std::numbers::pi / static_cast<double>(one_bit(k - j));
      c.instructions.push_back({GateKind::CP, {j, k}, {}, {theta}, std::nullopt});
    }
  }
  for (unsigned j = 0; j < n / 2; ++j) {
    c.instructions.push_back({GateKind::SWAP, {j, n - 1 - j}, {}, {}, std::nullopt});
  }
  return c;
}

Circuit measure_all(Circuit circuit) {
  if (circuit.num_clbits < circuit.num_qubits) circuit.num_clbits = circuit.num_qubits;
  for (unsigned k = 0; k < circuit.num_qubits; ++k) {
    circuit.instructions.push_back({GateKind::MEASURE, {k}, {k}, {}, std::nullopt});
  }
  return circuit;
}

GateMatrix gate_matrix(GateKind kind, std::span<const double> params) {
  const GateInfo& info = gate_info(kind);
  if (!info.unitary) {
    throw std::invalid_argument("gate has no matrix: " + std::string(info.name));
  }
  if (params.size() != info.num_params) {
    throw std::invalid_argument("wrong parameter count for " + std::string(info.name));
  }
  const cplx i1{0.0, 1.0};
  const double rs2 = 1.0 / std::sqrt(2.0);
  auto m1 = [](cplx a, cplx b, cplx c, cplx d) {
    return GateMatrix{1, {a, b, c, d}};
  };
  switch (kind) {
    case GateKind::ID: return m1(1, 0, 0, 1);
    case GateKind::X: return m1(0, 1, 1, 0);
    case GateKind::Y: return m1(0, -i1, i1, 0);
    case GateKind::Z: return m1(1, 0, 0, -1);
    case GateKind::H: return m1(rs2, rs2, rs2, -rs2);
    case GateKind::S: return m1(1, 0, 0, i1);
    case GateKind::SDG: return m1(1, 0, 0, -i1);
    case GateKind::T: return m1(1, 0, 0, std::polar(1.0, std::numbers::pi / 4));
    case GateKind::TDG: return m1(1, 0, 0, std::polar(1.0, -std::numbers::pi / 4));
    case GateKind::P: return m1(1, 0, 0, std::polar(1.0, params[0]));
    case GateKind::U: {
      const double th = params[0], phi = params[1], lam = params[2];
      const double ct = std::cos(th / 2), st = std::sin(th / 2);
      return m1(ct, -std::polar(st, lam), std::polar(st, phi), std::polar(ct, phi + lam));
    }
    case GateKind::CX:
      // qubits[0] is the control.
      return GateMatrix{2, {1, 0, 0, 0,  //
                            0, 0, 0, 1,  //
                            0, 0, 1, 0,  //
                            0, 1, 0, 0}};
    case GateKind::CP: {
      const cplx ph = std::polar(1.0, params[0]);
      return GateMatrix{2, {1, 0, 0, 0,  //
                            0, 1, 0, 0,  //
                            0, 0, 1, 0,  //
                            0, 0, 0, ph}};
    }
    case GateKind::SWAP:
      return GateMatrix{2, {1, 0, 0, 0,  //
                            0, 0, 1, 0,  //
                            0, 1, 0, 0,  //
                            0, 0, 0, 1}};
    default:
      throw std::invalid_argument("unhandled gate kind");
  }
}

}  // namespace shotsim
