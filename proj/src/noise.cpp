// Copyright (c) 2026 shotsim contributors
// SPDX-License-Identifier: Apache-2.0
#include "shotsim/noise.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace shotsim {

namespace {

using nlohmann::json;

const cplx kLetter[4][4] = {
    // I, X, Y, Z as row-major 2x2
    {{1, 0}, {0, 0}, {0, 0}, {1, 0}},
    {{0, 0}, {1, 0}, {1, 0}, {0, 0}},
    {{0, 0}, {0, -1}, {0, 1}, {0, 0}},
    {{1, 0}, {0, 0}, {0, 0}, {-1, 0}},
};

void validate_pauli_error(const PauliError& e) {
  if (e.terms.empty()) throw ConfigError("pauli channel has no terms");
  double prev = 0.0;
  for (const auto& term : e.terms) {
    if (!(term.cumulative > prev)) {
      throw ConfigError("pauli channel cumulative probabilities must be strictly increasing");
    }
    prev = term.cumulative;
    if (term.pauli.letters.size() != term.pauli.targets.size()) {
      throw ConfigError("pauli string letters/targets length mismatch");
    }
    std::set<unsigned> seen;
    for (unsigned t : term.pauli.targets) {
      if (t >= e.arity) throw ConfigError("pauli string target outside channel arity");
      if (!seen.insert(t).second) throw ConfigError("duplicate pauli string target");
    }
  }
  if (std::abs(prev - 1.0) > 1e-12) {
    throw ConfigError("pauli channel probabilities must sum to 1");
  }
}

}  // namespace

char pauli_letter_char(PauliLetter l) {
  return "IXYZ"[static_cast<int>(l)];
}

PauliLetter pauli_letter_from_char(char c) {
  switch (c) {
    case 'I': case 'i': return PauliLetter::I;
    case 'X': case 'x': return PauliLetter::X;
    case 'Y': case 'y': return PauliLetter::Y;
    case 'Z': case 'z': return PauliLetter::Z;
    default: throw ConfigError(std::string("invalid pauli letter: ") + c);
  }
}

bool PauliString::is_identity() const {
  return std::all_of(letters.begin(), letters.end(),
                     [](PauliLetter l) { return l == PauliLetter::I; });
}

PauliString PauliString::rebased(std::span<const unsigned> qubits) const {
  PauliString out;
  out.letters = letters;
  out.targets.reserve(targets.size());
  for (unsigned slot : targets) out.targets.push_back(qubits[slot]);
  return out;
}

std::string PauliString::to_string() const {
  std::string s(letters.size(), 'I');
  for (size_t i = 0; i < letters.size(); ++i) s[i] = pauli_letter_char(letters[i]);
  return s;
}

PauliMasks pauli_to_masks(const PauliString& pauli) {
  PauliMasks m;
  for (size_t i = 0; i < pauli.letters.size(); ++i) {
    const uint64_t bit = one_bit(pauli.targets[i]);
    switch (pauli.letters[i]) {
      case PauliLetter::I: break;
      case PauliLetter::X: m.x_mask |= bit; break;
      case PauliLetter::Y: m.x_mask |= bit; m.z_mask |= bit; ++m.num_y; break;
      case PauliLetter::Z: m.z_mask |= bit; break;
    }
  }
  if (m.x_mask != 0) m.x_max = static_cast<unsigned>(std::bit_width(m.x_mask) - 1);
  return m;
}

GateMatrix pauli_string_matrix(const PauliString& pauli) {
  unsigned k = 0;
  for (unsigned t : pauli.targets) k = std::max(k, t + 1);
  if (k == 0) k = 1;
  const uint64_t side = one_bit(k);
  GateMatrix m{k, std::vector<cplx>(side * side)};
  for (uint64_t r = 0; r < side; ++r) {
    for (uint64_t c = 0; c < side; ++c) {
      cplx e = 1.0;
      uint64_t untargeted = (side - 1);
      for (size_t i = 0; i < pauli.letters.size() && e != cplx{}; ++i) {
        const unsigned s = pauli.targets[i];
        untargeted &= ~one_bit(s);
        const int rb = static_cast<int>((r >> s) & 1);
        const int cb = static_cast<int>((c >> s) & 1);
        e *= kLetter[static_cast<int>(pauli.letters[i])][rb * 2 + cb];
      }
      // Identity on slots the string does not touch.
      if ((r & untargeted) != (c & untargeted)) e = 0.0;
      m.entries[r * side + c] = e;
    }
  }
  return m;
}

double PauliError::term_prob(size_t i) const {
  return terms[i].cumulative - (i == 0 ? 0.0 : terms[i - 1].cumulative);
}

unsigned channel_arity(const ErrorChannel& channel) {
  return std::visit([](const auto& c) { return c.arity; }, channel);
}

PauliError depolarizing_error(double p, unsigned k) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("depolarizing rate must be in [0, 1]");
  if (k < 1 || k > 2) throw std::invalid_argument("depolarizing arity must be 1 or 2");
  const uint64_t strings = one_bit(2 * k);  // 4^k
  const double each = p / static_cast<double>(strings);
  const double ident = 1.0 - each * static_cast<double>(strings - 1);

  PauliError e;
  e.arity = k;
  std::vector<unsigned> slots(k);
  for (unsigned s = 0; s < k; ++s) slots[s] = s;
  double cum = 0.0;
  auto push = [&](double w, uint64_t code) {
    if (w <= 0.0) return;
    cum += w;
    PauliString ps;
    ps.targets = slots;
    ps.letters.resize(k);
    for (unsigned s = 0; s < k; ++s) {
      ps.letters[s] = static_cast<PauliLetter>((code >> (2 * s)) & 3);
    }
    e.terms.push_back({cum, std::move(ps)});
  };
  push(ident, 0);
  for (uint64_t code = 1; code < strings; ++code) push(each, code);
  e.terms.back().cumulative = 1.0;
  return e;
}

size_t sample_pauli_index(const PauliError& error, double u) {
  for (size_t i = 0; i < error.terms.size(); ++i) {
    if (u < error.terms[i].cumulative) return i;
  }
  return error.terms.size() - 1;
}

const PauliString& sample_pauli(const PauliError& error, double u) {
  return error.terms[sample_pauli_index(error, u)].pauli;
}

KrausError pauli_as_kraus(const PauliError& error) {
  KrausError k;
  k.arity = error.arity;
  k.matrices.reserve(error.terms.size());
  for (size_t i = 0; i < error.terms.size(); ++i) {
    GateMatrix m = pauli_string_matrix(error.terms[i].pauli);
    if (m.num_qubits < error.arity) {
      // Pad identity slots up to the channel arity.
      PauliString padded = error.terms[i].pauli;
      padded.targets.push_back(error.arity - 1);
      padded.letters.push_back(PauliLetter::I);
      m = pauli_string_matrix(padded);
    }
    const double w = std::sqrt(error.term_prob(i));
    for (cplx& entry : m.entries) entry *= w;
    k.matrices.push_back(std::move(m));
  }
  return k;
}

double kraus_completeness_defect(const KrausError& kraus) {
  if (kraus.matrices.empty()) return 1.0;
  const uint64_t side = one_bit(kraus.arity);
  std::vector<cplx> sum(side * side);
  for (const GateMatrix& m : kraus.matrices) {
    for (uint64_t r = 0; r < side; ++r) {
      for (uint64_t c = 0; c < side; ++c) {
        cplx acc = 0;
        for (uint64_t i = 0; i < side; ++i) {
          acc += std::conj(m.entries[i * side + r]) * m.entries[i * side + c];
        }
        sum[r * side + c] += acc;
      }
    }
  }
  double defect = 0.0;
  for (uint64_t r = 0; r < side; ++r) {
    for (uint64_t c = 0; c < side; ++c) {
      const cplx want = (r == c) ? cplx{1.0, 0.0} : cplx{};
      defect = std::max(defect, std::abs(sum[r * side + c] - want));
    }
  }
  return defect;
}

void NoiseModel::add_rule(NoiseRule rule) {
  if (rule.gates.empty()) throw ConfigError("noise rule lists no gates");
  if (channel_arity(rule.channel) != rule.arity) {
    throw ConfigError("noise rule arity does not match its channel");
  }
  for (GateKind kind : rule.gates) {
    const GateInfo& info = gate_info(kind);
    if (!info.unitary) {
      throw ConfigError("noise cannot attach to " + std::string(info.name));
    }
    if (info.arity != rule.arity) {
      throw ConfigError("gate " + std::string(info.name) + " does not match rule arity");
    }
  }
  if (const auto* pauli = std::get_if<PauliError>(&rule.channel)) {
    validate_pauli_error(*pauli);
  } else {
    const auto& kraus = std::get<KrausError>(rule.channel);
    for (const GateMatrix& m : kraus.matrices) {
      if (m.num_qubits != kraus.arity) {
        throw ConfigError("kraus matrix dimension does not match channel arity");
      }
    }
    if (kraus_completeness_defect(kraus) > 1e-10) {
      throw ConfigError("kraus channel violates completeness");
    }
  }
  rules_.push_back(std::move(rule));
}

const ErrorChannel* NoiseModel::match(GateKind kind, unsigned arity) const {
  for (const NoiseRule& rule : rules_) {
    if (rule.arity != arity) continue;
    if (std::find(rule.gates.begin(), rule.gates.end(), kind) != rule.gates.end()) {
      return &rule.channel;
    }
  }
  return nullptr;
}

namespace {

json channel_to_json(const ErrorChannel& channel) {
  json j;
  if (const auto* pauli = std::get_if<PauliError>(&channel)) {
    j["type"] = "pauli";
    json terms = json::array();
    for (size_t i = 0; i < pauli->terms.size(); ++i) {
      terms.push_back({pauli->term_prob(i), pauli->terms[i].pauli.to_string()});
    }
    j["terms"] = std::move(terms);
  } else {
    const auto& kraus = std::get<KrausError>(channel);
    j["type"] = "kraus";
    json mats = json::array();
    for (const GateMatrix& m : kraus.matrices) {
      json flat = json::array();
      for (const cplx& e : m.entries) flat.push_back({e.real(), e.imag()});
      mats.push_back(std::move(flat));
    }
    j["matrices"] = std::move(mats);
  }
  return j;
}

ErrorChannel channel_from_json(const json& j, unsigned arity) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "pauli") {
    PauliError e;
    e.arity = arity;
    double cum = 0.0;
    for (const auto& term : j.at("terms")) {
      const double p = term.at(0).get<double>();
      const std::string s = term.at(1).get<std::string>();
      if (s.size() != arity) throw ConfigError("pauli string length does not match arity");
      if (p <= 0.0) throw ConfigError("pauli term probabilities must be positive");
      cum += p;
      PauliString ps;
      for (unsigned i = 0; i < arity; ++i) {
        ps.letters.push_back(pauli_letter_from_char(s[i]));
        ps.targets.push_back(i);
      }
      e.terms.push_back({cum, std::move(ps)});
    }
    if (e.terms.empty() || std::abs(cum - 1.0) > 1e-12) {
      throw ConfigError("pauli channel probabilities must sum to 1");
    }
    e.terms.back().cumulative = 1.0;
    return e;
  }
  if (type == "kraus") {
    KrausError k;
    k.arity = arity;
    const uint64_t entries = one_bit(arity) * one_bit(arity);
    for (const auto& mj : j.at("matrices")) {
      if (mj.size() != entries) throw ConfigError("kraus matrix entry count mismatch");
      GateMatrix m{arity, {}};
      m.entries.reserve(entries);
      for (const auto& e : mj) {
        m.entries.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
      }
      k.matrices.push_back(std::move(m));
    }
    return k;
  }
  throw ConfigError("unknown channel type: " + type);
}

}  // namespace

std::string NoiseModel::to_json() const {
  json j;
  j["rules"] = json::array();
  for (const NoiseRule& rule : rules_) {
    json gates = json::array();
    for (GateKind kind : rule.gates) gates.push_back(std::string(gate_info(kind).name));
    j["rules"].push_back(
        {{"gates", std::move(gates)}, {"arity", rule.arity}, {"channel", channel_to_json(rule.channel)}});
  }
  return j.dump(2);
}

NoiseModel NoiseModel::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("noise model parse error: ") + e.what());
  }
  NoiseModel model;
  try {
    for (const auto& rj : j.at("rules")) {
      NoiseRule rule;
      rule.arity = rj.at("arity").get<unsigned>();
      for (const auto& g : rj.at("gates")) {
        const std::string name = g.get<std::string>();
        const auto kind = gate_kind_from_name(name);
        if (!kind) throw ConfigError("unknown gate in noise rule: " + name);
        rule.gates.push_back(*kind);
      }
      rule.channel = channel_from_json(rj.at("channel"), rule.arity);
      model.add_rule(std::move(rule));
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("noise model structure error: ") + e.what());
  }
  return model;
}

NoiseModel NoiseModel::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open noise model file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

NoiseModel make_depolarizing_model(double rate, bool as_kraus) {
  NoiseModel model;
  if (rate <= 0.0) return model;
  const std::vector<GateKind> one_q = {GateKind::ID, GateKind::X,   GateKind::Y, GateKind::Z,
                                       GateKind::H,  GateKind::S,   GateKind::SDG,
                                       GateKind::T,  GateKind::TDG, GateKind::P, GateKind::U};
  const std::vector<GateKind> two_q = {GateKind::CX, GateKind::CP, GateKind::SWAP};
  const PauliError e1 = depolarizing_error(rate, 1);
  const PauliError e2 = depolarizing_error(rate, 2);
  if (as_kraus) {
    model.add_rule({one_q, 1, pauli_as_kraus(e1)});
    model.add_rule({two_q, 2, pauli_as_kraus(e2)});
  } else {
    model.add_rule({one_q, 1, e1});
    model.add_rule({two_q, 2, e2});
  }
  return model;
}

}  // namespace shotsim
