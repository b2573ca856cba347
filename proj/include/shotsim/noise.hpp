// Copyright (c) 2026 shotsim contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "shotsim/circuit.hpp"
#include "shotsim/kernels.hpp"

namespace shotsim {

enum class PauliLetter : uint8_t { I, X, Y, Z };

char pauli_letter_char(PauliLetter l);
PauliLetter pauli_letter_from_char(char c);

/// Tensor product of I/X/Y/Z letters over target qubits. Channel
/// definitions use slot targets 0..k-1; rebase() maps them onto the
/// concrete qubits of an instrumented gate.
struct PauliString {
  std::vector<PauliLetter> letters;
  std::vector<unsigned> targets;

  bool is_identity() const;
  PauliString rebased(std::span<const unsigned> qubits) const;
  std::string to_string() const;  // letters in slot order
};

PauliMasks pauli_to_masks(const PauliString& pauli);

/// Dense 2^k x 2^k matrix of the string over slots (slot 0 = low axis).
GateMatrix pauli_string_matrix(const PauliString& pauli);

/// Probability-weighted Pauli mixture stored cumulatively: terms carry
/// strictly increasing cumulative probabilities ending at exactly 1.
struct PauliError {
  struct Term {
    double cumulative;
    PauliString pauli;
  };
  std::vector<Term> terms;
  unsigned arity = 0;

  /// Individual (de-cumulated) probability of term i.
  double term_prob(size_t i) const;
};

/// Kraus channel: matrices on the same k qubits with sum_i Ki†Ki == I.
struct KrausError {
  std::vector<GateMatrix> matrices;
  unsigned arity = 0;
};

using ErrorChannel = std::variant<PauliError, KrausError>;

unsigned channel_arity(const ErrorChannel& channel);

/// Standard depolarizing channel as a Pauli mixture: identity with weight
/// 1 - p(4^k - 1)/4^k, every non-identity string with weight p/4^k.
/// Zero-probability terms are dropped. Requires 0 <= p <= 1 and k in {1,2}.
PauliError depolarizing_error(double p, unsigned k);

/// Index of the first term whose cumulative probability exceeds u (strict).
size_t sample_pauli_index(const PauliError& error, double u);
const PauliString& sample_pauli(const PauliError& error, double u);

/// The same channel as Kraus matrices sqrt(p_i) * P_i.
KrausError pauli_as_kraus(const PauliError& error);

/// Checks sum_i Ki†Ki == I within tol; returns max deviation.
double kraus_completeness_defect(const KrausError& kraus);

struct NoiseRule {
  std::vector<GateKind> gates;
  unsigned arity = 0;
  ErrorChannel channel;
};

/// Gate-kind keyed error channels, applied to a matching gate's qubits
/// immediately after the gate.
class NoiseModel {
 public:
  void add_rule(NoiseRule rule);  // validates channel/arity consistency
  const ErrorChannel* match(GateKind kind, unsigned arity) const;
  bool empty() const { return rules_.empty(); }
  const std::vector<NoiseRule>& rules() const { return rules_; }

  std::string to_json() const;
  static NoiseModel from_json(const std::string& text);
  static NoiseModel load(const std::string& path);

 private:
  std::vector<NoiseRule> rules_;
};

/// The benchmark model: depolarizing(rate) on all 1-qubit gate kinds and
/// on {cx, cp, swap}; `as_kraus` switches both channels to their Kraus
/// representation. rate <= 0 yields an empty model.
NoiseModel make_depolarizing_model(double rate, bool as_kraus);

}  // namespace shotsim
