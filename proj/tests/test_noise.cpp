// Copyright (c) 2026 shotsim contributors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "oracle.hpp"
#include "shotsim/density.hpp"
#include "shotsim/exec.hpp"
#include "shotsim/noise.hpp"
#include "shotsim/rng.hpp"

using namespace shotsim;

namespace {

PauliError table_one() {
  // 1% bit-flip: cumulative 0.99 -> ID, 1.00 -> X.
  PauliError e;
  e.arity = 1;
  e.terms.push_back({0.99, PauliString{{PauliLetter::I}, {0}}});
  e.terms.push_back({1.00, PauliString{{PauliLetter::X}, {0}}});
  return e;
}

}  // namespace

TEST_CASE("depolarizing_error term structure") {
  const PauliError zero = depolarizing_error(0.0, 1);
  REQUIRE(zero.terms.size() == 1);
  CHECK(zero.terms[0].cumulative == 1.0);
  CHECK(zero.terms[0].pauli.is_identity());

  const PauliError e1 = depolarizing_error(0.01, 1);
  REQUIRE(e1.terms.size() == 4);
  CHECK(e1.term_prob(0) == doctest::Approx(0.9925).epsilon(1e-14));
  for (size_t i = 1; i < 4; ++i) CHECK(e1.term_prob(i) == doctest::Approx(0.0025).epsilon(1e-14));
  CHECK(e1.terms.back().cumulative == 1.0);

  const PauliError e2 = depolarizing_error(0.01, 2);
  REQUIRE(e2.terms.size() == 16);
  CHECK(e2.term_prob(0) == doctest::Approx(0.990625).epsilon(1e-14));
  for (size_t i = 1; i < 16; ++i) {
    CHECK(e2.term_prob(i) == doctest::Approx(0.000625).epsilon(1e-14));
  }

  CHECK_THROWS_AS(depolarizing_error(-0.1, 1), std::invalid_argument);
  CHECK_THROWS_AS(depolarizing_error(1.1, 1), std::invalid_argument);
  CHECK_THROWS_AS(depolarizing_error(0.1, 3), std::invalid_argument);
}

TEST_CASE("sample_pauli boundaries") {
  const PauliError t = table_one();
  CHECK(sample_pauli(t, 0.5).is_identity());
  CHECK(!sample_pauli(t, 0.995).is_identity());
  CHECK(sample_pauli(t, 0.0).is_identity());  // first term, always
  CHECK(sample_pauli_index(t, 0.99) == 1);    // strict comparison at the boundary
}

TEST_CASE("pauli_to_masks") {
  const PauliMasks x0 = pauli_to_masks(PauliString{{PauliLetter::X}, {0}});
  CHECK(x0.x_mask == 1);
  CHECK(x0.z_mask == 0);
  CHECK(x0.num_y == 0);

  const PauliMasks y1 = pauli_to_masks(PauliString{{PauliLetter::Y}, {1}});
  CHECK(y1.x_mask == 2);
  CHECK(y1.z_mask == 2);
  CHECK(y1.num_y == 1);
  CHECK(y1.x_max == 1);

  const PauliMasks xz = pauli_to_masks(PauliString{{PauliLetter::X, PauliLetter::Z}, {0, 2}});
  CHECK(xz.x_mask == 1);
  CHECK(xz.z_mask == 4);
  CHECK(xz.num_y == 0);
  CHECK(xz.x_max == 0);

  const PauliMasks id = pauli_to_masks(PauliString{{PauliLetter::I}, {3}});
  CHECK(id.is_identity());
}

TEST_CASE("pauli_as_kraus") {
  const KrausError t = pauli_as_kraus(table_one());
  REQUIRE(t.matrices.size() == 2);
  CHECK(std::abs(t.matrices[0].entries[0] - std::sqrt(0.99)) < 1e-15);
  CHECK(std::abs(t.matrices[1].entries[1] - std::sqrt(0.01)) < 1e-15);
  CHECK(kraus_completeness_defect(t) < 1e-12);

  const KrausError id = pauli_as_kraus(depolarizing_error(0.0, 1));
  REQUIRE(id.matrices.size() == 1);
  CHECK(std::abs(id.matrices[0].entries[0] - cplx{1.0}) < 1e-15);

  for (double p : {0.01, 0.3, 1.0}) {
    for (unsigned k : {1u, 2u}) {
      CHECK(kraus_completeness_defect(pauli_as_kraus(depolarizing_error(p, k))) < 1e-12);
    }
  }
}

TEST_CASE("sample_pauli empirical frequencies at 1e6 draws") {
  const PauliError e = depolarizing_error(0.1, 1);
  const uint64_t n = 1000000;
  std::vector<uint64_t> hits(e.terms.size(), 0);
  for (uint64_t i = 0; i < n; ++i) hits[sample_pauli_index(e, uniform(8, i, 0))] += 1;
  for (size_t t = 0; t < e.terms.size(); ++t) {
    const double p = e.term_prob(t);
    const double sigma = std::sqrt(p * (1 - p) * static_cast<double>(n));
    CHECK(std::abs(static_cast<double>(hits[t]) - p * static_cast<double>(n)) < 4.0 * sigma);
  }
}

TEST_CASE("instrument inserts sites after matching gates only") {
  const NoiseModel model = make_depolarizing_model(0.01, false);
  for (unsigned n : {2u, 4u}) {
    const NoisyCircuit program = instrument(measure_all(qft_circuit(n)), model);
    CHECK(program.noise_sites() == n + n * (n - 1) / 2 + n / 2);
    CHECK(program.pauli_sites == program.noise_sites());
    // Event indices are consecutive over sites and measures.
    uint64_t expect = 0;
    for (const auto& op : program.ops) {
      if (op.consumes_randomness()) CHECK(op.event == expect++);
    }
    CHECK(program.num_events == expect);
    CHECK(program.sampling_eligible);
  }

  const NoisyCircuit bare = instrument(measure_all(qft_circuit(3)), NoiseModel{});
  CHECK(bare.noise_sites() == 0);

  NoiseModel cx_only;
  cx_only.add_rule({{GateKind::CX}, 2, depolarizing_error(0.01, 2)});
  const NoisyCircuit no_match = instrument(measure_all(qft_circuit(3)), cx_only);
  CHECK(no_match.noise_sites() == 0);  // qft has cp/swap but no cx
}

TEST_CASE("noise rules validate arity and gate kinds") {
  NoiseModel model;
  CHECK_THROWS_AS(model.add_rule({{GateKind::CX}, 1, depolarizing_error(0.01, 1)}), ConfigError);
  CHECK_THROWS_AS(model.add_rule({{GateKind::MEASURE}, 1, depolarizing_error(0.01, 1)}),
                  ConfigError);
  CHECK_THROWS_AS(model.add_rule({{GateKind::H}, 1, depolarizing_error(0.01, 2)}), ConfigError);

  KrausError bogus;
  bogus.arity = 1;
  bogus.matrices.push_back(GateMatrix{1, {0.5, 0, 0, 0.5}});
  CHECK_THROWS_AS(model.add_rule({{GateKind::H}, 1, bogus}), ConfigError);
}

TEST_CASE("noise model json round-trip") {
  const NoiseModel model = make_depolarizing_model(0.02, false);
  const std::string text = model.to_json();
  const NoiseModel back = NoiseModel::from_json(text);
  CHECK(back.to_json() == text);

  NoiseModel kraus_model;
  kraus_model.add_rule({{GateKind::H}, 1, pauli_as_kraus(table_one())});
  const std::string ktext = kraus_model.to_json();
  CHECK(NoiseModel::from_json(ktext).to_json() == ktext);

  CHECK_THROWS_AS(NoiseModel::from_json("{"), ConfigError);
  CHECK_THROWS_AS(NoiseModel::from_json(R"({"rules":[{"gates":["h"],"arity":1,
      "channel":{"type":"pauli","terms":[[0.5,"I"]]}}]})"),
                  ConfigError);  // probabilities must sum to 1
}

TEST_CASE("depolarizing superoperator equals (1-p) id + p full mixing") {
  // Checked entrywise on a basis of density matrices via the exact evolver.
  for (unsigned k : {1u, 2u}) {
    for (double p : {0.13, 1.0}) {
      const PauliError channel = depolarizing_error(p, k);
      const uint64_t side = one_bit(k);
      std::vector<unsigned> qubits(k);
      for (unsigned q = 0; q < k; ++q) qubits[q] = q;
      for (uint64_t r = 0; r < side; ++r) {
        for (uint64_t c = 0; c < side; ++c) {
          std::vector<cplx> basis(side * side, cplx{});
          basis[r * side + c] = 1.0;
          DensityMatrix rho = DensityMatrix::from_entries(k, basis);
          rho.evolve_pauli(channel, qubits);
          // Want (1-p) E_rc + p * tr(E_rc) I / 2^k.
          for (uint64_t rr = 0; rr < side; ++rr) {
            for (uint64_t cc = 0; cc < side; ++cc) {
              cplx want = 0.0;
              if (rr == r && cc == c) want += 1.0 - p;
              if (r == c && rr == cc) want += p / static_cast<double>(side);
              CHECK(std::abs(rho.at(rr, cc) - want) < 1e-12);
            }
          }
        }
      }
    }
  }
}

TEST_CASE("pauli and kraus noise paths are statistically interchangeable") {
  // Same program, same seed, channel represented both ways: the empirical
  // distributions must sit within TVD 0.02 of each other at 5e4 shots.
  const Circuit circuit = measure_all(qft_circuit(5));
  const NoisyCircuit pauli_program = instrument(circuit, make_depolarizing_model(0.05, false));
  const NoisyCircuit kraus_program = instrument(circuit, make_depolarizing_model(0.05, true));
  RunOptions options{.shots = 50000, .seed = 77};
  const RunResult a = run_branch(pauli_program, options);
  const RunResult b = run_branch(kraus_program, options);
  double l1 = 0.0;
  Counts keys = a.counts;
  for (const auto& [k, n] : b.counts) keys[k] += 0;
  for (const auto& [k, unused] : keys) {
    const double pa = a.counts.count(k) ? static_cast<double>(a.counts.at(k)) / 50000.0 : 0.0;
    const double pb = b.counts.count(k) ? static_cast<double>(b.counts.at(k)) / 50000.0 : 0.0;
    l1 += std::abs(pa - pb);
  }
  CHECK(0.5 * l1 <= 0.02);
}

TEST_CASE("pauli and kraus forms of one channel agree on density evolution") {
  const PauliError pauli = depolarizing_error(0.07, 2);
  const KrausError kraus = pauli_as_kraus(pauli);
  std::mt19937_64 gen(23);
  const auto state = oracle::random_state(3, gen);
  std::vector<cplx> rho0(8 * 8);
  for (int r = 0; r < 8; ++r) {
    for (int c = 0; c < 8; ++c) rho0[r * 8 + c] = state[r] * std::conj(state[c]);
  }
  const std::vector<unsigned> qubits = {2, 0};
  DensityMatrix a = DensityMatrix::from_entries(3, rho0);
  DensityMatrix b = DensityMatrix::from_entries(3, rho0);
  a.evolve_pauli(pauli, qubits);
  b.evolve_kraus(kraus, qubits);
  for (uint64_t r = 0; r < 8; ++r) {
    for (uint64_t c = 0; c < 8; ++c) CHECK(std::abs(a.at(r, c) - b.at(r, c)) < 1e-12);
  }
}
