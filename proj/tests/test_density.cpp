// Copyright (c) 2026 shotsim contributors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "shotsim/density.hpp"
#include "shotsim/exec.hpp"

using namespace shotsim;

namespace {

const std::vector<unsigned> q0 = {0};

PauliError table_one() {
  PauliError e;
  e.arity = 1;
  e.terms.push_back({0.99, PauliString{{PauliLetter::I}, {0}}});
  e.terms.push_back({1.00, PauliString{{PauliLetter::X}, {0}}});
  return e;
}

}  // namespace

TEST_CASE("unitary evolution on pure states") {
  DensityMatrix rho(1);
  rho.evolve_unitary(gate_matrix(GateKind::X, {}), q0);
  CHECK(std::abs(rho.at(1, 1) - cplx{1.0}) < 1e-14);
  CHECK(std::abs(rho.at(0, 0)) < 1e-14);

  DensityMatrix h(1);
  h.evolve_unitary(gate_matrix(GateKind::H, {}), q0);
  for (uint64_t r = 0; r < 2; ++r) {
    for (uint64_t c = 0; c < 2; ++c) CHECK(std::abs(h.at(r, c) - cplx{0.5}) < 1e-14);
  }
}

namespace {

// rho + tol*I admits a Cholesky factorization iff every eigenvalue of rho
// is >= -tol; cheap PSD witness for small matrices.
bool psd_within(const DensityMatrix& rho, double tol) {
  const uint64_t d = rho.dim();
  std::vector<cplx> l(d * d, cplx{});
  for (uint64_t r = 0; r < d; ++r) {
    for (uint64_t c = 0; c <= r; ++c) {
      cplx sum = rho.at(r, c) + (r == c ? cplx{tol} : cplx{});
      for (uint64_t k = 0; k < c; ++k) sum -= l[r * d + k] * std::conj(l[c * d + k]);
      if (r == c) {
        if (sum.real() < 0.0) return false;
        l[r * d + c] = std::sqrt(sum.real());
      } else {
        if (std::abs(l[c * d + c]) == 0.0) return false;
        l[r * d + c] = sum / l[c * d + c];
      }
    }
  }
  return true;
}

}  // namespace

TEST_CASE("trace, hermiticity and positivity survive random evolution") {
  std::mt19937_64 gen(6);
  DensityMatrix rho(3);
  rho.evolve_unitary(gate_matrix(GateKind::H, {}), q0);
  rho.evolve_unitary(gate_matrix(GateKind::CX, {}), std::vector<unsigned>{0, 1});
  for (int rep = 0; rep < 100; ++rep) {
    const unsigned k = 1 + rep % 2;
    GateMatrix m{k, oracle::random_unitary(k, gen)};
    std::vector<unsigned> targets = {static_cast<unsigned>(rep % 3)};
    if (k == 2) targets.push_back((targets[0] + 1 + rep % 2) % 3);
    rho.evolve_unitary(m, targets);
    const std::vector<unsigned> first_target = {targets[0]};
    if (rep % 10 == 0) rho.evolve_pauli(depolarizing_error(0.03, 1), first_target);
  }
  CHECK(rho.trace_real() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(rho.hermiticity_defect() < 1e-10);
  CHECK(psd_within(rho, 1e-8));
}

TEST_CASE("channels act as expected") {
  DensityMatrix mixed(1);
  mixed.evolve_pauli(depolarizing_error(1.0, 1), q0);
  CHECK(std::abs(mixed.at(0, 0) - cplx{0.5}) < 1e-12);
  CHECK(std::abs(mixed.at(1, 1) - cplx{0.5}) < 1e-12);
  CHECK(std::abs(mixed.at(0, 1)) < 1e-12);

  DensityMatrix flip(1);
  flip.evolve_pauli(table_one(), q0);
  CHECK(std::abs(flip.at(0, 0) - cplx{0.99}) < 1e-12);
  CHECK(std::abs(flip.at(1, 1) - cplx{0.01}) < 1e-12);
  CHECK(flip.trace_real() == doctest::Approx(1.0).epsilon(1e-10));

  DensityMatrix via_kraus(1);
  via_kraus.evolve_kraus(pauli_as_kraus(table_one()), q0);
  for (uint64_t r = 0; r < 2; ++r) {
    for (uint64_t c = 0; c < 2; ++c) {
      CHECK(std::abs(via_kraus.at(r, c) - flip.at(r, c)) < 1e-12);
    }
  }
}

TEST_CASE("exact_distribution examples") {
  // Zero-noise QFT(3): uniform eighths.
  const NoisyCircuit qft = instrument(measure_all(qft_circuit(3)), NoiseModel{});
  const auto uniform_dist = exact_distribution(qft, std::vector<unsigned>{0, 1, 2});
  for (double p : uniform_dist) CHECK(p == doctest::Approx(0.125).epsilon(1e-9));

  // H then a 1% bit flip: still 50/50.
  NoiseModel table_model;
  table_model.add_rule({{GateKind::H}, 1, table_one()});
  Circuit hc;
  hc.num_qubits = 1;
  hc.num_clbits = 1;
  hc.instructions.push_back({GateKind::H, {0}, {}, {}, std::nullopt});
  hc.instructions.push_back({GateKind::MEASURE, {0}, {0}, {}, std::nullopt});
  const auto h_dist = exact_distribution(instrument(hc, table_model), q0);
  CHECK(h_dist[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(h_dist[1] == doctest::Approx(0.5).epsilon(1e-12));

  // X then the same channel: P(1) = 0.99.
  NoiseModel x_model;
  x_model.add_rule({{GateKind::X}, 1, table_one()});
  Circuit xc;
  xc.num_qubits = 1;
  xc.num_clbits = 1;
  xc.instructions.push_back({GateKind::X, {0}, {}, {}, std::nullopt});
  xc.instructions.push_back({GateKind::MEASURE, {0}, {0}, {}, std::nullopt});
  const auto x_dist = exact_distribution(instrument(xc, x_model), q0);
  CHECK(x_dist[1] == doctest::Approx(0.99).epsilon(1e-12));
  CHECK(x_dist[0] == doctest::Approx(0.01).epsilon(1e-12));
}

TEST_CASE("intermediate measures branch with weights") {
  // h q0; measure q0 -> c0; x q1 if c0 == 1; measure both.
  Circuit c;
  c.num_qubits = 2;
  c.num_clbits = 2;
  c.instructions.push_back({GateKind::H, {0}, {}, {}, std::nullopt});
  c.instructions.push_back({GateKind::MEASURE, {0}, {0}, {}, std::nullopt});
  c.instructions.push_back({GateKind::X, {1}, {}, {}, Condition{1, 1}});
  c.instructions.push_back({GateKind::MEASURE, {1}, {1}, {}, std::nullopt});
  const NoisyCircuit program = instrument(c, NoiseModel{});
  const auto dist = exact_creg_distribution(program);
  REQUIRE(dist.size() == 2);
  CHECK(dist.at(0b00) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(dist.at(0b11) == doctest::Approx(0.5).epsilon(1e-12));

  // Reset collapses without branching.
  Circuit rc;
  rc.num_qubits = 1;
  rc.num_clbits = 1;
  rc.instructions.push_back({GateKind::H, {0}, {}, {}, std::nullopt});
  rc.instructions.push_back({GateKind::RESET, {0}, {}, {}, std::nullopt});
  rc.instructions.push_back({GateKind::MEASURE, {0}, {0}, {}, std::nullopt});
  const auto reset_dist = exact_creg_distribution(instrument(rc, NoiseModel{}));
  CHECK(reset_dist.at(0) == doctest::Approx(1.0).epsilon(1e-12));

  // More than two intermediate sites is out of contract.
  Circuit deep;
  deep.num_qubits = 1;
  deep.num_clbits = 1;
  for (int i = 0; i < 3; ++i) {
    deep.instructions.push_back({GateKind::H, {0}, {}, {}, std::nullopt});
    deep.instructions.push_back({GateKind::MEASURE, {0}, {0}, {}, std::nullopt});
  }
  deep.instructions.push_back({GateKind::H, {0}, {}, {}, std::nullopt});
  CHECK_THROWS_AS(exact_creg_distribution(instrument(deep, NoiseModel{})), CapacityError);
}

TEST_CASE("density capacity cap") {
  CHECK_THROWS_AS(DensityMatrix(11), CapacityError);
}

TEST_CASE("executors stay within tvd 0.02 of the exact distribution") {
  // Smaller version of the statistical acceptance gate.
  for (unsigned n : {2u, 3u}) {
    const NoisyCircuit program =
        instrument(measure_all(qft_circuit(n)), make_depolarizing_model(0.01, false));
    const auto exact = exact_creg_distribution(program);
    for (const char* strategy : {"naive", "batch", "branch"}) {
      RunOptions options{.shots = 20000, .seed = 12};
      const RunResult r = executor_by_name(strategy)(program, options);
      CHECK(tvd_vs_exact(r.counts, options.shots, exact) <= 0.02);
    }
  }
}
