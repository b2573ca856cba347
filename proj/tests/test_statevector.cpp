// Copyright (c) 2026 shotsim contributors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "shotsim/noise.hpp"
#include "shotsim/statevector.hpp"

using namespace shotsim;

namespace {

std::vector<cplx> to_vec(const Amplitudes& a) {
  return {a.view().begin(), a.view().end()};
}

Amplitudes from_vec(unsigned n, const std::vector<cplx>& v) {
  Amplitudes a(n);
  std::copy(v.begin(), v.end(), a.view().begin());
  return a;
}

const std::vector<unsigned> q0 = {0};

}  // namespace

TEST_CASE("basic gate applications") {
  Amplitudes a(1);
  apply_matrix(a.view(), gate_matrix(GateKind::X, {}), q0);
  CHECK(std::abs(a[1] - cplx{1.0}) < 1e-15);

  a.reset_zero_state();
  apply_matrix(a.view(), gate_matrix(GateKind::H, {}), q0);
  CHECK(a[0].real() == doctest::Approx(std::sqrt(0.5)));
  CHECK(a[1].real() == doctest::Approx(std::sqrt(0.5)));

  Amplitudes b(2);
  apply_matrix(b.view(), gate_matrix(GateKind::H, {}), q0);
  apply_matrix(b.view(), gate_matrix(GateKind::CX, {}), std::vector<unsigned>{0, 1});
  CHECK(std::abs(b[0] - std::sqrt(0.5)) < 1e-15);
  CHECK(std::abs(b[3] - std::sqrt(0.5)) < 1e-15);
  CHECK(std::abs(b[1]) == 0.0);
  CHECK(std::abs(b[2]) == 0.0);
}

TEST_CASE("apply_matrix rejects bad targets") {
  Amplitudes a(2);
  CHECK_THROWS_AS(apply_matrix(a.view(), gate_matrix(GateKind::X, {}), std::vector<unsigned>{5}),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      apply_matrix(a.view(), gate_matrix(GateKind::CX, {}), std::vector<unsigned>{1, 1}),
      std::invalid_argument);
  CHECK_THROWS_AS(apply_matrix(a.view(), gate_matrix(GateKind::CX, {}), std::vector<unsigned>{1}),
                  std::invalid_argument);
}

TEST_CASE("fused pauli: single-qubit actions") {
  // Y on q0: a|0> + b|1>  ->  -i b|0> + i a|1>
  Amplitudes a = from_vec(1, {cplx{0.6, 0.1}, cplx{0.2, -0.7}});
  const auto before = to_vec(a);
  PauliMasks y{1, 1, 1, 0};
  apply_pauli_fused(a.view(), y);
  CHECK(std::abs(a[0] - cplx{0, -1} * before[1]) < 1e-15);
  CHECK(std::abs(a[1] - cplx{0, 1} * before[0]) < 1e-15);

  // Z on q0 flips the |1> sign only.
  Amplitudes z = from_vec(1, before);
  apply_pauli_fused(z.view(), PauliMasks{0, 1, 0, 0});
  CHECK(std::abs(z[0] - before[0]) < 1e-15);
  CHECK(std::abs(z[1] + before[1]) < 1e-15);
}

TEST_CASE("fused pauli equals sequential letter matrices, all strings n<=3") {
  std::mt19937_64 gen(11);
  for (unsigned n = 1; n <= 3; ++n) {
    const uint64_t strings = one_bit(2 * n);
    for (uint64_t code = 0; code < strings; ++code) {
      PauliString ps;
      for (unsigned q = 0; q < n; ++q) {
        ps.letters.push_back(static_cast<PauliLetter>((code >> (2 * q)) & 3));
        ps.targets.push_back(q);
      }
      const PauliMasks masks = pauli_to_masks(ps);
      auto ref = oracle::random_state(n, gen);
      Amplitudes fused = from_vec(n, ref);
      apply_pauli_fused(fused.view(), masks);
      for (unsigned q = 0; q < n; ++q) {
        const char letter = pauli_letter_char(ps.letters[q]);
        if (letter == 'I') continue;
        ref = oracle::apply_gate_dense(ref, n, oracle::pauli_letter_matrix(letter), {q});
      }
      CHECK(oracle::max_abs_diff(to_vec(fused), ref) < 1e-12);
    }
  }
}

TEST_CASE("pair enumeration covers every index exactly once") {
  std::mt19937_64 gen(5);
  for (unsigned n = 1; n <= 10; ++n) {
    std::uniform_int_distribution<uint64_t> dist(1, one_bit(n) - 1);
    for (int rep = 0; rep < 8; ++rep) {
      const uint64_t x_mask = dist(gen);
      const unsigned x_max = static_cast<unsigned>(std::bit_width(x_mask) - 1);
      const uint64_t mask_l = one_bit(x_max) - 1;
      const uint64_t mask_u = ~((one_bit(x_max) << 1) - 1);
      std::vector<int> visits(one_bit(n), 0);
      for (uint64_t i = 0; i < one_bit(n) / 2; ++i) {
        const uint64_t i0 = ((i << 1) & mask_u) | (i & mask_l);
        const uint64_t i1 = i0 ^ x_mask;
        visits[i0] += 1;
        visits[i1] += 1;
      }
      for (int v : visits) CHECK(v == 1);

      // Behavioral double-check: X(x_mask) twice is the identity.
      const auto ref = oracle::random_state(n, gen);
      Amplitudes a = from_vec(n, ref);
      const PauliMasks masks{x_mask, 0, 0, x_max};
      apply_pauli_fused(a.view(), masks);
      apply_pauli_fused(a.view(), masks);
      CHECK(oracle::max_abs_diff(to_vec(a), ref) < 1e-13);
    }
  }
}

TEST_CASE("unitaries preserve the norm") {
  std::mt19937_64 gen(13);
  for (unsigned k = 1; k <= 3; ++k) {
    for (int rep = 0; rep < 8; ++rep) {
      Amplitudes a = from_vec(4, oracle::random_state(4, gen));
      GateMatrix m{k, oracle::random_unitary(k, gen)};
      std::vector<unsigned> targets;
      for (unsigned q = 0; q < k; ++q) targets.push_back(q + 1);
      apply_matrix(a.view(), m, targets);
      CHECK(std::abs(norm_sq(a.view()) - 1.0) < 1e-10);
    }
  }
}

TEST_CASE("expval_matrix") {
  Amplitudes a(1);
  apply_matrix(a.view(), gate_matrix(GateKind::H, {}), q0);

  CHECK(expval_matrix(a.view(), gate_matrix(GateKind::ID, {}), q0) == doctest::Approx(1.0));

  GateMatrix proj0{1, {1, 0, 0, 0}};
  CHECK(expval_matrix(a.view(), proj0, q0) == doctest::Approx(0.5));

  GateMatrix weak_x{1, {0, 0.1, 0.1, 0}};  // sqrt(0.01) * X
  std::mt19937_64 gen(3);
  for (int rep = 0; rep < 5; ++rep) {
    Amplitudes s = from_vec(3, oracle::random_state(3, gen));
    CHECK(expval_matrix(s.view(), weak_x, std::vector<unsigned>{2}) ==
          doctest::Approx(0.01).epsilon(1e-12));
  }

  // Matches the norm of a copy after apply_matrix.
  for (int rep = 0; rep < 5; ++rep) {
    Amplitudes s = from_vec(3, oracle::random_state(3, gen));
    GateMatrix m{2, oracle::random_unitary(2, gen)};
    for (cplx& e : m.entries) e *= 0.5;
    const std::vector<unsigned> qs = {0, 2};
    const double ev = expval_matrix(s.view(), m, qs);
    Amplitudes copy = s;
    apply_matrix(copy.view(), m, qs);
    CHECK(ev == doctest::Approx(norm_sq(copy.view())).epsilon(1e-12));
  }
}

TEST_CASE("probabilities") {
  Amplitudes one(1);
  apply_matrix(one.view(), gate_matrix(GateKind::X, {}), q0);
  const auto p1 = probabilities(one.view(), q0);
  CHECK(p1[0] == 0.0);
  CHECK(p1[1] == 1.0);

  Amplitudes bell(2);
  apply_matrix(bell.view(), gate_matrix(GateKind::H, {}), q0);
  apply_matrix(bell.view(), gate_matrix(GateKind::CX, {}), std::vector<unsigned>{0, 1});
  const auto pb = probabilities(bell.view(), q0);
  CHECK(pb[0] == doctest::Approx(0.5));
  CHECK(pb[1] == doctest::Approx(0.5));

  std::mt19937_64 gen(17);
  Amplitudes s = from_vec(5, oracle::random_state(5, gen));
  const std::vector<unsigned> subset = {4, 1, 2};
  const auto ps = probabilities(s.view(), subset);
  double total = 0.0;
  for (double p : ps) total += p;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("project_and_renormalize") {
  Amplitudes a(1);
  apply_matrix(a.view(), gate_matrix(GateKind::H, {}), q0);
  project_and_renormalize(a.view(), q0, 1, 0.5);
  CHECK(std::abs(a[1] - cplx{1.0}) < 1e-12);
  CHECK(std::abs(a[0]) == 0.0);

  Amplitudes skew = from_vec(2, {std::sqrt(0.2), 0, 0, std::sqrt(0.8)});
  project_and_renormalize(skew.view(), std::vector<unsigned>{0, 1}, 3, 0.8);
  CHECK(std::abs(norm_sq(skew.view()) - 1.0) < 1e-12);
  CHECK(std::abs(skew[3] - cplx{1.0}) < 1e-12);

  CHECK_THROWS_AS(project_and_renormalize(skew.view(), q0, 0, 0.0), DegenerateDistribution);
}

TEST_CASE("pick_outcome strictness and fallback") {
  const std::vector<double> probs = {0.25, 0.0, 0.5, 0.25};
  CHECK(pick_outcome(probs, 0.0) == 0);
  CHECK(pick_outcome(probs, 0.25) == 2);    // zero-prob outcome unreachable
  CHECK(pick_outcome(probs, 0.2499) == 0);
  CHECK(pick_outcome(probs, 0.999999) == 3);
  const std::vector<double> slack = {0.25, 0.25, 0.4999999};  // sums below 1
  CHECK(pick_outcome(slack, 0.9999999999) == 2);
  const std::vector<double> zero_tail = {0.5, 0.4999999, 0.0};
  CHECK(pick_outcome(zero_tail, 0.99999999999) == 1);  // skips the zero tail
  CHECK_THROWS_AS(pick_outcome(std::vector<double>{0.0, 0.0}, 0.5), DegenerateDistribution);
}

TEST_CASE("sample_counts") {
  Amplitudes one(1);
  apply_matrix(one.view(), gate_matrix(GateKind::X, {}), q0);
  const Counts c1 = sample_counts(one.view(), q0, 100, ShotRng{42});
  REQUIRE(c1.size() == 1);
  CHECK(c1.at("1") == 100);

  Amplitudes bell(2);
  apply_matrix(bell.view(), gate_matrix(GateKind::H, {}), q0);
  apply_matrix(bell.view(), gate_matrix(GateKind::CX, {}), std::vector<unsigned>{0, 1});
  const uint64_t shots = 100000;
  const Counts cb = sample_counts(bell.view(), std::vector<unsigned>{0, 1}, shots, ShotRng{7});
  CHECK(cb.count("01") == 0);
  CHECK(cb.count("10") == 0);
  const double bound = 3.0 * std::sqrt(0.25 * static_cast<double>(shots));
  CHECK(std::abs(static_cast<double>(cb.at("00")) - 50000.0) < bound);
  CHECK(std::abs(static_cast<double>(cb.at("11")) - 50000.0) < bound);
  uint64_t total = 0;
  for (const auto& [k, n] : cb) total += n;
  CHECK(total == shots);
}
