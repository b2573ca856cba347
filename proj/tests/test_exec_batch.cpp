// Copyright (c) 2026 shotsim contributors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "shotsim/exec_batch.hpp"
#include "shotsim/exec_naive.hpp"

using namespace shotsim;

namespace {

std::vector<uint64_t> iota_ids(uint64_t n) {
  std::vector<uint64_t> ids(n);
  for (uint64_t i = 0; i < n; ++i) ids[i] = i;
  return ids;
}

double segment_diff(const BatchState& batch, uint64_t s, const Amplitudes& ref) {
  double worst = 0.0;
  const auto seg = batch.segment(s);
  for (uint64_t j = 0; j < seg.size(); ++j) worst = std::max(worst, std::abs(seg[j] - ref[j]));
  return worst;
}

}  // namespace

TEST_CASE("shot_index maps iterations to shots") {
  CHECK(shot_index(5, 3, 1) == 1);   // 5 / 2^2
  CHECK(shot_index(0, 3, 1) == 0);
  CHECK(shot_index(7, 2, 2) == 7);   // one iteration per shot
  CHECK(shot_index(0, 2, 1) == 0);
  CHECK(shot_index(1, 2, 1) == 0);
  CHECK(shot_index(2, 2, 1) == 1);
  CHECK(shot_index(3, 2, 1) == 1);
}

TEST_CASE("batched gate touches every segment in one dispatch") {
  BatchState batch(1, iota_ids(4), 0);
  ProgramOp op;
  op.kind = ProgramOp::Kind::Gate;
  op.qubits = {0};
  op.matrix = gate_matrix(GateKind::X, {});
  batch.apply_gate(op);
  CHECK(batch.dispatches() == 1);
  for (uint64_t s = 0; s < 4; ++s) {
    CHECK(std::abs(batch.segment(s)[1] - cplx{1.0}) < 1e-15);
  }

  // A condition nobody satisfies still costs one dispatch and changes nothing.
  op.condition = Condition{1, 1};
  BatchState untouched(1, iota_ids(4), 0);
  untouched.apply_gate(op);
  CHECK(untouched.dispatches() == 1);
  for (uint64_t s = 0; s < 4; ++s) {
    CHECK(std::abs(untouched.segment(s)[0] - cplx{1.0}) < 1e-15);
  }
}

TEST_CASE("batched pauli site: explicit draws select per-shot branches") {
  PauliError table;
  table.arity = 1;
  table.terms.push_back({0.99, PauliString{{PauliLetter::I}, {0}}});
  table.terms.push_back({1.00, PauliString{{PauliLetter::X}, {0}}});
  NoiseModel model;
  model.add_rule({{GateKind::ID}, 1, table});
  Circuit c;
  c.num_qubits = 1;
  c.instructions.push_back({GateKind::ID, {0}, {}, {}, std::nullopt});
  const NoisyCircuit program = instrument(c, model);
  const ProgramOp& site = program.ops[1];
  REQUIRE(site.kind == ProgramOp::Kind::PauliSite);

  BatchState batch(1, iota_ids(2), 0);
  const std::vector<double> u = {0.5, 0.995};
  batch.apply_pauli_site_with(site, u);
  CHECK(batch.dispatches() == 1);  // one dispatch for the whole site
  CHECK(std::abs(batch.segment(0)[0] - cplx{1.0}) < 1e-15);  // identity branch
  CHECK(std::abs(batch.segment(1)[1] - cplx{1.0}) < 1e-15);  // bit-flip branch

  // All-identity draws take no action at all.
  BatchState idle(1, iota_ids(3), 0);
  idle.apply_pauli_site_with(site, std::vector<double>{0.1, 0.2, 0.98});
  CHECK(idle.dispatches() == 0);
}

TEST_CASE("batched kraus runs the full matrix loop yet matches early-exit") {
  KrausError damp;
  damp.arity = 1;
  damp.matrices.push_back(GateMatrix{1, {1, 0, 0, std::sqrt(0.5)}});
  damp.matrices.push_back(GateMatrix{1, {0, std::sqrt(0.5), 0, 0}});
  NoiseModel model;
  model.add_rule({{GateKind::H}, 1, damp});

  Circuit c;
  c.num_qubits = 2;
  c.instructions.push_back({GateKind::H, {0}, {}, {}, std::nullopt});
  c.instructions.push_back({GateKind::H, {1}, {}, {}, std::nullopt});
  const NoisyCircuit program = instrument(c, model);

  const uint64_t S = 32;
  for (uint64_t seed : {1ull, 2ull, 3ull}) {
    RunOptions options{.shots = S, .seed = seed, .record_shot_values = true};
    const RunResult naive = run_naive(program, options);
    const RunResult batch = run_batch(program, options);
    CHECK(naive.counts == batch.counts);

    // Segment-level equality after the full program.
    BatchState bs(2, iota_ids(S), seed);
    bs.run(program);
    Amplitudes ref(2);
    for (uint64_t s = 0; s < S; ++s) {
      run_single_shot(program, s, seed, ref);
      CHECK(segment_diff(bs, s, ref) < 1e-12);
      CHECK(std::abs(norm_sq(bs.segment(s)) - 1.0) < 1e-10);
    }
  }
}

TEST_CASE("batched measure and conditional gates match naive per segment") {
  Circuit c;
  c.num_qubits = 2;
  c.num_clbits = 2;
  c.instructions.push_back({GateKind::H, {0}, {}, {}, std::nullopt});
  c.instructions.push_back({GateKind::MEASURE, {0}, {0}, {}, std::nullopt});
  c.instructions.push_back({GateKind::X, {1}, {}, {}, Condition{1, 1}});
  c.instructions.push_back({GateKind::H, {1}, {}, {}, Condition{1, 0}});
  c.instructions.push_back({GateKind::MEASURE, {1}, {1}, {}, std::nullopt});
  const NoisyCircuit program = instrument(c, NoiseModel{});

  const uint64_t S = 64;
  RunOptions options{.shots = S, .seed = 11, .record_shot_values = true};
  const RunResult naive = run_naive(program, options);
  const RunResult batch = run_batch(program, options);
  CHECK(naive.counts == batch.counts);
  CHECK(naive.shot_values == batch.shot_values);
}

TEST_CASE("segment exactness on random noisy programs") {
  std::mt19937_64 gen(4242);
  const NoiseModel model = make_depolarizing_model(0.1, false);
  for (int rep = 0; rep < 10; ++rep) {
    Circuit c = qft_circuit(2 + rep % 3);
    const NoisyCircuit program = instrument(c, model);
    const uint64_t S = 8 + (rep % 3) * 12;
    const uint64_t seed = gen();
    BatchState bs(c.num_qubits, iota_ids(S), seed);
    bs.run(program);
    Amplitudes ref(c.num_qubits);
    for (uint64_t s = 0; s < S; ++s) {
      run_single_shot(program, s, seed, ref);
      CHECK(segment_diff(bs, s, ref) < 1e-12);
    }
  }
}

TEST_CASE("perturbing one segment leaves the others untouched") {
  const NoisyCircuit program =
      instrument(measure_all(qft_circuit(3)), make_depolarizing_model(0.2, false));
  const uint64_t S = 6, seed = 5;
  BatchState clean(3, iota_ids(S), seed);
  BatchState dirty(3, iota_ids(S), seed);
  dirty.segment(2)[1] += cplx{0.4, -0.2};  // corrupt shot 2 before running
  clean.run(program);
  dirty.run(program);
  for (uint64_t s = 0; s < S; ++s) {
    if (s == 2) continue;
    double diff = 0.0;
    for (uint64_t j = 0; j < clean.segment(s).size(); ++j) {
      diff = std::max(diff, std::abs(clean.segment(s)[j] - dirty.segment(s)[j]));
    }
    CHECK(diff == 0.0);
  }
}

TEST_CASE("dispatch count is independent of the shot count") {
  const NoisyCircuit program = instrument(measure_all(qft_circuit(4)), NoiseModel{});
  RunOptions one{.shots = 1, .seed = 9};
  RunOptions many{.shots = 1024, .seed = 9};
  const RunResult a = run_batch(program, one);
  const RunResult b = run_batch(program, many);
  // 4 + 6 + 2 gates plus the terminal sampling dispatch.
  CHECK(a.dispatch_count == 13);
  CHECK(b.dispatch_count == 13);
}

TEST_CASE("memory estimate guards batch allocation") {
  const NoisyCircuit program = instrument(measure_all(qft_circuit(10)), NoiseModel{});
  RunOptions options{.shots = 4096, .seed = 1};
  options.max_batch_size = 4096;
  options.mem_limit_bytes = 1 << 20;  // 1 MiB cannot hold 4096 x 2^10 amplitudes
  CHECK_THROWS_AS(run_batch(program, options), CapacityError);

  options.max_batch_size = 0;  // derived size respects the limit instead
  const RunResult r = run_batch(program, options);
  uint64_t total = 0;
  for (const auto& [key, n] : r.counts) total += n;
  CHECK(total == 4096);
}

TEST_CASE("batch worker partitioning does not change counts") {
  const NoisyCircuit program =
      instrument(measure_all(qft_circuit(4)), make_depolarizing_model(0.02, false));
  const RunResult base = run_batch(program, {.shots = 600, .seed = 17, .workers = 1});
  for (unsigned w : {2u, 4u}) {
    const RunResult r = run_batch(program, {.shots = 600, .seed = 17, .workers = w});
    CHECK(r.counts == base.counts);
  }
  RunOptions small{.shots = 600, .seed = 17, .workers = 1};
  small.max_batch_size = 37;  // uneven batch boundaries
  CHECK(run_batch(program, small).counts == base.counts);
}
