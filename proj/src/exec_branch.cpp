// Copyright (c) 2026 shotsim contributors
// SPDX-License-Identifier: Apache-2.0
//
// Shot-branching executor: one shared state for all shots, forked into
// child states only where randomness strikes. A pass walks the whole
// program breadth-first (all live nodes advance through the same
// instruction); when branching would exceed the state budget, the
// smallest children are deferred to a waiting list and re-run from the
// top in a later pass.
#include "shotsim/exec_branch.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <map>
#include <numeric>
#include <stdexcept>

#include "shotsim/exec_naive.hpp"

namespace shotsim {

namespace {

struct Group {
  uint64_t key = 0;      // decision index: pauli term / kraus matrix / outcome
  double param = 0.0;    // selection probability for kraus/measure branches
  bool transform = true; // false for identity decisions and failed conditions
  std::vector<uint64_t> shots;
};

std::vector<Group> classify_site(const BranchNode& node, const ProgramOp& site,
                                 const NoisyCircuit& program, uint64_t seed) {
  std::vector<Group> out;
  if (site.condition && !site.condition->holds(node.creg)) {
    out.push_back({0, 0.0, false, node.shot_ids});
    return out;
  }
  std::map<uint64_t, Group> buckets;
  auto put = [&buckets](uint64_t key, double param, bool transform, uint64_t shot) {
    Group& g = buckets[key];
    if (g.shots.empty()) {
      g.key = key;
      g.param = param;
      g.transform = transform;
    }
    g.shots.push_back(shot);
  };

  switch (site.kind) {
    case ProgramOp::Kind::PauliSite:
      for (uint64_t shot : node.shot_ids) {
        const size_t term = pick_site_term(site.term_cum, uniform(seed, shot, site.event));
        put(term, 0.0, !site.term_identity[term], shot);
      }
      break;
    case ProgramOp::Kind::KrausSite: {
      const KrausError& kraus = program.kraus_channels[site.channel];
      double max_u = 0.0;
      for (uint64_t shot : node.shot_ids) {
        max_u = std::max(max_u, uniform(seed, shot, site.event));
      }
      // Expectation values are a function of the shared state, so they are
      // computed once per node; the scan stops as soon as every draw is
      // covered, which reproduces the per-shot early exit exactly.
      std::vector<double> p, cum;
      double acc = 0.0;
      for (const GateMatrix& m : kraus.matrices) {
        p.push_back(expval_matrix(node.state.view(), m, site.qubits));
        acc += p.back();
        cum.push_back(acc);
        if (max_u < acc) break;
      }
      for (uint64_t shot : node.shot_ids) {
        const double u = uniform(seed, shot, site.event);
        size_t sel = cum.size() - 1;  // slack fallback: last matrix, its p
        for (size_t i = 0; i < cum.size(); ++i) {
          if (u < cum[i]) {
            sel = i;
            break;
          }
        }
        put(sel, p[sel], true, shot);
      }
      break;
    }
    case ProgramOp::Kind::Measure:
    case ProgramOp::Kind::Reset: {
      const std::vector<double> probs = probabilities(node.state.view(), site.qubits);
      for (uint64_t shot : node.shot_ids) {
        const size_t m = pick_outcome(probs, uniform(seed, shot, site.event));
        put(m, probs[m], true, shot);
      }
      break;
    }
    default:
      throw std::logic_error("classify_site on a deterministic op");
  }
  out.reserve(buckets.size());
  for (auto& [key, g] : buckets) out.push_back(std::move(g));
  return out;
}

void apply_decision(BranchNode& child, const Group& g, const ProgramOp& site,
                    const NoisyCircuit& program) {
  if (!g.transform) return;
  switch (site.kind) {
    case ProgramOp::Kind::PauliSite:
      apply_pauli_fused(child.state.view(), site.term_masks[g.key]);
      break;
    case ProgramOp::Kind::KrausSite:
      apply_matrix_scaled(child.state.view(),
                          program.kraus_channels[site.channel].matrices[g.key], site.qubits,
                          g.param);
      break;
    case ProgramOp::Kind::Measure:
      project_and_renormalize(child.state.view(), site.qubits, g.key, g.param);
      for (size_t b = 0; b < site.clbits.size(); ++b) {
        const uint64_t bit = (g.key >> b) & 1;
        child.creg = (child.creg & ~one_bit(site.clbits[b])) | (bit << site.clbits[b]);
      }
      break;
    case ProgramOp::Kind::Reset: {
      project_and_renormalize(child.state.view(), site.qubits, g.key, g.param);
      if (g.key != 0) {
        PauliMasks x;
        x.x_mask = scatter_bits(g.key, site.qubits);
        x.x_max = static_cast<unsigned>(std::bit_width(x.x_mask) - 1);
        apply_pauli_fused(child.state.view(), x);
      }
      break;
    }
    default:
      break;
  }
}

// Turns one parent and its (kept) decision groups into child nodes. The
// first child inherits the parent's storage; the rest copy it before any
// transformation runs.
void materialize(BranchNode&& parent, std::vector<Group>&& groups, const ProgramOp& site,
                 const NoisyCircuit& program, std::vector<BranchNode>& out) {
  if (groups.empty()) return;
  const size_t first = out.size();
  for (size_t gi = 0; gi < groups.size(); ++gi) {
    BranchNode child{gi == 0 ? std::move(parent.state) : out[first].state,
                     std::move(groups[gi].shots), parent.creg};
    out.push_back(std::move(child));
  }
  for (size_t gi = 0; gi < groups.size(); ++gi) {
    apply_decision(out[first + gi], groups[gi], site, program);
  }
}

void advance_node(BranchNode& node, const NoisyCircuit& program, size_t begin, size_t end) {
  for (size_t i = begin; i < end; ++i) {
    const ProgramOp& op = program.ops[i];
    if (op.kind != ProgramOp::Kind::Gate) continue;  // barriers are no-ops
    if (op.condition && !op.condition->holds(node.creg)) continue;
    apply_matrix(node.state.view(), op.matrix, op.qubits);
  }
}

}  // namespace

std::vector<BranchNode> branch_at_site(BranchNode node, const ProgramOp& site,
                                       const NoisyCircuit& program, uint64_t seed) {
  std::vector<Group> groups = classify_site(node, site, program, seed);
  std::vector<BranchNode> children;
  children.reserve(groups.size());
  materialize(std::move(node), std::move(groups), site, program, children);
  return children;
}

RunResult run_branch(const NoisyCircuit& program, const RunOptions& options) {
  if (options.shots < 1) throw std::invalid_argument("shots must be >= 1");
  if (options.workers < 1) throw std::invalid_argument("workers must be >= 1");
  if (options.branch_budget < 1) throw std::invalid_argument("branch budget must be >= 1");
  const auto t0 = std::chrono::steady_clock::now();

  const size_t end =
      program.sampling_eligible ? program.terminal_measure_begin : program.ops.size();
  std::vector<uint64_t> values(options.shots);
  std::vector<uint64_t> waiting(options.shots);
  std::iota(waiting.begin(), waiting.end(), 0);

  BranchStats stats;
  while (!waiting.empty()) {
    ++stats.passes;
    std::vector<BranchNode> live;
    live.push_back({Amplitudes(program.num_qubits), std::move(waiting), 0});
    waiting.clear();
    stats.peak_states = std::max<uint64_t>(stats.peak_states, 1);

    size_t i = 0;
    while (i < end) {
      size_t j = i;
      while (j < end && !program.ops[j].consumes_randomness()) ++j;
      if (j > i) {
        const size_t lo = i, hi = j;
        parallel_chunks(options.workers, live.size(), [&](uint64_t b, uint64_t e) {
          for (uint64_t p = b; p < e; ++p) advance_node(live[p], program, lo, hi);
        });
      }
      if (j == end) break;
      const ProgramOp& site = program.ops[j];

      std::vector<std::vector<Group>> groups(live.size());
      parallel_chunks(options.workers, live.size(), [&](uint64_t b, uint64_t e) {
        for (uint64_t p = b; p < e; ++p) {
          groups[p] = classify_site(live[p], site, program, options.seed);
        }
      });

      size_t total = 0;
      for (const auto& g : groups) total += g.size();
      if (total > options.branch_budget) {
        // Keep the most-populated children; defer the rest to the waiting
        // list. Ties go to the earlier parent, then the lower decision.
        struct Cand {
          size_t parent;
          size_t gi;
          size_t count;
          uint64_t key;
        };
        std::vector<Cand> cands;
        cands.reserve(total);
        for (size_t p = 0; p < groups.size(); ++p) {
          for (size_t gi = 0; gi < groups[p].size(); ++gi) {
            cands.push_back({p, gi, groups[p][gi].shots.size(), groups[p][gi].key});
          }
        }
        std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
          if (a.count != b.count) return a.count > b.count;
          if (a.parent != b.parent) return a.parent < b.parent;
          return a.key < b.key;
        });
        std::vector<std::vector<uint8_t>> keep(groups.size());
        for (size_t p = 0; p < groups.size(); ++p) keep[p].assign(groups[p].size(), 0);
        for (size_t c = 0; c < options.branch_budget; ++c) {
          keep[cands[c].parent][cands[c].gi] = 1;
        }
        for (size_t p = 0; p < groups.size(); ++p) {
          std::vector<Group> kept;
          for (size_t gi = 0; gi < groups[p].size(); ++gi) {
            if (keep[p][gi]) {
              kept.push_back(std::move(groups[p][gi]));
            } else {
              auto& shots = groups[p][gi].shots;
              waiting.insert(waiting.end(), shots.begin(), shots.end());
            }
          }
          groups[p] = std::move(kept);
        }
      }

      std::vector<BranchNode> next;
      next.reserve(std::min<uint64_t>(total, options.branch_budget));
      for (size_t p = 0; p < groups.size(); ++p) {
        materialize(std::move(live[p]), std::move(groups[p]), site, program, next);
      }
      live = std::move(next);
      stats.peak_states = std::max<uint64_t>(stats.peak_states, live.size());
      i = j + 1;
    }

    for (BranchNode& leaf : live) {
      if (program.sampling_eligible) {
        const std::vector<double> probs =
            probabilities(leaf.state.view(), program.sample_qubits);
        for (uint64_t shot : leaf.shot_ids) {
          const uint64_t outcome =
              pick_outcome(probs, uniform(options.seed, shot, program.sampling_event()));
          values[shot] = program.apply_sample_outcome(leaf.creg, outcome);
        }
      } else {
        // Every shot mapped to this state shares its classical register.
        for (uint64_t shot : leaf.shot_ids) values[shot] = leaf.creg;
      }
      if (options.collect_leaf_stats) stats.leaf_shots.push_back(leaf.shot_ids.size());
    }
  }

  RunResult result;
  result.strategy = "branch";
  result.shots = options.shots;
  result.seed = options.seed;
  result.workers = options.workers;
  result.branch = std::move(stats);
  result.peak_states = result.branch.peak_states;
  result.counts = counts_from_values(values, program.num_clbits, program.has_measure);
  if (options.record_shot_values) result.shot_values = std::move(values);
  result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

}  // namespace shotsim
