// Copyright (c) 2026 shotsim contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "shotsim/exec.hpp"
#include "shotsim/statevector.hpp"

namespace shotsim {

/// One shared state plus the shots currently mapped to it. All mapped
/// shots share the same branch history, hence the same classical register.
struct BranchNode {
  Amplitudes state;
  std::vector<uint64_t> shot_ids;
  uint64_t creg = 0;
};

/// Evaluates a randomness site for every shot in the node, groups shots by
/// decision, and materializes one child per distinct decision. The first
/// group reuses the parent's storage; later groups deep-copy it before
/// their transformation. Children appear in decision-index order and their
/// shot lists partition the parent's.
std::vector<BranchNode> branch_at_site(BranchNode node, const ProgramOp& site,
                                       const NoisyCircuit& program, uint64_t seed);

}  // namespace shotsim
