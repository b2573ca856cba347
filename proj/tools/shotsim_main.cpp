// Copyright (c) 2026 shotsim contributors
// SPDX-License-Identifier: Apache-2.0
//
// shotsim CLI: benchmark sweeps, TVD reports, and single-circuit runs.
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "shotsim/bench.hpp"
#include "shotsim/circuit_io.hpp"
#include "shotsim/density.hpp"
#include "shotsim/kernels.hpp"

namespace {

using namespace shotsim;

void add_sweep_options(CLI::App* cmd, BenchConfig& config) {
  cmd->add_option("--circuit", config.circuit, "benchmark circuit (qft)");
  cmd->add_option("--qubits", config.qubits, "qubit counts")->delimiter(',')->required();
  cmd->add_option("--shots", config.shots, "shots per cell");
  cmd->add_option("--noise", config.noise, "pauli | kraus | none");
  cmd->add_option("--error-rate", config.error_rates, "depolarizing rates")->delimiter(',');
  cmd->add_option("--strategy", config.strategies, "naive | batch | branch")->delimiter(',');
  cmd->add_option("--workers", config.workers, "worker counts")->delimiter(',');
  cmd->add_option("--seed", config.seed, "run seed");
  cmd->add_option("--budget", config.budget, "max live states (branch)");
  cmd->add_option("--max-batch-size", config.max_batch_size, "shots per batch (batch)");
  cmd->add_option("--repeats", config.repeats, "timed repetitions per cell");
  cmd->add_option("--out", config.out_path, "output CSV path");
  cmd->add_option("--kernels", config.kernels, "auto | scalar | avx2");
  cmd->add_option("--mem-limit", config.mem_limit_bytes,
                  "memory limit in bytes (default: SHOTSIM_MEM_LIMIT_BYTES or 1 GiB)");
}

int run_one(const std::string& circuit_path, const std::string& noise_path,
            const std::string& strategy, uint64_t shots, uint64_t seed, unsigned workers,
            uint64_t budget, uint64_t max_batch, const std::string& kernels) {
  select_kernels(kernels);
  const Circuit circuit = load_circuit(circuit_path);
  require_valid(circuit);
  const NoiseModel model = noise_path.empty() ? NoiseModel{} : NoiseModel::load(noise_path);
  const NoisyCircuit program = instrument(circuit, model);

  RunOptions options;
  options.shots = shots;
  options.seed = seed;
  options.workers = workers;
  options.branch_budget = budget;
  options.max_batch_size = max_batch;
  const RunResult result = executor_by_name(strategy)(program, options);

  for (const auto& [key, n] : result.counts) {
    std::cout << (key.empty() ? "(no measure)" : key) << " " << n << "\n";
  }
  std::cerr << "strategy=" << strategy << " shots=" << shots << " seed=" << seed
            << " seconds=" << result.wall_seconds;
  if (strategy == "batch") std::cerr << " dispatches=" << result.dispatch_count;
  if (strategy == "branch") {
    std::cerr << " peak_states=" << result.branch.peak_states
              << " passes=" << result.branch.passes;
  }
  std::cerr << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-shot state-vector simulator benchmark harness"};
  app.require_subcommand(1);

  BenchConfig bench_config;
  CLI::App* bench = app.add_subcommand("bench", "run a timing sweep, writing one CSV row per cell");
  add_sweep_options(bench, bench_config);

  BenchConfig tvd_config;
  tvd_config.shots = 50000;
  tvd_config.out_path = "tvd.csv";
  CLI::App* tvd = app.add_subcommand("tvd", "compare executor counts against the exact reference");
  add_sweep_options(tvd, tvd_config);

  std::string circuit_path, noise_path, strategy = "batch", kernels = "auto";
  uint64_t shots = 1000, seed = 1, budget = 64, max_batch = 0;
  unsigned workers = 1;
  CLI::App* run = app.add_subcommand("run", "execute a circuit file and print counts");
  run->add_option("--circuit", circuit_path, "circuit file (text or JSON)")->required();
  run->add_option("--noise-model", noise_path, "noise model JSON file");
  run->add_option("--strategy", strategy, "naive | batch | branch");
  run->add_option("--shots", shots, "shot count");
  run->add_option("--seed", seed, "run seed");
  run->add_option("--workers", workers, "worker count");
  run->add_option("--budget", budget, "max live states (branch)");
  run->add_option("--max-batch-size", max_batch, "shots per batch (batch)");
  run->add_option("--kernels", kernels, "auto | scalar | avx2");

  std::string validate_path;
  CLI::App* check = app.add_subcommand("validate", "check a circuit file and list violations");
  check->add_option("--circuit", validate_path, "circuit file (text or JSON)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 3;
  }

  try {
    if (bench->parsed()) return run_bench(bench_config, std::cout, std::cerr);
    if (tvd->parsed()) return emit_tvd_report(tvd_config, std::cout, std::cerr);
    if (run->parsed()) {
      return run_one(circuit_path, noise_path, strategy, shots, seed, workers, budget,
                     max_batch, kernels);
    }
    if (check->parsed()) {
      const Circuit circuit = load_circuit(validate_path);
      const auto violations = validate(circuit);
      if (violations.empty()) {
        std::cout << "ok\n";
        return 0;
      }
      for (const auto& v : violations) {
        std::cout << "instruction " << v.instruction << ": " << v.message << "\n";
      }
      return 1;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 3;
  } catch (const CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
