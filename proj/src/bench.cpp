// Copyright (c) 2026 shotsim contributors
// SPDX-License-Identifier: Apache-2.0
#include "shotsim/bench.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "shotsim/circuit_io.hpp"
#include "shotsim/density.hpp"
#include "shotsim/kernels.hpp"

namespace shotsim {

namespace {

constexpr const char* kCsvHeader =
    "circuit,qubits,shots,noise,error_rate,strategy,workers,seed,budget,max_batch_size,"
    "repeats,status,noise_sites,wall_seconds,dispatch_count,peak_states,passes,tvd,"
    "counts_checksum";

struct Cell {
  unsigned qubits;
  double error_rate;
  std::string strategy;
  unsigned workers;
};

std::string fmt_seconds(double s) {
  std::ostringstream o;
  o << std::setprecision(6) << std::fixed << s;
  return o.str();
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

void validate_config(const BenchConfig& config) {
  if (config.circuit != "qft") throw ConfigError("unknown circuit: " + config.circuit);
  if (config.qubits.empty()) throw ConfigError("qubits list is empty");
  for (unsigned q : config.qubits) {
    if (q < 1 || q > 24) throw ConfigError("qubit counts must be in [1, 24]");
  }
  if (config.shots < 1) throw ConfigError("shots must be >= 1");
  if (config.noise != "pauli" && config.noise != "kraus" && config.noise != "none") {
    throw ConfigError("noise must be pauli, kraus or none");
  }
  if (config.error_rates.empty()) throw ConfigError("error-rate list is empty");
  for (double r : config.error_rates) {
    if (r < 0.0 || r > 1.0) throw ConfigError("error rates must be in [0, 1]");
  }
  if (config.strategies.empty()) throw ConfigError("strategy list is empty");
  for (const std::string& s : config.strategies) executor_by_name(s);
  if (config.workers.empty()) throw ConfigError("workers list is empty");
  for (unsigned w : config.workers) {
    if (w < 1) throw ConfigError("workers must be >= 1");
  }
  if (config.budget < 1) throw ConfigError("budget must be >= 1");
  if (config.repeats < 1) throw ConfigError("repeats must be >= 1");
  select_kernels(config.kernels);  // validates the name
}

Circuit make_bench_circuit(const std::string& name, unsigned qubits) {
  if (name != "qft") throw ConfigError("unknown circuit: " + name);
  return measure_all(qft_circuit(qubits));
}

int run_bench(const BenchConfig& config, std::ostream& out, std::ostream& err) {
  validate_config(config);
  select_kernels(config.kernels);

  std::ofstream csv(config.out_path);
  if (!csv) throw ConfigError("cannot open output file: " + config.out_path);
  csv << kCsvHeader << "\n";

  out << "strategy        qubits  noise  rate      workers  seconds     dispatches  peak  tvd\n";

  const std::vector<double> rates =
      config.noise == "none" ? std::vector<double>{0.0} : config.error_rates;

  for (unsigned q : config.qubits) {
    const Circuit circuit = make_bench_circuit(config.circuit, q);
    for (double rate : rates) {
      const NoiseModel model =
          config.noise == "none" ? NoiseModel{} : make_depolarizing_model(rate, config.noise == "kraus");
      const NoisyCircuit program = instrument(circuit, model);

      // The exact register distribution is shared by every strategy cell.
      std::map<uint64_t, double> exact;
      bool have_exact = false;
      if (q <= 6) {
        exact = exact_creg_distribution(program);
        have_exact = true;
      }

      struct Done {
        std::string strategy;
        unsigned workers;
        uint64_t checksum;
        RunResult result;
      };
      std::vector<Done> done;

      for (const std::string& strategy : config.strategies) {
        for (unsigned workers : config.workers) {
          RunOptions options;
          options.shots = config.shots;
          options.seed = config.seed;
          options.workers = workers;
          options.max_batch_size = config.max_batch_size;
          options.branch_budget = config.budget;
          options.mem_limit_bytes = config.mem_limit_bytes;
          options.record_shot_values = true;
          const ExecutorFn executor = executor_by_name(strategy);

          std::string status = "ok";
          RunResult result;
          std::vector<double> times;
          try {
            result = executor(program, options);  // warm-up, also keeps counts
            for (unsigned r = 0; r < config.repeats; ++r) {
              RunResult timed = executor(program, options);
              if (counts_checksum(timed.counts) != counts_checksum(result.counts)) {
                err << "nondeterministic counts within one cell\n";
                return 2;
              }
              times.push_back(timed.wall_seconds);
            }
          } catch (const CapacityError& e) {
            err << "capacity: " << e.what() << "\n";
            status = "capacity-error";
          }

          csv << config.circuit << ',' << q << ',' << config.shots << ',' << config.noise << ','
              << rate << ',' << strategy << ',' << workers << ',' << config.seed << ','
              << config.budget << ',' << config.max_batch_size << ',' << config.repeats << ','
              << status << ',';
          if (status != "ok") {
            csv << program.noise_sites() << ",,,,,,\n";
            continue;
          }

          const double wall = median(times);
          const uint64_t checksum = counts_checksum(result.counts);
          std::string tvd_text;
          if (have_exact) {
            tvd_text = fmt_seconds(tvd_vs_exact(result.counts, config.shots, exact));
          }
          csv << program.noise_sites() << ',' << fmt_seconds(wall) << ',';
          if (strategy == "batch") csv << result.dispatch_count;
          csv << ',' << result.peak_states << ',';
          if (strategy == "branch") csv << result.branch.passes;
          csv << ',' << tvd_text << ',' << checksum << "\n";

          out << std::left << std::setw(16) << strategy << std::setw(8) << q << std::setw(7)
              << config.noise << std::setw(10) << rate << std::setw(9) << workers
              << std::setw(12) << fmt_seconds(wall) << std::setw(12)
              << (strategy == "batch" ? std::to_string(result.dispatch_count) : std::string("-"))
              << std::setw(6) << result.peak_states << (tvd_text.empty() ? "-" : tvd_text)
              << "\n";

          // Cross-strategy equivalence is enforced on every sweep.
          for (const Done& prior : done) {
            if (prior.checksum == checksum) continue;
            err << "counts mismatch between " << prior.strategy << "(workers=" << prior.workers
                << ") and " << strategy << "(workers=" << workers << ") at qubits=" << q
                << " rate=" << rate << " seed=" << config.seed << "\n";
            const auto& a = prior.result.shot_values;
            const auto& b = result.shot_values;
            for (uint64_t s = 0; s < std::min(a.size(), b.size()); ++s) {
              if (a[s] != b[s]) {
                err << "first divergent shot: " << s << " (" << bitstring(a[s], program.num_clbits)
                    << " vs " << bitstring(b[s], program.num_clbits) << ")\n";
                break;
              }
            }
            err << "program:\n" << circuit_to_text(circuit);
            return 2;
          }
          done.push_back({strategy, workers, checksum, std::move(result)});
        }
      }
    }
  }
  out << "wrote " << config.out_path << "\n";
  return 0;
}

int emit_tvd_report(const BenchConfig& config, std::ostream& out, std::ostream& err) {
  validate_config(config);
  select_kernels(config.kernels);

  std::ofstream csv(config.out_path);
  if (!csv) throw ConfigError("cannot open output file: " + config.out_path);
  csv << "circuit,qubits,shots,noise,error_rate,strategy,workers,seed,tvd\n";

  const std::vector<double> rates =
      config.noise == "none" ? std::vector<double>{0.0} : config.error_rates;
  for (unsigned q : config.qubits) {
    if (q > 6) {
      err << "skipping qubits=" << q << ": exact reference is limited to 6 qubits\n";
      continue;
    }
    const Circuit circuit = make_bench_circuit(config.circuit, q);
    for (double rate : rates) {
      const NoiseModel model =
          config.noise == "none" ? NoiseModel{} : make_depolarizing_model(rate, config.noise == "kraus");
      const NoisyCircuit program = instrument(circuit, model);
      const auto exact = exact_creg_distribution(program);
      for (const std::string& strategy : config.strategies) {
        for (unsigned workers : config.workers) {
          RunOptions options;
          options.shots = config.shots;
          options.seed = config.seed;
          options.workers = workers;
          options.max_batch_size = config.max_batch_size;
          options.branch_budget = config.budget;
          options.mem_limit_bytes = config.mem_limit_bytes;
          const RunResult result = executor_by_name(strategy)(program, options);
          const double tvd = tvd_vs_exact(result.counts, config.shots, exact);
          csv << config.circuit << ',' << q << ',' << config.shots << ',' << config.noise << ','
              << rate << ',' << strategy << ',' << workers << ',' << config.seed << ','
              << fmt_seconds(tvd) << "\n";
          out << "qubits=" << q << " rate=" << rate << " strategy=" << strategy
              << " tvd=" << fmt_seconds(tvd) << "\n";
        }
      }
    }
  }
  out << "wrote " << config.out_path << "\n";
  return 0;
}

}  // namespace shotsim
