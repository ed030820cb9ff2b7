#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qsub/interference.hpp"
#include "qsub/predicate.hpp"

namespace qsub {

struct TrialRecord {
  std::uint64_t trial_index;
  int flag_outcome;  // 0 or 1
  // Present only when the trial delivered a value that satisfies the
  // predicate (validated via evaluate). A post-selected subtraction can
  // sample a residual non-solution; such trials record no solution.
  std::optional<std::uint64_t> solution_found;
  int oracle_calls;
  int interference_attempts;
  bool succeeded;
};

struct ExperimentReport {
  std::string predicate_text;  // canonical printed form
  int k = 0;
  std::uint64_t n = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  InterferenceMode mode = InterferenceMode::kIdealRejection;
  double empirical_p_flag1 = 0.0;
  double expected_p_flag1 = 0.0;  // n / 2^k
  // Means are absent (JSON null) when there is nothing to average over.
  // Oracle calls are averaged over all successful trials; interference
  // attempts are conditioned on flag = 0 trials only.
  std::optional<double> mean_oracle_calls_per_success;
  std::optional<double> mean_interference_attempts_per_success;
  double classical_expected_checks = 0.0;  // (2^k + 1) / (n + 1); 2^k when n = 0
  int grover_optimal_iterations = 0;
  double grover_success_probability = 0.0;
  std::vector<TrialRecord> records;
};

enum class ReportFormat { kJson, kCsv };

// One full pass over the three-step algorithm per trial: prepare uniform
// X (x) Y, apply the oracle, measure the flag; on 1 sample X, on 0 run the
// selected interference mode on the collapsed state and sample on success.
// Trials use independent streams derived from (seed, trial_index).
// n = 0 completes with zero successes rather than erroring.
ExperimentReport run_measure_interfere(const Predicate& pred, int k,
                                     InterferenceMode mode,
                                     std::uint64_t trials, std::uint64_t seed,
                                     int max_bits = kDefaultMaxBits);

// Ideal-mode algorithm run plus the classical and Grover baselines. Classical
// expectation (2^k + 1)/(n + 1) is cross-checked by Monte Carlo within
// 3 standard errors and the Grover closed form against full simulation to
// 1e-9; violations throw InternalCheckFailure. Throws NoSolutions if n = 0.
ExperimentReport run_comparison(const Predicate& pred, int k,
                                std::uint64_t trials, std::uint64_t seed,
                                int max_bits = kDefaultMaxBits);

struct ClassicalBaseline {
  int k = 0;
  std::uint64_t n = 0;
  std::uint64_t runs = 0;
  std::uint64_t seed = 0;
  double mean_checks = 0.0;
  double expected_checks = 0.0;
  std::vector<std::uint32_t> checks;                   // per run
  std::vector<std::optional<std::uint64_t>> found;     // per run
};

// Uniform random probing without replacement until a solution appears
// (all 2^k probes when none exists). Expectation (2^k + 1)/(n + 1).
ClassicalBaseline run_classical_baseline(const Predicate& pred, int k,
                                         std::uint64_t runs,
                                         std::uint64_t seed,
                                         int max_bits = kDefaultMaxBits);

// JSON: the summary object, fixed key order, floats as shortest-17
// round-trippable decimals. CSV: one row per TrialRecord. Deterministic:
// identical reports serialize byte-identically. Throws IoError when the
// sink fails.
void emit_report(const ExperimentReport& report, ReportFormat format,
                 std::ostream& out);

const char* mode_name(InterferenceMode mode);  // "ideal_rejection" etc.

}  // namespace qsub
