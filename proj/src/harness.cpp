#include "qsub/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <string>

#include "qsub/oracle.hpp"

namespace qsub {
namespace {

// Cumulative Born distribution over a state's basis indices. sample() maps a
// uniform draw exactly the way sample_index does (first index whose running
// mass exceeds u), so a precomputed sampler and the direct op agree
// bit-for-bit on the same stream.
class CumulativeSampler {
 public:
  explicit CumulativeSampler(const StateVector& state) {
    cum_.reserve(state.dimension());
    double cum = 0.0;
    for (std::size_t i = 0; i < state.dimension(); ++i) {
      const double p = std::norm(state[i]);
      if (p > 0.0) last_nonzero_ = i;
      cum += p;
      cum_.push_back(cum);
    }
  }

  std::size_t sample(RandomStream& rng) const {
    const double u = rng.uniform01();
    const auto it = std::upper_bound(cum_.begin(), cum_.end(), u);
    if (it == cum_.end()) return last_nonzero_;
    return static_cast<std::size_t>(it - cum_.begin());
  }

 private:
  std::vector<double> cum_;
  std::size_t last_nonzero_ = 0;
};

// Everything about one experiment that does not change between trials.
// States are immutable, so sharing them across trials is free.
struct TrialSetup {
  InterferenceMode mode;
  const std::vector<bool>* table;
  double p_flag1 = 0.0;  // identical to the mass measure_flag computes

  std::optional<CumulativeSampler> solution_sampler;  // flag = 1 posterior

  bool ideal_available = false;
  std::optional<CumulativeSampler> ideal_sampler;  // ideal_interfere output

  double ancilla_success_probability = 0.0;
  std::optional<CumulativeSampler> diff_sampler;  // normalized (u_all - x_tilde)
};

TrialSetup prepare_trials(const Predicate& pred, int k, InterferenceMode mode,
                          const std::vector<bool>& table, std::uint64_t n,
                          int max_bits) {
  TrialSetup setup;
  setup.mode = mode;
  setup.table = &table;

  const RegisterLayout layout(k, /*has_flag=*/true, 0, max_bits);
  const StateVector post_oracle = apply_uc(uniform_superposition(layout), table);

  // Accumulated in the same index order as measure_flag so the hoisted
  // threshold matches the op exactly.
  const std::size_t flag_mask = std::size_t{1} << layout.flag_bit();
  for (std::size_t i = 0; i < post_oracle.dimension(); ++i) {
    if (i & flag_mask) setup.p_flag1 += std::norm(post_oracle[i]);
  }

  const std::uint64_t size = std::uint64_t{1} << k;
  if (n > 0) {
    setup.solution_sampler.emplace(project_flag(post_oracle, 1).posterior);
  }
  if (n < size) {
    const StateVector x_tilde = project_flag(post_oracle, 0).posterior;
    if (mode == InterferenceMode::kIdealRejection) {
      if (n > 0) {
        setup.ideal_available = true;
        setup.ideal_sampler.emplace(ideal_interfere(x_tilde, k));
      }
      // n = 0: every attempt hits ZeroResidual and the trial fails.
    } else {
      // The ancilla probability and difference state are deterministic;
      // only the post-selection outcome needs per-trial randomness.
      const SubtractionBranch branch = subtraction_branch(pred, k, x_tilde);
      setup.ancilla_success_probability = branch.ancilla_success_probability;
      if (branch.state.has_value()) {
        setup.diff_sampler.emplace(*branch.state);
      }
    }
  }
  return setup;
}

TrialRecord run_one_trial(const TrialSetup& setup, std::uint64_t trial_index,
                          RandomStream& stream) {
  TrialRecord rec;
  rec.trial_index = trial_index;
  rec.oracle_calls = 1;
  rec.interference_attempts = 0;
  rec.succeeded = false;

  const int bit = stream.uniform01() < setup.p_flag1 ? 1 : 0;
  rec.flag_outcome = bit;

  if (bit == 1) {
    const std::size_t x = setup.solution_sampler->sample(stream);
    if ((*setup.table)[x]) {
      rec.solution_found = x;
      rec.succeeded = true;
    }
    return rec;
  }

  rec.interference_attempts = 1;
  if (setup.mode == InterferenceMode::kIdealRejection) {
    if (setup.ideal_available) {
      const std::size_t z = setup.ideal_sampler->sample(stream);
      if ((*setup.table)[z]) {
        rec.solution_found = z;
        rec.succeeded = true;
      }
    }
  } else {
    const bool ancilla_ok = stream.uniform01() < setup.ancilla_success_probability;
    if (ancilla_ok && setup.diff_sampler.has_value()) {
      const std::size_t z = setup.diff_sampler->sample(stream);
      // The difference state keeps residual non-solution amplitude; a
      // residual draw is recorded as a failed trial, never as a solution.
      if ((*setup.table)[z]) {
        rec.solution_found = z;
        rec.succeeded = true;
      }
    }
  }
  return rec;
}

double expected_classical_checks(std::uint64_t n, int k) {
  const double size = static_cast<double>(std::uint64_t{1} << k);
  if (n == 0) return size;
  return (size + 1.0) / (static_cast<double>(n) + 1.0);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

std::string optional_double(const std::optional<double>& v) {
  return v.has_value() ? format_double(*v) : "null";
}

}  // namespace

const char* mode_name(InterferenceMode mode) {
  return mode == InterferenceMode::kIdealRejection ? "ideal_rejection"
                                                   : "postselected_subtraction";
}

ExperimentReport run_measure_interfere(const Predicate& pred, int k,
                                     InterferenceMode mode, std::uint64_t trials,
                                     std::uint64_t seed, int max_bits) {
  if (trials < 1) {
    throw InvalidTrialCount("trials must be at least 1");
  }
  const std::vector<bool> table = solution_table(pred, k, max_bits);
  const std::uint64_t n =
      static_cast<std::uint64_t>(std::count(table.begin(), table.end(), true));
  const std::uint64_t size = std::uint64_t{1} << k;

  const TrialSetup setup = prepare_trials(pred, k, mode, table, n, max_bits);

  ExperimentReport report;
  report.predicate_text = pred.to_string();
  report.k = k;
  report.n = n;
  report.trials = trials;
  report.seed = seed;
  report.mode = mode;
  report.expected_p_flag1 = static_cast<double>(n) / static_cast<double>(size);
  report.classical_expected_checks = expected_classical_checks(n, k);
  if (n > 0) {
    report.grover_optimal_iterations = optimal_grover_iterations(n, k);
    report.grover_success_probability =
        grover_success_probability(report.grover_optimal_iterations, n, k);
  }
  report.records.reserve(trials);

  std::uint64_t flag1 = 0;
  std::uint64_t successes = 0;
  std::uint64_t flag0_successes = 0;
  std::uint64_t oracle_calls = 0;
  std::uint64_t attempts = 0;
  for (std::uint64_t i = 0; i < trials; ++i) {
    RandomStream stream = RandomStream::for_trial(seed, i);
    TrialRecord rec = run_one_trial(setup, i, stream);
    flag1 += rec.flag_outcome;
    successes += rec.succeeded ? 1 : 0;
    if (rec.flag_outcome == 0 && rec.succeeded) ++flag0_successes;
    oracle_calls += rec.oracle_calls;
    attempts += rec.interference_attempts;
    report.records.push_back(rec);
  }

  report.empirical_p_flag1 = static_cast<double>(flag1) / static_cast<double>(trials);
  if (successes > 0) {
    report.mean_oracle_calls_per_success =
        static_cast<double>(oracle_calls) / static_cast<double>(successes);
  }
  if (flag0_successes > 0) {
    report.mean_interference_attempts_per_success =
        static_cast<double>(attempts) / static_cast<double>(flag0_successes);
  }
  return report;
}

ClassicalBaseline run_classical_baseline(const Predicate& pred, int k,
                                         std::uint64_t runs, std::uint64_t seed,
                                         int max_bits) {
  if (runs < 1) {
    throw InvalidTrialCount("runs must be at least 1");
  }
  const std::vector<bool> table = solution_table(pred, k, max_bits);
  const std::uint64_t size = std::uint64_t{1} << k;

  ClassicalBaseline out;
  out.k = k;
  out.n = static_cast<std::uint64_t>(std::count(table.begin(), table.end(), true));
  out.runs = runs;
  out.seed = seed;
  out.expected_checks = expected_classical_checks(out.n, k);
  out.checks.reserve(runs);
  out.found.reserve(runs);

  // Partial Fisher-Yates: probe a fresh uniform permutation one position at
  // a time, stopping at the first solution. Starting each run from the
  // previous run's permutation is still uniform because every swap target
  // is drawn fresh.
  std::vector<std::uint32_t> order(size);
  std::iota(order.begin(), order.end(), 0u);
  double total = 0.0;
  for (std::uint64_t run = 0; run < runs; ++run) {
    RandomStream stream = RandomStream::for_trial(seed, run);
    std::uint32_t checks = 0;
    std::optional<std::uint64_t> found;
    for (std::uint64_t t = 0; t < size; ++t) {
      // 64-bit draw modulo the remaining range; bias < 2^-47 for k <= 16.
      const std::uint64_t j = t + stream.next_u64() % (size - t);
      std::swap(order[t], order[j]);
      ++checks;
      if (table[order[t]]) {
        found = order[t];
        break;
      }
    }
    total += checks;
    out.checks.push_back(checks);
    out.found.push_back(found);
  }
  out.mean_checks = total / static_cast<double>(runs);
  return out;
}

ExperimentReport run_comparison(const Predicate& pred, int k, std::uint64_t trials,
                                std::uint64_t seed, int max_bits) {
  const std::vector<bool> table = solution_table(pred, k, max_bits);
  const std::uint64_t n =
      static_cast<std::uint64_t>(std::count(table.begin(), table.end(), true));
  if (n == 0) {
    throw NoSolutions("comparison requires at least one solution");
  }

  ExperimentReport report = run_measure_interfere(
      pred, k, InterferenceMode::kIdealRejection, trials, seed, max_bits);

  // Cross-check the closed-form classical expectation by Monte Carlo.
  const ClassicalBaseline baseline =
      run_classical_baseline(pred, k, trials, seed, max_bits);
  double var = 0.0;
  for (std::uint32_t c : baseline.checks) {
    const double d = c - baseline.mean_checks;
    var += d * d;
  }
  var /= static_cast<double>(baseline.runs);
  const double stderr_mean = std::sqrt(var / static_cast<double>(baseline.runs));
  const double deviation = std::abs(baseline.mean_checks - baseline.expected_checks);
  if (deviation > std::max(3.0 * stderr_mean, 1e-9)) {
    throw InternalCheckFailure(
        "classical Monte Carlo mean " + format_double(baseline.mean_checks) +
        " deviates from expectation " + format_double(baseline.expected_checks) +
        " by more than 3 standard errors");
  }

  // Cross-check the Grover closed form against full simulation.
  StateVector grover = uniform_superposition(RegisterLayout(k, false, 0, max_bits));
  for (int j = 0; j < report.grover_optimal_iterations; ++j) {
    grover = grover_step(grover, table);
  }
  const double simulated = solution_mass(grover, table);
  if (std::abs(simulated - report.grover_success_probability) > 1e-9) {
    throw InternalCheckFailure("Grover simulation disagrees with the closed form");
  }

  return report;
}

void emit_report(const ExperimentReport& report, ReportFormat format,
                 std::ostream& out) {
  if (format == ReportFormat::kJson) {
    out << "{\"schema_version\": 1"
        << ", \"predicate\": \"" << json_escape(report.predicate_text) << '"'
        << ", \"k\": " << report.k
        << ", \"n\": " << report.n
        << ", \"trials\": " << report.trials
        << ", \"seed\": " << report.seed
        << ", \"mode\": \"" << mode_name(report.mode) << '"'
        << ", \"empirical_p_flag1\": " << format_double(report.empirical_p_flag1)
        << ", \"expected_p_flag1\": " << format_double(report.expected_p_flag1)
        << ", \"mean_oracle_calls_per_success\": "
        << optional_double(report.mean_oracle_calls_per_success)
        << ", \"mean_interference_attempts_per_success\": "
        << optional_double(report.mean_interference_attempts_per_success)
        << ", \"classical_expected_checks\": "
        << format_double(report.classical_expected_checks)
        << ", \"grover_optimal_iterations\": " << report.grover_optimal_iterations
        << ", \"grover_success_probability\": "
        << format_double(report.grover_success_probability)
        << "}\n";
  } else {
    out << "trial_index,flag_outcome,solution_found,oracle_calls,"
           "interference_attempts,succeeded\n";
    for (const TrialRecord& rec : report.records) {
      out << rec.trial_index << ',' << rec.flag_outcome << ',';
      if (rec.solution_found.has_value()) out << *rec.solution_found;
      out << ',' << rec.oracle_calls << ',' << rec.interference_attempts << ','
          << (rec.succeeded ? "true" : "false") << '\n';
    }
  }
  out.flush();
  if (!out) {
    throw IoError("failed to write report to the output stream");
  }
}

}  // namespace qsub
