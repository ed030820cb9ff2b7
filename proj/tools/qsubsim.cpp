// qsubsim: command-line front end for the measure-and-interfere search
// simulator. Subcommands: run, compare, certify, solve-classical.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qsub/harness.hpp"
#include "qsub/interference.hpp"
#include "qsub/oracle.hpp"
#include "qsub/predicate.hpp"

namespace {

using namespace qsub;

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct Options {
  std::string predicate;
  int bits = 0;
  std::string mode = "ideal";
  std::uint64_t trials = 10000;
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string out_path;
  std::string pair;
};

int max_bits_from_env() {
  const char* env = std::getenv("QSUB_MAX_BITS");
  if (env == nullptr || *env == '\0') return kDefaultMaxBits;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (end == nullptr || *end != '\0' || v < 1 || v > 62) {
    throw CLI::ValidationError("QSUB_MAX_BITS", "must be an integer in [1, 62]");
  }
  return static_cast<int>(v);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Writes to --out when given, stdout otherwise.
void deliver(const std::string& payload, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << payload;
    std::cout.flush();
    if (!std::cout) throw IoError("failed to write to standard output");
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) throw IoError("cannot open output file: " + out_path);
  file << payload;
  file.flush();
  if (!file) throw IoError("failed to write output file: " + out_path);
}

InterferenceMode parse_mode(const std::string& mode) {
  return mode == "postselected" ? InterferenceMode::kPostselectedSubtraction
                                : InterferenceMode::kIdealRejection;
}

int cmd_run(const Options& opt, int max_bits) {
  const Predicate pred = Predicate::parse(opt.predicate);
  const ExperimentReport report = run_measure_interfere(
      pred, opt.bits, parse_mode(opt.mode), opt.trials, opt.seed, max_bits);
  std::ostringstream buf;
  emit_report(report, opt.format == "csv" ? ReportFormat::kCsv : ReportFormat::kJson,
              buf);
  deliver(buf.str(), opt.out_path);
  return kExitOk;
}

int cmd_compare(const Options& opt, int max_bits) {
  const Predicate pred = Predicate::parse(opt.predicate);
  const ExperimentReport report =
      run_comparison(pred, opt.bits, opt.trials, opt.seed, max_bits);
  std::ostringstream buf;
  emit_report(report, opt.format == "csv" ? ReportFormat::kCsv : ReportFormat::kJson,
              buf);
  deliver(buf.str(), opt.out_path);
  return kExitOk;
}

void append_witness_json(std::ostringstream& buf, const WitnessReport& w) {
  auto set_json = [](const SolutionSet& s) {
    std::string out = "[";
    for (std::size_t i = 0; i < s.members.size(); ++i) {
      if (i > 0) out += ", ";
      out += std::to_string(s.members[i]);
    }
    return out + "]";
  };
  buf << "{\"k\": " << w.k << ", \"set_a\": " << set_json(w.set_a)
      << ", \"set_b\": " << set_json(w.set_b)
      << ", \"input_overlap\": " << format_double(w.input_overlap)
      << ", \"output_overlap\": " << format_double(w.output_overlap)
      << ", \"mismatch\": " << format_double(w.mismatch)
      << ", \"verdict\": " << (w.verdict ? "true" : "false") << "}";
}

void append_witness_csv(std::ostringstream& buf, const WitnessReport& w) {
  auto set_csv = [](const SolutionSet& s) {
    std::string out;
    for (std::size_t i = 0; i < s.members.size(); ++i) {
      if (i > 0) out += ';';
      out += std::to_string(s.members[i]);
    }
    return out;
  };
  buf << w.k << ',' << set_csv(w.set_a) << ',' << set_csv(w.set_b) << ','
      << format_double(w.input_overlap) << ',' << format_double(w.output_overlap)
      << ',' << format_double(w.mismatch) << ',' << (w.verdict ? "true" : "false")
      << '\n';
}

int cmd_certify(const Options& opt, int max_bits) {
  if (opt.bits > max_bits) {
    throw LayoutTooLarge("bits " + std::to_string(opt.bits) + " exceeds maximum " +
                         std::to_string(max_bits));
  }
  std::vector<WitnessReport> reports;
  if (!opt.pair.empty()) {
    std::uint64_t a = 0, b = 0;
    char comma = 0;
    std::istringstream in(opt.pair);
    in >> a >> comma >> b;
    if (in.fail() || comma != ',' || (in >> std::ws, !in.eof())) {
      throw CLI::ValidationError("--pair", "expected two integers as A,B");
    }
    const std::uint64_t size = std::uint64_t{1} << opt.bits;
    if (a >= size || b >= size) {
      throw CLI::ValidationError("--pair", "values must lie in [0, 2^bits)");
    }
    reports.push_back(unitarity_witness(opt.bits, SolutionSet{opt.bits, {a}},
                                        SolutionSet{opt.bits, {b}}));
  } else {
    // All unordered pairs of distinct singleton solution sets.
    const std::uint64_t size = std::uint64_t{1} << opt.bits;
    for (std::uint64_t a = 0; a < size; ++a) {
      for (std::uint64_t b = a + 1; b < size; ++b) {
        reports.push_back(unitarity_witness(opt.bits, SolutionSet{opt.bits, {a}},
                                            SolutionSet{opt.bits, {b}}));
      }
    }
  }

  std::ostringstream buf;
  if (opt.format == "csv") {
    buf << "k,set_a,set_b,input_overlap,output_overlap,mismatch,verdict\n";
    for (const WitnessReport& w : reports) append_witness_csv(buf, w);
  } else {
    buf << "[";
    for (std::size_t i = 0; i < reports.size(); ++i) {
      if (i > 0) buf << ",\n ";
      append_witness_json(buf, reports[i]);
    }
    buf << "]\n";
  }
  deliver(buf.str(), opt.out_path);
  return kExitOk;
}

int cmd_solve_classical(const Options& opt, int max_bits) {
  const Predicate pred = Predicate::parse(opt.predicate);
  const ClassicalBaseline baseline =
      run_classical_baseline(pred, opt.bits, opt.trials, opt.seed, max_bits);

  std::ostringstream buf;
  if (opt.format == "csv") {
    buf << "run_index,checks_performed,solution_found\n";
    for (std::uint64_t i = 0; i < baseline.runs; ++i) {
      buf << i << ',' << baseline.checks[i] << ',';
      if (baseline.found[i].has_value()) buf << *baseline.found[i];
      buf << '\n';
    }
  } else {
    buf << "{\"schema_version\": 1"
        << ", \"predicate\": \"" << pred.to_string() << '"'
        << ", \"k\": " << baseline.k << ", \"n\": " << baseline.n
        << ", \"runs\": " << baseline.runs << ", \"seed\": " << baseline.seed
        << ", \"empirical_mean_checks\": " << format_double(baseline.mean_checks)
        << ", \"expected_checks\": " << format_double(baseline.expected_checks)
        << "}\n";
  }
  deliver(buf.str(), opt.out_path);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Measure-and-interfere search simulator"};
  app.require_subcommand(1);

  Options opt;

  auto add_common = [&](CLI::App* sub, bool needs_predicate) {
    if (needs_predicate) {
      sub->add_option("--predicate", opt.predicate, "condition defining solutions")
          ->required();
    }
    sub->add_option("--bits", opt.bits, "register width k")
        ->required()
        ->check(CLI::PositiveNumber);
    sub->add_option("--trials", opt.trials, "Monte Carlo trials")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--seed", opt.seed, "RNG seed")->capture_default_str();
    sub->add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    sub->add_option("--out", opt.out_path, "write output to this file");
  };

  CLI::App* run = app.add_subcommand("run", "run the three-step algorithm");
  add_common(run, true);
  run->add_option("--mode", opt.mode, "interference realization")
      ->check(CLI::IsMember({"ideal", "postselected"}))
      ->capture_default_str();

  CLI::App* compare =
      app.add_subcommand("compare", "measure-interfere algorithm vs classical and Grover baselines");
  add_common(compare, true);

  CLI::App* certify =
      app.add_subcommand("certify", "fixed-unitary impossibility witnesses");
  certify->add_option("--bits", opt.bits, "register width k")
      ->required()
      ->check(CLI::PositiveNumber);
  certify->add_option("--pair", opt.pair, "one explicit singleton pair A,B");
  certify->add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  certify->add_option("--out", opt.out_path, "write output to this file");

  CLI::App* classical =
      app.add_subcommand("solve-classical", "random probing without replacement");
  add_common(classical, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    // CLI11 reserves 0 for --help/--version; anything else is a usage error.
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const int max_bits = max_bits_from_env();
    if (run->parsed()) return cmd_run(opt, max_bits);
    if (compare->parsed()) return cmd_compare(opt, max_bits);
    if (certify->parsed()) return cmd_certify(opt, max_bits);
    return cmd_solve_classical(opt, max_bits);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const SyntaxError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const TypeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}
