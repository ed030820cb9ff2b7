#include "qsub/interference.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qsub/oracle.hpp"

namespace qsub {
namespace {

constexpr double kWitnessTol = 1e-6;

void require_x_only(const StateVector& state, int k, const char* who) {
  const RegisterLayout& layout = state.layout();
  if (layout.has_flag || layout.z_width != 0 || layout.x_width != k) {
    throw std::invalid_argument(std::string(who) + " expects a flagless " +
                                std::to_string(k) + "-qubit state");
  }
}

void require_witness_set(int k, const SolutionSet& set, const char* which) {
  const std::uint64_t size = std::uint64_t{1} << k;
  if (set.k != k) {
    throw DegenerateSet(std::string(which) + " has width " + std::to_string(set.k) +
                        ", expected " + std::to_string(k));
  }
  if (set.members.empty() || set.n() >= size) {
    throw DegenerateSet(std::string(which) + " must be a nonempty proper subset of [0, 2^k)");
  }
  for (std::uint64_t m : set.members) {
    if (m >= size) {
      throw DegenerateSet(std::string(which) + " contains a member outside [0, 2^k)");
    }
  }
}

}  // namespace

StateVector ideal_interfere(const StateVector& x_tilde, int k) {
  require_x_only(x_tilde, k, "ideal_interfere");
  return rejection(uniform_superposition(RegisterLayout(k, false, 0, k)), x_tilde);
}

SubtractionBranch subtraction_branch(const Predicate& pred, int k,
                                     const StateVector& x_tilde) {
  require_x_only(x_tilde, k, "postselected_subtract");
  const StateVector u_all = uniform_superposition(RegisterLayout(k, false, 0, k));

  // Ancilla circuit: H, controlled preparation of u_all vs x_tilde, H.
  // The |1> branch carries (u_all - x_tilde)/2, so the post-selection
  // succeeds with probability ||u_all - x_tilde||^2 / 4.
  std::vector<Amplitude> diff(u_all.dimension());
  double diff_norm_sq = 0.0;
  for (std::size_t i = 0; i < diff.size(); ++i) {
    diff[i] = 0.5 * (u_all[i] - x_tilde[i]);
    diff_norm_sq += std::norm(diff[i]);
  }

  SubtractionBranch branch;
  branch.ancilla_success_probability = diff_norm_sq;
  if (diff_norm_sq > 0.0) {
    const double scale = 1.0 / std::sqrt(diff_norm_sq);
    for (Amplitude& a : diff) a *= scale;
    branch.state.emplace(x_tilde.layout(), std::move(diff));
    branch.solution_mass = solution_mass(*branch.state, solution_table(pred, k, k));
  }
  // diff_norm_sq == 0: x_tilde equals u_all exactly, the branches cancel
  // and the ancilla can never read 1.
  return branch;
}

SubtractionOutcome postselected_subtract(const Predicate& pred, int k,
                                         const StateVector& x_tilde,
                                         RandomStream& rng) {
  SubtractionBranch branch = subtraction_branch(pred, k, x_tilde);

  SubtractionOutcome out;
  out.ancilla_success_probability = branch.ancilla_success_probability;
  out.solution_mass = branch.solution_mass;
  out.succeeded =
      rng.uniform01() < branch.ancilla_success_probability && branch.state.has_value();
  if (out.succeeded) out.result = std::move(branch.state);
  return out;
}

WitnessReport unitarity_witness(int k, const SolutionSet& set_a,
                                const SolutionSet& set_b) {
  require_witness_set(k, set_a, "set_a");
  require_witness_set(k, set_b, "set_b");

  // Overlaps of equal-weight superpositions reduce to set counts:
  //   <u_S|u_T> = |S intersect T| / sqrt(|S| |T|).
  // Computed here by set arithmetic; the state-vector inner products give
  // the independent route the tests compare against.
  std::vector<std::uint64_t> a_sorted(set_a.members), b_sorted(set_b.members);
  std::sort(a_sorted.begin(), a_sorted.end());
  std::sort(b_sorted.begin(), b_sorted.end());
  std::vector<std::uint64_t> common;
  std::set_intersection(a_sorted.begin(), a_sorted.end(), b_sorted.begin(),
                        b_sorted.end(), std::back_inserter(common));
  const double size = static_cast<double>(std::uint64_t{1} << k);
  const double na = static_cast<double>(set_a.n());
  const double nb = static_cast<double>(set_b.n());
  const double ns_common =
      size - na - nb + static_cast<double>(common.size());  // |~A intersect ~B|

  WitnessReport report;
  report.k = k;
  report.set_a = set_a;
  report.set_b = set_b;
  report.input_overlap = ns_common / std::sqrt((size - na) * (size - nb));
  report.output_overlap = static_cast<double>(common.size()) / std::sqrt(na * nb);
  report.mismatch = std::abs(report.input_overlap - report.output_overlap);
  report.verdict = report.mismatch > kWitnessTol;
  return report;
}

}  // namespace qsub
