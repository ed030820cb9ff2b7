#pragma once

#include <optional>

#include "qsub/predicate.hpp"
#include "qsub/rng.hpp"
#include "qsub/statevec.hpp"

namespace qsub {

// The two concrete realizations of the interference step. The ideal form
// uses the overlap <x_tilde|u_all> -- information a physical device does not
// have -- and shows what the step is supposed to produce; the post-selected
// form is physically legal and shows what it costs.
enum class InterferenceMode { kIdealRejection, kPostselectedSubtraction };

struct SubtractionOutcome {
  bool succeeded;
  // ||u_all - x_tilde||^2 / 4; for the exact non-solution input this is
  // (1 - sqrt(1 - n/2^k)) / 2.
  double ancilla_success_probability;
  // Normalized difference state; present iff succeeded.
  std::optional<StateVector> result;
  // Born mass the success branch places on solution indices. The equal-weight
  // difference is NOT supported only on solutions; this quantifies the gap.
  double solution_mass;
};

// Output of the fixed-unitary feasibility check for one pair of solution
// sets. A unitary preserves inner products, so input/output overlap mismatch
// proves no single set-independent unitary implements the step for the pair.
struct WitnessReport {
  int k = 0;
  SolutionSet set_a;
  SolutionSet set_b;
  double input_overlap;   // <u_ns(set_a)|u_ns(set_b)>
  double output_overlap;  // <u_s(set_a)|u_s(set_b)>
  double mismatch;        // |input_overlap - output_overlap|
  bool verdict;           // mismatch > 1e-6: no fixed unitary exists
};

// Ideal (non-physical) interference: rejection(u_all, x_tilde). On the exact
// uniform non-solution state this yields exactly the uniform solution
// superposition. Throws ZeroResidual when x_tilde equals u_all (n = 0).
StateVector ideal_interfere(const StateVector& x_tilde, int k);

// Deterministic core of the subtraction: the ancilla success probability
// and the normalized success-branch state (absent when the branches cancel,
// i.e. x_tilde equals u_all).
struct SubtractionBranch {
  double ancilla_success_probability = 0.0;
  std::optional<StateVector> state;
  double solution_mass = 0.0;
};
SubtractionBranch subtraction_branch(const Predicate& pred, int k,
                                     const StateVector& x_tilde);

// Physical realization: one ancilla prepares (u_all - x_tilde)/2 on its
// |1> branch; post-select on measuring 1. Failure is a valid outcome.
SubtractionOutcome postselected_subtract(const Predicate& pred, int k,
                                         const StateVector& x_tilde,
                                         RandomStream& rng);

// Overlap bookkeeping for one pair of candidate solution sets. Both sets
// must be nonempty proper subsets of [0, 2^k); throws DegenerateSet.
WitnessReport unitarity_witness(int k, const SolutionSet& set_a,
                                const SolutionSet& set_b);

}  // namespace qsub
