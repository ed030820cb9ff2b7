#pragma once

#include <cstdint>
#include <vector>

#include "qsub/predicate.hpp"
#include "qsub/statevec.hpp"

namespace qsub {

// Norms of the two branches of a flagged state: a for flag = 1 (solutions),
// b for flag = 0. a^2 + b^2 = 1 for a normalized input.
struct BranchAmplitudes {
  double a;
  double b;
};

// Truth table f(x) = [x is a solution] for x in [0, 2^k).
std::vector<bool> solution_table(const Predicate& pred, int k,
                                 int max_bits = kDefaultMaxBits);

// The oracle as a basis permutation: |x, flag> -> |x, flag XOR f(x)>.
// Flag = 1 marks solutions. Unitary; applying twice restores the input.
// Throws NoFlagQubit.
StateVector apply_uc(const StateVector& state, const Predicate& pred);
StateVector apply_uc(const StateVector& state, const std::vector<bool>& table);

BranchAmplitudes branch_amplitudes(const StateVector& state);

// Phase form of the oracle on a flagless register: amp_x *= (-1)^f(x).
StateVector phase_oracle(const StateVector& state, const Predicate& pred);
StateVector phase_oracle(const StateVector& state, const std::vector<bool>& table);

// One Grover iteration: phase oracle, then the diffusion reflection
// 2|u><u| - I about the uniform state.
StateVector grover_step(const StateVector& state, const Predicate& pred);
StateVector grover_step(const StateVector& state, const std::vector<bool>& table);

// floor((pi/4) * sqrt(2^k / n)). Throws NoSolutions when n = 0.
int optimal_grover_iterations(std::uint64_t n, int k);

// Closed form sin^2((2j+1) * asin(sqrt(n / 2^k))) for the success
// probability after j iterations from the uniform state.
double grover_success_probability(int iterations, std::uint64_t n, int k);

// Born mass the state places on solution indices (flagless register).
double solution_mass(const StateVector& state, const std::vector<bool>& table);

}  // namespace qsub
