#include "qsub/oracle.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace qsub {
namespace {

void require_flagless(const StateVector& state, const char* who) {
  if (state.layout().has_flag) {
    throw std::invalid_argument(std::string(who) + " expects a flagless register");
  }
}

}  // namespace

std::vector<bool> solution_table(const Predicate& pred, int k, int max_bits) {
  if (k < 1 || k > max_bits) {
    throw LayoutTooLarge("register width " + std::to_string(k) + " outside [1, " +
                         std::to_string(max_bits) + "]");
  }
  const std::uint64_t limit = std::uint64_t{1} << k;
  std::vector<bool> table(limit);
  for (std::uint64_t x = 0; x < limit; ++x) {
    table[x] = pred.evaluate(x);
  }
  return table;
}

StateVector apply_uc(const StateVector& state, const std::vector<bool>& table) {
  const RegisterLayout& layout = state.layout();
  if (!layout.has_flag) {
    throw NoFlagQubit("oracle needs the flag qubit to write into");
  }
  std::vector<Amplitude> amps(state.amplitudes().begin(), state.amplitudes().end());
  const std::uint64_t nx = std::uint64_t{1} << layout.x_width;
  const std::uint64_t nz = std::uint64_t{1} << layout.z_width;
  for (std::uint64_t x = 0; x < nx; ++x) {
    if (!table[x]) continue;
    // f(x) = 1: XOR the flag, i.e. swap the two flag branches of |x>.
    for (std::uint64_t z = 0; z < nz; ++z) {
      std::swap(amps[layout.index_of(x, 0, z)], amps[layout.index_of(x, 1, z)]);
    }
  }
  return StateVector(layout, std::move(amps));
}

StateVector apply_uc(const StateVector& state, const Predicate& pred) {
  return apply_uc(state, solution_table(pred, state.layout().x_width,
                                        state.layout().x_width));
}

BranchAmplitudes branch_amplitudes(const StateVector& state) {
  const RegisterLayout& layout = state.layout();
  if (!layout.has_flag) {
    throw NoFlagQubit("state has no flag qubit");
  }
  const std::size_t flag_mask = std::size_t{1} << layout.flag_bit();
  double p1 = 0.0, p0 = 0.0;
  for (std::size_t i = 0; i < state.dimension(); ++i) {
    (i & flag_mask ? p1 : p0) += std::norm(state[i]);
  }
  return BranchAmplitudes{std::sqrt(p1), std::sqrt(p0)};
}

StateVector phase_oracle(const StateVector& state, const std::vector<bool>& table) {
  require_flagless(state, "phase_oracle");
  const RegisterLayout& layout = state.layout();
  std::vector<Amplitude> amps(state.amplitudes().begin(), state.amplitudes().end());
  const std::uint64_t nx = std::uint64_t{1} << layout.x_width;
  const std::uint64_t nz = std::uint64_t{1} << layout.z_width;
  for (std::uint64_t x = 0; x < nx; ++x) {
    if (!table[x]) continue;
    for (std::uint64_t z = 0; z < nz; ++z) {
      amps[layout.index_of(x, 0, z)] = -amps[layout.index_of(x, 0, z)];
    }
  }
  return StateVector(layout, std::move(amps));
}

StateVector phase_oracle(const StateVector& state, const Predicate& pred) {
  return phase_oracle(state, solution_table(pred, state.layout().x_width,
                                            state.layout().x_width));
}

StateVector grover_step(const StateVector& state, const std::vector<bool>& table) {
  require_flagless(state, "grover_step");
  StateVector phased = phase_oracle(state, table);
  // Diffusion 2|u><u| - I: reflect every amplitude about the mean.
  Amplitude mean = 0.0;
  for (std::size_t i = 0; i < phased.dimension(); ++i) mean += phased[i];
  mean /= static_cast<double>(phased.dimension());
  std::vector<Amplitude> amps(phased.dimension());
  for (std::size_t i = 0; i < phased.dimension(); ++i) {
    amps[i] = 2.0 * mean - phased[i];
  }
  return StateVector(phased.layout(), std::move(amps));
}

StateVector grover_step(const StateVector& state, const Predicate& pred) {
  return grover_step(state, solution_table(pred, state.layout().x_width,
                                           state.layout().x_width));
}

int optimal_grover_iterations(std::uint64_t n, int k) {
  if (n == 0) {
    throw NoSolutions("Grover iteration count undefined for n = 0");
  }
  const double ratio = static_cast<double>(std::uint64_t{1} << k) / static_cast<double>(n);
  return static_cast<int>(std::floor(std::numbers::pi / 4.0 * std::sqrt(ratio)));
}

double grover_success_probability(int iterations, std::uint64_t n, int k) {
  const double theta =
      std::asin(std::sqrt(static_cast<double>(n) /
                          static_cast<double>(std::uint64_t{1} << k)));
  const double s = std::sin((2.0 * iterations + 1.0) * theta);
  return s * s;
}

double solution_mass(const StateVector& state, const std::vector<bool>& table) {
  require_flagless(state, "solution_mass");
  const int z_width = state.layout().z_width;
  double mass = 0.0;
  for (std::size_t i = 0; i < state.dimension(); ++i) {
    if (table[i >> z_width]) mass += std::norm(state[i]);
  }
  return mass;
}

}  // namespace qsub
