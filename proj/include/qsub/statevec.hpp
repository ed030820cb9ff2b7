#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "qsub/config.hpp"
#include "qsub/errors.hpp"
#include "qsub/rng.hpp"

namespace qsub {

using Amplitude = std::complex<double>;

// Bit-register layout of a state vector. Basis order is fixed everywhere:
// X bits most significant, then the optional flag qubit, then Z bits;
// index 0 is the all-zero basis state.
struct RegisterLayout {
  int x_width = 1;
  bool has_flag = false;
  int z_width = 0;

  RegisterLayout() = default;
  // Throws LayoutTooLarge when x_width exceeds max_bits, and
  // std::invalid_argument for structurally invalid widths
  // (x_width < 1, or z_width not 0 and not equal to x_width).
  RegisterLayout(int x_width, bool has_flag = false, int z_width = 0,
                 int max_bits = kDefaultMaxBits);

  int total_qubits() const { return x_width + (has_flag ? 1 : 0) + z_width; }
  std::size_t dimension() const { return std::size_t{1} << total_qubits(); }
  int flag_bit() const { return z_width; }

  std::size_t index_of(std::uint64_t x, int flag = 0, std::uint64_t z = 0) const;

  friend bool operator==(const RegisterLayout&, const RegisterLayout&) = default;
};

// Dense complex amplitudes over a register's computational basis.
// Immutable after construction; operations return fresh states.
class StateVector {
 public:
  StateVector(RegisterLayout layout, std::vector<Amplitude> amps);

  const RegisterLayout& layout() const { return layout_; }
  std::size_t dimension() const { return amps_.size(); }
  std::span<const Amplitude> amplitudes() const { return amps_; }
  const Amplitude& operator[](std::size_t i) const { return amps_[i]; }

  double norm() const;

 private:
  RegisterLayout layout_;
  std::vector<Amplitude> amps_;
};

struct MeasurementOutcome {
  int observed_bit;
  // Exact Born mass of the observed branch; independent of the rng draw.
  double probability_of_observed;
  // Renormalized conditional state, flag qubit removed from the layout.
  StateVector posterior;
};

// 2^{-k/2} on every X basis state, flag and Z bits pinned to zero.
StateVector uniform_superposition(const RegisterLayout& layout);

// Flagless k-qubit state, equal weight 1/sqrt(|members|) on each member.
// Members must be distinct values in [0, 2^x_width).
StateVector uniform_over(int x_width, std::span<const std::uint64_t> members);

// sum_i conj(a_i) * b_i. Throws LayoutMismatch.
Amplitude inner_product(const StateVector& a, const StateVector& b);

// Deterministic collapse onto flag == bit: branch mass plus the renormalized
// conditional state. Throws NoFlagQubit; DegenerateBranch when the requested
// branch holds mass < 1e-15.
MeasurementOutcome project_flag(const StateVector& state, int bit);

// Born-rule flag measurement: samples the outcome with one uniform draw,
// then collapses. probability_of_observed is the exact branch mass.
MeasurementOutcome measure_flag(const StateVector& state, RandomStream& rng);

// Orthogonal rejection normalize(a - <b|a> b): the component of a
// orthogonal to b. Throws ZeroResidual when the residual norm is < 1e-12
// (a parallel to b). Result lies in span{a, b}.
StateVector rejection(const StateVector& a, const StateVector& b);

// Full-register Born sample: basis index i with probability |amps_i|^2,
// consuming one uniform draw.
std::size_t sample_index(const StateVector& state, RandomStream& rng);

}  // namespace qsub
