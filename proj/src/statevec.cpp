#include "qsub/statevec.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace qsub {
namespace {

constexpr double kZeroResidualTol = 1e-12;
constexpr double kDegenerateBranchTol = 1e-15;

}  // namespace

RegisterLayout::RegisterLayout(int x_width, bool has_flag, int z_width, int max_bits)
    : x_width(x_width), has_flag(has_flag), z_width(z_width) {
  if (x_width < 1) {
    throw std::invalid_argument("x_width must be at least 1");
  }
  if (z_width != 0 && z_width != x_width) {
    throw std::invalid_argument("z_width must be 0 or equal to x_width");
  }
  if (x_width > max_bits) {
    throw LayoutTooLarge("x_width " + std::to_string(x_width) + " exceeds maximum " +
                         std::to_string(max_bits));
  }
}

std::size_t RegisterLayout::index_of(std::uint64_t x, int flag, std::uint64_t z) const {
  const int low = (has_flag ? 1 : 0) + z_width;
  return (static_cast<std::size_t>(x) << low) |
         (static_cast<std::size_t>(flag) << z_width) | z;
}

StateVector::StateVector(RegisterLayout layout, std::vector<Amplitude> amps)
    : layout_(layout), amps_(std::move(amps)) {
  if (amps_.size() != layout_.dimension()) {
    throw std::invalid_argument("amplitude count does not match layout dimension");
  }
}

double StateVector::norm() const {
  double s = 0.0;
  for (const Amplitude& a : amps_) s += std::norm(a);
  return std::sqrt(s);
}

StateVector uniform_superposition(const RegisterLayout& layout) {
  std::vector<Amplitude> amps(layout.dimension());
  const std::uint64_t nx = std::uint64_t{1} << layout.x_width;
  const double amp = 1.0 / std::sqrt(static_cast<double>(nx));
  for (std::uint64_t x = 0; x < nx; ++x) {
    amps[layout.index_of(x)] = amp;
  }
  return StateVector(layout, std::move(amps));
}

StateVector uniform_over(int x_width, std::span<const std::uint64_t> members) {
  RegisterLayout layout(x_width);
  if (members.empty()) {
    throw std::invalid_argument("uniform_over: empty support");
  }
  std::vector<Amplitude> amps(layout.dimension());
  const double amp = 1.0 / std::sqrt(static_cast<double>(members.size()));
  std::unordered_set<std::uint64_t> seen;
  for (std::uint64_t m : members) {
    if (m >= layout.dimension()) {
      throw std::invalid_argument("uniform_over: member out of range");
    }
    if (!seen.insert(m).second) {
      throw std::invalid_argument("uniform_over: duplicate member");
    }
    amps[m] = amp;
  }
  return StateVector(layout, std::move(amps));
}

Amplitude inner_product(const StateVector& a, const StateVector& b) {
  if (a.layout() != b.layout()) {
    throw LayoutMismatch("inner_product requires identical layouts");
  }
  Amplitude sum = 0.0;
  for (std::size_t i = 0; i < a.dimension(); ++i) {
    sum += std::conj(a[i]) * b[i];
  }
  return sum;
}

MeasurementOutcome project_flag(const StateVector& state, int bit) {
  const RegisterLayout& layout = state.layout();
  if (!layout.has_flag) {
    throw NoFlagQubit("state has no flag qubit to measure");
  }
  const std::size_t flag_mask = std::size_t{1} << layout.flag_bit();

  double mass = 0.0;
  for (std::size_t i = 0; i < state.dimension(); ++i) {
    if (((i & flag_mask) != 0) == (bit == 1)) mass += std::norm(state[i]);
  }
  if (mass < kDegenerateBranchTol) {
    throw DegenerateBranch("branch mass below 1e-15 for flag = " + std::to_string(bit));
  }

  RegisterLayout post_layout = layout;
  post_layout.has_flag = false;
  std::vector<Amplitude> post(post_layout.dimension());
  const double scale = 1.0 / std::sqrt(mass);
  const std::uint64_t nx = std::uint64_t{1} << layout.x_width;
  const std::uint64_t nz = std::uint64_t{1} << layout.z_width;
  for (std::uint64_t x = 0; x < nx; ++x) {
    for (std::uint64_t z = 0; z < nz; ++z) {
      post[post_layout.index_of(x, 0, z)] = state[layout.index_of(x, bit, z)] * scale;
    }
  }
  return MeasurementOutcome{bit, mass, StateVector(post_layout, std::move(post))};
}

MeasurementOutcome measure_flag(const StateVector& state, RandomStream& rng) {
  const RegisterLayout& layout = state.layout();
  if (!layout.has_flag) {
    throw NoFlagQubit("state has no flag qubit to measure");
  }
  const std::size_t flag_mask = std::size_t{1} << layout.flag_bit();
  double p1 = 0.0;
  for (std::size_t i = 0; i < state.dimension(); ++i) {
    if (i & flag_mask) p1 += std::norm(state[i]);
  }
  const int bit = rng.uniform01() < p1 ? 1 : 0;
  return project_flag(state, bit);
}

StateVector rejection(const StateVector& a, const StateVector& b) {
  if (a.layout() != b.layout()) {
    throw LayoutMismatch("rejection requires identical layouts");
  }
  const Amplitude coeff = inner_product(b, a);  // <b|a>
  std::vector<Amplitude> residual(a.dimension());
  double norm_sq = 0.0;
  for (std::size_t i = 0; i < a.dimension(); ++i) {
    residual[i] = a[i] - coeff * b[i];
    norm_sq += std::norm(residual[i]);
  }
  const double norm = std::sqrt(norm_sq);
  if (norm < kZeroResidualTol) {
    throw ZeroResidual("states are parallel; nothing survives the rejection");
  }
  for (Amplitude& r : residual) r /= norm;
  return StateVector(a.layout(), std::move(residual));
}

std::size_t sample_index(const StateVector& state, RandomStream& rng) {
  const double u = rng.uniform01();
  double cum = 0.0;
  std::size_t last_nonzero = 0;
  bool any = false;
  for (std::size_t i = 0; i < state.dimension(); ++i) {
    const double p = std::norm(state[i]);
    if (p > 0.0) {
      last_nonzero = i;
      any = true;
    }
    cum += p;
    if (u < cum) return i;
  }
  // Rounding can leave cum fractionally below 1; fall back to the last
  // basis state carrying probability.
  if (!any) throw DegenerateBranch("cannot sample from a zero state");
  return last_nonzero;
}

}  // namespace qsub
