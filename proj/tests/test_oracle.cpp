#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "corpus.hpp"
#include "qsub/oracle.hpp"
#include "qsub/predicate.hpp"
#include "test_util.hpp"

using namespace qsub;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

// Z on the flag qubit: phase -1 on every flag = 1 basis state.
StateVector flag_z(const StateVector& s) {
  const std::size_t mask = std::size_t{1} << s.layout().flag_bit();
  std::vector<Amplitude> amps(s.amplitudes().begin(), s.amplitudes().end());
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (i & mask) amps[i] = -amps[i];
  }
  return StateVector(s.layout(), std::move(amps));
}

// Lift a flagless state to |psi> (x) |0>_flag.
StateVector with_flag(const StateVector& s) {
  const RegisterLayout layout(s.layout().x_width, true);
  std::vector<Amplitude> amps(layout.dimension());
  for (std::uint64_t x = 0; x < s.dimension(); ++x) {
    amps[layout.index_of(x, 0)] = s[x];
  }
  return StateVector(layout, std::move(amps));
}

}  // namespace

TEST_CASE("apply_uc writes the predicate into the flag") {
  const Predicate pred = Predicate::parse("x = 0");
  const RegisterLayout layout(1, true);

  StateVector zero(layout, {1.0, 0.0, 0.0, 0.0});  // |0>|0>
  const StateVector zero_out = apply_uc(zero, pred);
  CHECK(zero_out[layout.index_of(0, 1)] == Amplitude{1.0, 0.0});  // |0>|1>
  CHECK(std::abs(zero_out[layout.index_of(0, 0)]) == 0.0);

  StateVector one(layout, {0.0, 0.0, 1.0, 0.0});  // |1>|0>
  const StateVector one_out = apply_uc(one, pred);
  CHECK(one_out[layout.index_of(1, 0)] == Amplitude{1.0, 0.0});  // unchanged
}

TEST_CASE("apply_uc is an involution on random states, k <= 8") {
  for (const char* text : {"x*x - 4 = 0", "x < 3", "not x = 0"}) {
    const Predicate pred = Predicate::parse(text);
    for (int k : {1, 4, 8}) {
      const StateVector s = make_random_state(RegisterLayout(k, true), 7 * k);
      const StateVector twice = apply_uc(apply_uc(s, pred), pred);
      CHECK(max_amplitude_difference(s, twice) == 0.0);
    }
  }
}

TEST_CASE("uniform input: flag-1 branch mass is n/2^k") {
  const Predicate pred = Predicate::parse("x*x - 4 = 0");  // n = 1 at k = 3
  const StateVector post =
      apply_uc(uniform_superposition(RegisterLayout(3, true)), pred);
  const BranchAmplitudes branches = branch_amplitudes(post);
  CHECK(std::abs(branches.a * branches.a - 1.0 / 8.0) < 1e-12);
}

TEST_CASE("branch amplitudes") {
  const StateVector post2 =
      apply_uc(uniform_superposition(RegisterLayout(2, true)),
               Predicate::parse("x = 1 or x = 3"));
  const BranchAmplitudes even = branch_amplitudes(post2);
  CHECK(std::abs(even.a - kInvSqrt2) < 1e-12);
  CHECK(std::abs(even.b - kInvSqrt2) < 1e-12);

  const StateVector none =
      apply_uc(uniform_superposition(RegisterLayout(3, true)),
               Predicate::parse("x = 9"));
  const BranchAmplitudes empty = branch_amplitudes(none);
  CHECK(empty.a == 0.0);
  CHECK(std::abs(empty.b - 1.0) < 1e-12);

  const StateVector three =
      apply_uc(uniform_superposition(RegisterLayout(8, true)),
               Predicate::parse("x = 3 or x = 5 or x = 250"));
  const BranchAmplitudes b3 = branch_amplitudes(three);
  CHECK(std::abs(b3.a * b3.a - 3.0 / 256.0) < 1e-12);

  CHECK_THROWS_AS(branch_amplitudes(uniform_superposition(RegisterLayout(2))),
                  NoFlagQubit);
}

TEST_CASE("branch masses always sum to one") {
  for (const char* text : predicate_corpus()) {
    const Predicate pred = Predicate::parse(text);
    const StateVector post =
        apply_uc(uniform_superposition(RegisterLayout(6, true)), pred);
    const BranchAmplitudes br = branch_amplitudes(post);
    CHECK(std::abs(br.a * br.a + br.b * br.b - 1.0) < 1e-12);
  }
}

TEST_CASE("phase oracle flips solution signs") {
  const StateVector u = uniform_superposition(RegisterLayout(1));
  const StateVector flipped = phase_oracle(u, Predicate::parse("x = 0"));
  CHECK(std::abs(flipped[0] - Amplitude{-kInvSqrt2, 0.0}) < 1e-15);
  CHECK(std::abs(flipped[1] - Amplitude{kInvSqrt2, 0.0}) < 1e-15);

  const Predicate pred = Predicate::parse("x < 3");
  const StateVector s = make_random_state(RegisterLayout(5), 21);
  CHECK(max_amplitude_difference(phase_oracle(phase_oracle(s, pred), pred), s) == 0.0);
}

TEST_CASE("oracle operations preserve the norm on random states, k <= 10") {
  const Predicate pred = Predicate::parse("x*x > 50");
  for (int k : {2, 6, 10}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const StateVector flat = make_random_state(RegisterLayout(k), seed);
      CHECK(std::abs(phase_oracle(flat, pred).norm() - 1.0) < 1e-12);
      CHECK(std::abs(grover_step(flat, pred).norm() - 1.0) < 1e-12);
      const StateVector flagged = make_random_state(RegisterLayout(k, true), seed);
      CHECK(std::abs(apply_uc(flagged, pred).norm() - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("applying Uc then a flag Z then Uc equals the phase oracle") {
  for (const char* text : {"x*x - 4 = 0", "x = 1 or x = 3", "x < 3"}) {
    const Predicate pred = Predicate::parse(text);
    for (int k : {1, 3, 6}) {
      const StateVector psi = make_random_state(RegisterLayout(k), 13 * k + 1);
      const StateVector via_flag =
          apply_uc(flag_z(apply_uc(with_flag(psi), pred)), pred);
      const StateVector direct = with_flag(phase_oracle(psi, pred));
      CHECK(max_amplitude_difference(via_flag, direct) < 1e-12);
    }
  }
}

TEST_CASE("grover: one step solves k=2 with a single solution") {
  const Predicate pred = Predicate::parse("x*x - 4 = 0");  // {2} at k = 2
  const std::vector<bool> table = solution_table(pred, 2);
  const StateVector after = grover_step(uniform_superposition(RegisterLayout(2)), table);
  CHECK(std::abs(solution_mass(after, table) - 1.0) < 1e-12);
}

TEST_CASE("grover: three steps at k=4 reach the closed-form 0.9613...") {
  const Predicate pred = Predicate::parse("x*x - 4 = 0");  // {2} at k = 4
  const std::vector<bool> table = solution_table(pred, 4);
  StateVector s = uniform_superposition(RegisterLayout(4));
  for (int j = 0; j < 3; ++j) s = grover_step(s, table);
  const double simulated = solution_mass(s, table);
  CHECK(std::abs(simulated - grover_success_probability(3, 1, 4)) < 1e-9);
  CHECK(simulated == doctest::Approx(0.961318969726562).epsilon(1e-9));
}

TEST_CASE("grover: zero steps give the uniform success probability") {
  const Predicate pred = Predicate::parse("x = 1 or x = 3");
  const std::vector<bool> table = solution_table(pred, 5);
  const StateVector u = uniform_superposition(RegisterLayout(5));
  CHECK(std::abs(solution_mass(u, table) - 2.0 / 32.0) < 1e-12);
  CHECK(std::abs(grover_success_probability(0, 2, 5) - 2.0 / 32.0) < 1e-12);
}

TEST_CASE("grover simulation matches the closed form for all j <= 2*optimal") {
  for (const char* text : predicate_corpus()) {
    const Predicate pred = Predicate::parse(text);
    for (int k : {2, 4, 7, 10}) {
      const std::vector<bool> table = solution_table(pred, k);
      const std::uint64_t n =
          static_cast<std::uint64_t>(std::count(table.begin(), table.end(), true));
      if (n == 0) continue;
      const int optimal = optimal_grover_iterations(n, k);
      StateVector s = uniform_superposition(RegisterLayout(k));
      for (int j = 0; j <= 2 * optimal; ++j) {
        const double closed = grover_success_probability(j, n, k);
        CHECK_MESSAGE(std::abs(solution_mass(s, table) - closed) < 1e-9,
                      "predicate: ", text, " k=", k, " j=", j);
        s = grover_step(s, table);
      }
    }
  }
}

TEST_CASE("optimal iteration counts") {
  CHECK(optimal_grover_iterations(1, 4) == 3);
  CHECK(optimal_grover_iterations(1, 2) == 1);
  CHECK(optimal_grover_iterations(16, 4) == 0);
  CHECK(optimal_grover_iterations(256, 8) == 0);
  CHECK_THROWS_AS(optimal_grover_iterations(0, 4), NoSolutions);
}
