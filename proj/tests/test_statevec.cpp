#include <doctest.h>

#include <cmath>
#include <vector>

#include "corpus.hpp"
#include "qsub/predicate.hpp"
#include "qsub/statevec.hpp"
#include "test_util.hpp"

using namespace qsub;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

std::vector<std::uint64_t> complement(const SolutionSet& set) {
  std::vector<std::uint64_t> out;
  std::size_t next = 0;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << set.k); ++x) {
    if (next < set.members.size() && set.members[next] == x) {
      ++next;
    } else {
      out.push_back(x);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("layout validation") {
  CHECK_THROWS_AS(RegisterLayout(17), LayoutTooLarge);
  CHECK_NOTHROW(RegisterLayout(17, false, 0, 18));
  CHECK_THROWS_AS(RegisterLayout(0), std::invalid_argument);
  CHECK_THROWS_AS(RegisterLayout(3, true, 2), std::invalid_argument);
  CHECK_NOTHROW(RegisterLayout(3, true, 3));

  const RegisterLayout layout(2, true, 0);
  CHECK(layout.dimension() == 8);
  CHECK(layout.index_of(3, 1) == 7);
  CHECK(layout.index_of(2, 0) == 4);
}

TEST_CASE("uniform superposition pins flag and Z to zero") {
  const StateVector s2 = uniform_superposition(RegisterLayout(2));
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(s2[i] == Amplitude{0.5, 0.0});
  }

  // |x, y> basis order 00, 01, 10, 11 with the flag pinned to 0.
  const StateVector s1f = uniform_superposition(RegisterLayout(1, true));
  CHECK(s1f[0].real() == doctest::Approx(kInvSqrt2).epsilon(1e-15));
  CHECK(s1f[1] == Amplitude{0.0, 0.0});
  CHECK(s1f[2].real() == doctest::Approx(kInvSqrt2).epsilon(1e-15));
  CHECK(s1f[3] == Amplitude{0.0, 0.0});

  const StateVector s16 = uniform_superposition(RegisterLayout(16));
  CHECK(s16.dimension() == 65536);
  CHECK(s16[12345].real() == doctest::Approx(0.00390625).epsilon(1e-15));
  CHECK(std::abs(s16.norm() - 1.0) < 1e-12);
}

TEST_CASE("inner product") {
  const StateVector u = uniform_superposition(RegisterLayout(2));
  CHECK(inner_product(u, u).real() == doctest::Approx(1.0).epsilon(1e-15));

  const std::vector<std::uint64_t> a_set{1, 2, 3}, b_set{0, 2, 3};
  const StateVector a = uniform_over(2, a_set);
  const StateVector b = uniform_over(2, b_set);
  CHECK(std::abs(inner_product(a, b) - Amplitude{2.0 / 3.0, 0.0}) < 1e-12);

  const StateVector zero(RegisterLayout(1), {1.0, 0.0});
  const StateVector one(RegisterLayout(1), {0.0, 1.0});
  CHECK(inner_product(zero, one) == Amplitude{0.0, 0.0});

  CHECK_THROWS_AS(inner_product(u, zero), LayoutMismatch);
}

TEST_CASE("inner product conjugates its left argument") {
  const StateVector a(RegisterLayout(1), {{0.0, 1.0}, {0.0, 0.0}});  // i|0>
  const StateVector b(RegisterLayout(1), {{1.0, 0.0}, {0.0, 0.0}});
  CHECK(inner_product(a, b) == Amplitude{0.0, -1.0});
}

TEST_CASE("measure_flag on a deterministic branch") {
  // All mass on flag = 0: outcome 0 with probability 1, any seed.
  for (std::uint64_t seed : {0ull, 1ull, 77ull}) {
    RandomStream rng(seed);
    const StateVector s = uniform_superposition(RegisterLayout(2, true));
    const MeasurementOutcome out = measure_flag(s, rng);
    CHECK(out.observed_bit == 0);
    CHECK(out.probability_of_observed == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_FALSE(out.posterior.layout().has_flag);
  }
}

TEST_CASE("measure_flag probabilities and posterior for k=2, solutions {1,3}") {
  // Post-oracle analogue built by hand: solutions carry flag 1.
  const RegisterLayout layout(2, true);
  std::vector<Amplitude> amps(8);
  amps[layout.index_of(0, 0)] = 0.5;
  amps[layout.index_of(1, 1)] = 0.5;
  amps[layout.index_of(2, 0)] = 0.5;
  amps[layout.index_of(3, 1)] = 0.5;
  const StateVector state(layout, std::move(amps));

  const MeasurementOutcome flag1 = project_flag(state, 1);
  CHECK(flag1.probability_of_observed == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(flag1.posterior[1] - Amplitude{kInvSqrt2, 0.0}) < 1e-12);
  CHECK(std::abs(flag1.posterior[3] - Amplitude{kInvSqrt2, 0.0}) < 1e-12);
  CHECK(std::abs(flag1.posterior[0]) < 1e-15);
  CHECK(std::abs(flag1.posterior[2]) < 1e-15);

  // Sampling must report the exact branch mass regardless of the draw.
  RandomStream rng(3);
  const MeasurementOutcome sampled = measure_flag(state, rng);
  CHECK(sampled.probability_of_observed == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("flag-1 mass after marking one solution of eight is 1/8") {
  const RegisterLayout layout(3, true);
  std::vector<Amplitude> amps(16);
  const double amp = 1.0 / std::sqrt(8.0);
  for (std::uint64_t x = 0; x < 8; ++x) {
    amps[layout.index_of(x, x == 2 ? 1 : 0)] = amp;
  }
  const StateVector state(layout, std::move(amps));
  CHECK(std::abs(project_flag(state, 1).probability_of_observed - 0.125) < 1e-12);
}

TEST_CASE("flag errors") {
  RandomStream rng(0);
  const StateVector flagless = uniform_superposition(RegisterLayout(2));
  CHECK_THROWS_AS(measure_flag(flagless, rng), NoFlagQubit);
  CHECK_THROWS_AS(project_flag(flagless, 0), NoFlagQubit);

  // Requesting the empty branch directly degenerates.
  const StateVector pinned = uniform_superposition(RegisterLayout(2, true));
  CHECK_THROWS_AS(project_flag(pinned, 1), DegenerateBranch);
}

TEST_CASE("rejection: hand Gram-Schmidt example") {
  const StateVector a = uniform_superposition(RegisterLayout(2));
  const std::vector<std::uint64_t> evens{0, 2};
  const StateVector b = uniform_over(2, evens);
  const StateVector r = rejection(a, b);
  CHECK(std::abs(r[0]) < 1e-12);
  CHECK(std::abs(r[1] - Amplitude{kInvSqrt2, 0.0}) < 1e-12);
  CHECK(std::abs(r[2]) < 1e-12);
  CHECK(std::abs(r[3] - Amplitude{kInvSqrt2, 0.0}) < 1e-12);
  CHECK(std::abs(inner_product(b, r)) < 1e-10);
  CHECK(std::abs(r.norm() - 1.0) < 1e-12);
}

TEST_CASE("rejection: parallel states have no residual") {
  const StateVector a = uniform_superposition(RegisterLayout(2));
  CHECK_THROWS_AS(rejection(a, a), ZeroResidual);
}

TEST_CASE("rejection: k=3 single survivor") {
  const std::vector<std::uint64_t> others{0, 1, 3, 4, 5, 6, 7};
  const StateVector a = uniform_superposition(RegisterLayout(3));
  const StateVector b = uniform_over(3, others);
  const StateVector r = rejection(a, b);
  CHECK(std::abs(r[2] - Amplitude{1.0, 0.0}) < 1e-12);
  for (std::size_t i = 0; i < 8; ++i) {
    if (i != 2) CHECK(std::abs(r[i]) < 1e-12);
  }
}

TEST_CASE("rejection equals the uniform solution state for corpus predicates") {
  for (const char* text : predicate_corpus()) {
    const Predicate pred = Predicate::parse(text);
    for (int k : {2, 3, 5, 8, 10}) {
      const SolutionSet sols = enumerate_solutions(pred, k);
      if (sols.n() == 0 || sols.n() == (std::uint64_t{1} << k)) continue;
      const StateVector u_ns = uniform_over(k, complement(sols));
      const StateVector u_s = uniform_over(k, sols.members);
      const StateVector r = rejection(uniform_superposition(RegisterLayout(k)), u_ns);
      CHECK_MESSAGE(max_amplitude_difference(r, u_s) < 1e-12,
                    "predicate: ", text, " k=", k);
    }
  }
}

TEST_CASE("Born completeness: P(0) + P(1) = 1 for random flagged states") {
  for (int k : {1, 3, 6, 10}) {
    const RegisterLayout layout(k, true);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const StateVector s = make_random_state(layout, seed);
      const double p0 = project_flag(s, 0).probability_of_observed;
      const double p1 = project_flag(s, 1).probability_of_observed;
      CHECK(std::abs(p0 + p1 - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("measurement posterior matches brute-force conditioning, k <= 8") {
  for (int k : {1, 2, 5, 8}) {
    const RegisterLayout layout(k, true);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const StateVector s = make_random_state(layout, 100 + seed);
      for (int bit : {0, 1}) {
        const MeasurementOutcome out = project_flag(s, bit);
        // Brute force: restrict to the branch, divide by sqrt(mass).
        double mass = 0.0;
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << k); ++x) {
          mass += std::norm(s[layout.index_of(x, bit)]);
        }
        CHECK(std::abs(out.probability_of_observed - mass) < 1e-12);
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << k); ++x) {
          const Amplitude expect = s[layout.index_of(x, bit)] / std::sqrt(mass);
          CHECK(std::abs(out.posterior[x] - expect) < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("measurement determinism: identical state and seed, identical outcome") {
  const RegisterLayout layout(4, true);
  const StateVector s = make_random_state(layout, 9);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    RandomStream r1(seed), r2(seed);
    const MeasurementOutcome a = measure_flag(s, r1);
    const MeasurementOutcome b = measure_flag(s, r2);
    CHECK(a.observed_bit == b.observed_bit);
    CHECK(a.probability_of_observed == b.probability_of_observed);
    CHECK(max_amplitude_difference(a.posterior, b.posterior) == 0.0);
  }
}

TEST_CASE("sample_index follows the Born distribution and is deterministic") {
  const std::vector<std::uint64_t> support{1, 3};
  const StateVector s = uniform_over(2, support);
  RandomStream rng(11);
  int ones = 0, threes = 0;
  for (int i = 0; i < 2000; ++i) {
    const std::size_t idx = sample_index(s, rng);
    CHECK((idx == 1 || idx == 3));
    (idx == 1 ? ones : threes)++;
  }
  // 3 sigma around 1000 for p = 1/2.
  CHECK(std::abs(ones - 1000) < 3 * std::sqrt(2000 * 0.25) + 1);
  CHECK(ones + threes == 2000);
}

TEST_CASE("uniform_over input validation") {
  const std::vector<std::uint64_t> empty;
  CHECK_THROWS_AS(uniform_over(2, empty), std::invalid_argument);
  const std::vector<std::uint64_t> out_of_range{4};
  CHECK_THROWS_AS(uniform_over(2, out_of_range), std::invalid_argument);
  const std::vector<std::uint64_t> dup{1, 1};
  CHECK_THROWS_AS(uniform_over(2, dup), std::invalid_argument);
}
