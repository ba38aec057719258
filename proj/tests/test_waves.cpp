#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fisher/waves.hpp"

using namespace fisher;

namespace {
const ParamSet kNoncompact{1, 1.0, 0.1, -0.8};
}

TEST_CASE("shooting classifies the canonical speeds") {
  CHECK(shoot_profile(2.0, 1.0).classification == WaveClass::MonotoneFront);
  CHECK(shoot_profile(1.0, 1.0).classification == WaveClass::Oscillatory);
  CHECK(shoot_profile(3.0, 1.0).classification == WaveClass::MonotoneFront);
}

TEST_CASE("monotone fronts increase from ~0 to ~1 inside (0,1)") {
  const auto prof = shoot_profile(2.5, 1.0);
  REQUIRE(prof.classification == WaveClass::MonotoneFront);
  CHECK(prof.v_samples.front() <= 1e-6);
  CHECK(prof.v_samples.back() >= 1.0 - 1e-5);
  for (size_t i = 1; i < prof.v_samples.size(); ++i) {
    CHECK(prof.v_samples[i] >= prof.v_samples[i - 1] - 1e-12);
    CHECK(prof.v_samples[i] > 0.0);
    CHECK(prof.v_samples[i] < 1.0);
  }
}

TEST_CASE("front tail decays at the slow eigenvalue rate") {
  const auto prof = shoot_profile(3.0, 1.0);
  REQUIRE(prof.classification == WaveClass::MonotoneFront);
  const double lam_slow = 0.5 * (3.0 - std::sqrt(9.0 - 4.0));
  CHECK(std::abs(prof.tail_decay_rate - lam_slow) <= 1e-4 * lam_slow);
}

TEST_CASE("minimal speed search") {
  CHECK(std::abs(minimal_speed_search(1.0, 1e-4) - 2.0) <= 1e-3);
  CHECK(std::abs(minimal_speed_search(4.0, 1e-4) - 4.0) <= 2e-3);
}

TEST_CASE("wave-speed bound holds in all three dimensions") {
  for (int n : {1, 2, 3}) {
    const auto rep = verify_speed_bound(n, 1.0);
    CHECK(rep.pass);
    CHECK(rep.eta_min * rep.eta_min >= rep.M_triple);
  }
  const auto rep1 = verify_speed_bound(1, 1.0);
  CHECK(rep1.margin == doctest::Approx(4.0 - (3.0 - std::sqrt(3.0))).epsilon(2e-3));
  CHECK_THROWS_AS(verify_speed_bound(4, 1.0), UnsupportedDimension);
}

TEST_CASE("bound chain: far tail at large time sits within eps3/3 of M''") {
  const auto prof = shoot_profile(2.0, 1.0);
  REQUIRE(prof.classification == WaveClass::MonotoneFront);
  const double z = tail_z_for_value(prof, 1e-4);
  CHECK(profile_value(prof, z) <= 1e-4);
  const auto chain = speed_bound_chain(kNoncompact, prof, 50.0, z);
  CHECK(chain.M_prime > chain.M_double - 1e-3 / 3.0);
  CHECK(chain.M_prime <= chain.M_double + 1e-12);
  CHECK(chain.M_triple == doctest::Approx(3.0 - std::sqrt(3.0)));
}

TEST_CASE("bound chain guards feasibility") {
  const auto prof = shoot_profile(2.0, 1.0);
  CHECK_THROWS_AS(speed_bound_chain({1, 1.0, 0.1, -0.3}, prof, 1.0, 0.0), InfeasibleParams);
}

TEST_CASE("eta^2 dominates M' along the front for feasible noncompact parameters") {
  const auto prof = shoot_profile(2.0, 1.0);
  for (double t : {0.05, 0.3, 1.0, 5.0, 25.0}) {
    for (double frac : {0.05, 0.3, 0.6, 0.9}) {
      const double z = prof.z_samples.front() +
                       frac * (prof.z_samples.back() - prof.z_samples.front());
      const auto chain = speed_bound_chain(kNoncompact, prof, t, z);
      CHECK(prof.eta * prof.eta >= chain.M_prime - 1e-6);
    }
  }
}

TEST_CASE("M'' approaches M''' along the small-alpha schedule") {
  // beta(1-alpha) = -c/2 keeps the radicand fixed; the gap is ~4 c alpha.
  for (double c : {1.0, 2.0}) {
    double prev_gap = 0.0;
    for (double alpha : {1e-2, 1e-3, 1e-4}) {
      const ParamSet p{1, c, alpha, speed_chain_beta(c, alpha)};
      const double gap = std::abs(m_double_prime(p) - wave_speed_bound(1, c));
      if (alpha < 1e-2) CHECK(prev_gap / gap == doctest::Approx(10.0).epsilon(0.05));
      prev_gap = gap;
    }
    const ParamSet p{1, c, 1e-4, speed_chain_beta(c, 1e-4)};
    CHECK(std::abs(m_double_prime(p) - wave_speed_bound(1, c)) < 1e-3 * c);
  }
}

TEST_CASE("M'' converges to M''' along the boundary beta as well, at a slower rate") {
  // With beta at the compact bound the gap is still O(alpha), with a larger
  // constant (~15.8 c alpha for n = 1), so it does not meet 1e-3 c at
  // alpha = 1e-4; the schedule above does.
  double prev_gap = 0.0;
  for (double alpha : {1e-2, 1e-3, 1e-4}) {
    const ParamSet p{1, 1.0, alpha, compact_beta_bound(1, 1.0, alpha)};
    const double gap = std::abs(m_double_prime(p) - wave_speed_bound(1, 1.0));
    if (alpha < 1e-2) CHECK(prev_gap / gap == doctest::Approx(10.0).epsilon(0.1));
    prev_gap = gap;
  }
  CHECK(prev_gap < 2e-3);
  CHECK(prev_gap > 1e-3);  // the boundary-beta gap genuinely misses 1e-3 here
}

TEST_CASE("shoot_profile input validation") {
  CHECK_THROWS_AS(shoot_profile(-1.0, 1.0), RangeViolation);
  CHECK_THROWS_AS(shoot_profile(2.0, 0.0), RangeViolation);
}
