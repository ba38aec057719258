#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fisher/classical.hpp"
#include "test_util.hpp"

using namespace fisher;

namespace {

const ParamSet kCaseI{1, 1.0, 0.25, -1.0};
const ParamSet kCaseII{3, 1.0, 0.62, -0.97};
const ParamSet kCaseIII{3, 1.0, 0.62, -3.0 / (8.0 * 0.38)};

// The three integral factors in their printed closed forms; independent route
// against exp(tilde_integral).
double printed_integral_factor(const ParamSet& p, double t1, double t2) {
  const double oma = 1.0 - p.alpha;
  const double expnt =
      8.0 * p.beta * p.beta * oma / (p.c * p.c * p.n + 8.0 * p.beta * p.c * oma);
  switch (classify_ratio_case(p)) {
    case RatioCase::CaseI:
      return std::pow((1.0 - std::exp(-p.c * t2)) / (1.0 - std::exp(-p.c * t1)), expnt);
    case RatioCase::CaseII: {
      const double T2 = switch_time_T2(p, 0.0);
      const double q = 1.0 + 8.0 * p.beta * oma / (p.c * p.n);
      return std::pow((q * std::exp(-p.c * (t2 - T2)) + 1.0) /
                          (q * std::exp(-p.c * (t1 - T2)) + 1.0),
                      expnt);
    }
    case RatioCase::CaseIII: {
      const double T2 = switch_time_T2(p, 0.0);
      return std::exp(-(p.beta / p.c) *
                      (std::exp(-p.c * (t2 - T2)) - std::exp(-p.c * (t1 - T2))));
    }
  }
  return 0.0;
}

}  // namespace

TEST_CASE("case classification follows the discriminant sign") {
  CHECK(classify_ratio_case(kCaseI) == RatioCase::CaseI);
  CHECK(classify_ratio_case(kCaseII) == RatioCase::CaseII);
  CHECK(classify_ratio_case(kCaseIII) == RatioCase::CaseIII);
}

TEST_CASE("ratio bound: canonical case-(i) value and quadrature cross-check") {
  const double rb = ratio_bound(kCaseI, 0.0, 1.0, 2.0);
  CHECK(rb == doctest::Approx(std::exp(-0.37591402502186743)).epsilon(1e-12));
  CHECK(rb == doctest::Approx(0.68666136620052100).epsilon(1e-10));
  const double quad =
      testutil::integrate([&](double t) { return phi_tilde(kCaseI, t); }, 1.0, 2.0);
  CHECK(testutil::rel_err(rb, std::exp(quad)) <= 1e-8);
}

TEST_CASE("ratio bound: degenerate intervals") {
  CHECK(ratio_bound(kCaseI, 0.0, 1.0, 1.0) == 1.0);
  CHECK(ratio_bound(kCaseI, 0.0, 1.0, 1.0 + 1e-12) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK_THROWS_AS(ratio_bound(kCaseI, 0.5, 1.0, 1.0), DegenerateInterval);
  CHECK_THROWS_AS(ratio_bound(kCaseI, 0.0, 0.0, 1.0), NonpositiveTime);
}

TEST_CASE("ratio bound rejects beta outside the classical range") {
  CHECK_THROWS_AS(ratio_bound({1, 1.0, 0.25, -1.5}, 0.0, 1.0, 2.0), InfeasibleParams);
  CHECK_THROWS_AS(ratio_bound({1, 1.0, 0.3, -1.0}, 0.0, 1.0, 2.0), InfeasibleParams);
}

TEST_CASE("distance factor: exact form and monotonicity in d") {
  const double base = ratio_bound(kCaseI, 0.0, 1.0, 2.0);
  for (double d : {0.1, 0.5, 1.0}) {
    const double want = base * std::exp(-d * d / (3.0 * 1.0));  // 4(1-alpha) = 3
    CHECK(ratio_bound(kCaseI, d, 1.0, 2.0) == doctest::Approx(want).epsilon(1e-13));
  }
  double prev = ratio_bound(kCaseI, 0.0, 1.0, 2.0);
  for (double d : {0.2, 0.4, 0.8, 1.6}) {
    const double cur = ratio_bound(kCaseI, d, 1.0, 2.0);
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("integral factor matches the printed closed forms across random parameters") {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int done_i = 0, done_ii = 0, done_iii = 0;
  while (done_i < 60 || done_ii < 60 || done_iii < 60) {
    ParamSet p;
    const int which = int(rng() % 3);
    if (which == 0) {
      p = ParamSet{1, 0.3 + 2.7 * u(rng), 0.02 + 0.22 * u(rng), 0.0};
      const auto range = classical_beta_range(p.n, p.c, p.alpha);
      if (!range) continue;
      p.beta = range->first + (range->second - range->first) * u(rng);
    } else {
      const double alpha = 0.608 + 0.016 * u(rng);
      const double c = 0.3 + 2.7 * u(rng);
      const double iv_floor = -3.0 * c / (8.0 * (1.0 - alpha));
      if (which == 2) {
        p = ParamSet{3, c, alpha, iv_floor};
      } else {
        const auto range = classical_beta_range(3, c, alpha);
        if (!range || range->second <= iv_floor) continue;
        p = ParamSet{3, c, alpha, iv_floor + (range->second - iv_floor) * u(rng)};
      }
    }
    const auto range = classical_beta_range(p.n, p.c, p.alpha);
    if (!range || p.beta < range->first || p.beta > range->second) continue;
    if (!validate_compact(p).feasible) continue;
    const RatioCase tag = classify_ratio_case(p);
    const double T2 = std::max(0.0, switch_time_T2(p, 0.0));
    const double t1 = T2 + 0.1 + 3.0 * u(rng);
    const double t2 = t1 + 4.0 * u(rng) + 1e-3;
    const double via_integral = std::exp(tilde_integral(p, t1, t2));
    const double printed = printed_integral_factor(p, t1, t2);
    CHECK(testutil::rel_err(via_integral, printed) <= 1e-10);
    if (tag == RatioCase::CaseI) ++done_i;
    if (tag == RatioCase::CaseII) ++done_ii;
    if (tag == RatioCase::CaseIII) ++done_iii;
  }
}

TEST_CASE("long time: the integral factor approaches 1") {
  for (const ParamSet& p : {kCaseI, kCaseII}) {
    const double gap = 1.0;
    double prev = std::abs(std::exp(tilde_integral(p, 5.0, 5.0 + gap)) - 1.0);
    for (double t1 : {10.0, 20.0, 40.0}) {
      const double cur = std::abs(std::exp(tilde_integral(p, t1, t1 + gap)) - 1.0);
      CHECK(cur < prev);
      prev = cur;
    }
    CHECK(prev <= 1e-12);
  }
}

TEST_CASE("verify_pairs: constant data, both sides closed form, 100 pairs") {
  const TorusGrid g = make_grid({32}, {1.0});
  std::vector<double> times;
  for (int i = 0; i <= 40; ++i) times.push_back(0.5 + i * 0.1);
  const auto traj =
      simulate(make_initial(g, {InitKind::Constant, 0.5}), kCaseI, times.back(), times);
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<PairSpec> pairs;
  for (int i = 0; i < 100; ++i) {
    const int a = int(rng() % times.size());
    const int b = int(rng() % times.size());
    PairSpec pr;
    pr.t1 = times[size_t(std::min(a, b))];
    pr.t2 = times[size_t(std::max(a, b))];
    pr.x1 = {u(rng)};
    pr.x2 = {u(rng)};
    pairs.push_back(pr);
  }
  const auto checks = verify_pairs(traj, kCaseI, pairs, 0.0);  // zero tolerance
  for (const auto& rc : checks) {
    if (rc.skipped) continue;
    CHECK(rc.pass);
    CHECK(rc.margin >= 0.0);
    // lhs must match the logistic ratio
    const double want = logistic_exact(0.5, 1.0, rc.pair.t2) / logistic_exact(0.5, 1.0, rc.pair.t1);
    CHECK(rc.lhs == doctest::Approx(want).epsilon(1e-7));
  }
}

TEST_CASE("verify_pairs: cases (ii) and (iii) on constant 3-D data") {
  const TorusGrid g = make_grid({8, 8, 8}, {1.0, 1.0, 1.0});
  for (const ParamSet& p : {kCaseII, kCaseIII}) {
    const double T2 = switch_time_T2(p, 0.0);
    std::vector<double> times{T2 + 0.5, T2 + 1.0, T2 + 2.0, T2 + 3.0};
    const auto traj = simulate(make_initial(g, {InitKind::Constant, 0.4}), p, times.back(), times);
    std::vector<PairSpec> pairs;
    for (size_t a = 0; a < times.size(); ++a)
      for (size_t b = a + 1; b < times.size(); ++b) {
        PairSpec pr;
        pr.t1 = times[a];
        pr.t2 = times[b];
        pr.x1 = {0.1, 0.2, 0.3};
        pr.x2 = {0.6, 0.1, 0.9};
        pairs.push_back(pr);
      }
    const auto checks = verify_pairs(traj, p, pairs);
    for (const auto& rc : checks) {
      CHECK_FALSE(rc.skipped);
      CHECK(rc.pass);
    }
  }
}

TEST_CASE("verify_pairs: trivial identical pair passes; tiny gaps are skipped") {
  const TorusGrid g = make_grid({16}, {1.0});
  const auto traj =
      simulate(make_initial(g, {InitKind::Constant, 0.5}), kCaseI, 1.0, {0.5, 1.0});
  PairSpec same;
  same.t1 = same.t2 = 0.5;
  same.x1 = same.x2 = {0.25};
  PairSpec tiny;
  tiny.t1 = 0.5;
  tiny.t2 = 0.5 + traj.dt_used;  // below the 10 dt resolution
  tiny.x1 = tiny.x2 = {0.25};
  const auto checks = verify_pairs(traj, kCaseI, {same, tiny});
  CHECK(checks[0].pass);
  CHECK(checks[0].lhs == 1.0);
  CHECK(checks[0].rhs == 1.0);
  CHECK(checks[1].skipped);
}

TEST_CASE("verify_pairs: guards") {
  const TorusGrid g = make_grid({16}, {1.0});
  const auto traj =
      simulate(make_initial(g, {InitKind::Constant, 0.5}), kCaseI, 1.0, {0.5, 1.0});
  PairSpec pr;
  pr.t1 = 0.5;
  pr.t2 = 0.75;  // not a snapshot
  pr.x1 = pr.x2 = {0.0};
  CHECK_THROWS_AS(verify_pairs(traj, kCaseI, {pr}), MissingSnapshot);

  Trajectory bad = traj;
  bad.fields[0].v[3] = 1.0;  // violates f < 1
  pr.t2 = 1.0;
  CHECK_THROWS_AS(verify_pairs(bad, kCaseI, {pr}), RangeViolation);
}

TEST_CASE("verify_pairs: smooth random 2-D trajectory on a 64^2 grid") {
  const ParamSet p{2, 1.0, 0.25, -1.0};  // case (i): 8 beta (1-a) + cn = -4
  REQUIRE(classify_ratio_case(p) == RatioCase::CaseI);
  const TorusGrid g = make_grid({64, 64}, {3.0, 3.0});
  std::vector<double> times;
  for (int i = 0; i <= 9; ++i) times.push_back(0.5 + 0.5 * i);
  const auto traj = simulate(make_initial(g, {InitKind::SmoothRandom, 0.5, 19, 3, 0.1}), p,
                             times.back(), times);
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<PairSpec> pairs;
  for (int i = 0; i < 25; ++i) {
    size_t a = size_t(rng() % times.size());
    size_t b = size_t(rng() % times.size());
    if (a == b) b = (a + 3) % times.size();
    PairSpec pr;
    pr.t1 = times[std::min(a, b)];
    pr.t2 = times[std::max(a, b)];
    pr.x1 = {3.0 * u(rng), 3.0 * u(rng)};
    pr.x2 = {3.0 * u(rng), 3.0 * u(rng)};
    pairs.push_back(pr);
  }
  for (const auto& rc : verify_pairs(traj, p, pairs, 1e-3)) {
    if (rc.skipped) continue;
    CHECK(rc.pass);
  }
}

TEST_CASE("verify_pairs: smooth random 1-D trajectory, 50 pairs") {
  const TorusGrid g = make_grid({256}, {4.0});
  std::vector<double> times;
  for (int i = 0; i <= 45; ++i) times.push_back(0.5 + i * 0.1);
  const auto traj = simulate(make_initial(g, {InitKind::SmoothRandom, 0.5, 13, 3, 0.1}), kCaseI,
                             times.back(), times);
  std::mt19937_64 rng(83);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<PairSpec> pairs;
  for (int i = 0; i < 50; ++i) {
    int a = int(rng() % times.size());
    int b = int(rng() % times.size());
    if (a == b) b = (a + 7) % int(times.size());
    PairSpec pr;
    pr.t1 = times[size_t(std::min(a, b))];
    pr.t2 = times[size_t(std::max(a, b))];
    pr.x1 = {4.0 * u(rng)};
    pr.x2 = {4.0 * u(rng)};
    pairs.push_back(pr);
  }
  const auto checks = verify_pairs(traj, kCaseI, pairs, 1e-3);
  for (const auto& rc : checks) {
    if (rc.skipped) continue;
    CHECK(rc.pass);
  }
}
