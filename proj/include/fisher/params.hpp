#ifndef FISHER_PARAMS_HPP_
#define FISHER_PARAMS_HPP_

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fisher/errors.hpp"

namespace fisher {

/**
 * Parameter tuple for the Harnack estimates of f_t = lap(f) + c f (1 - f).
 *
 * n      spatial dimension (>= 1)
 * c      reaction rate (> 0)
 * alpha  gradient weight in the Harnack quantity
 * beta   exponential weight in the Harnack quantity
 * K      Ricci lower bound; 0 on the flat domains supported here
 */
struct ParamSet {
  int n = 1;
  double c = 1.0;
  double alpha = 0.25;
  double beta = -1.0;
  double K = 0.0;
};

enum class Regime { CompactCaseIII, CompactCaseIV, Noncompact, Infeasible };

std::string regime_name(Regime r);

/**
 * Outcome of a feasibility query. `margins` maps each condition label to its
 * signed slack (positive = satisfied strictly); `feasible` holds exactly when
 * `violated_conditions` is empty.
 */
struct FeasibilityVerdict {
  bool feasible = false;
  Regime regime = Regime::Infeasible;
  std::vector<std::string> violated_conditions;
  std::map<std::string, double> margins;
};

/// Closed upper bound for beta in the compact estimate: -c n (1+a) / (4a^2 - 4a + 2n).
double compact_beta_bound(int n, double c, double alpha);

/// Strict upper bound for beta in the noncompact estimate: -c n (1+a) / (2 (2a^2 - 2a + n)).
double noncompact_beta_bound(int n, double c, double alpha);

/// Noncompact window for beta: ( -cn(2+sqrt 2)/(4(1-a)), -cn(2-sqrt 2)/(4(1-a)) ).
std::pair<double, double> noncompact_beta_window(int n, double c, double alpha);

/// Discriminant 8 beta (1-alpha)/n + c separating the two compact regimes.
double compact_regime_discriminant(const ParamSet& p);

/// Coefficient of |grad u|^2 e^u in P2: 4 a b (1-a)/n - 2b - a c - c.
/// Nonnegative exactly when the compact beta bound holds (with equality at the bound).
double p2_gradient_coefficient(const ParamSet& p);

/**
 * Compact-case conditions:
 *   (i)   0 < alpha < 1            (strict)
 *   (ii)  beta <= compact bound    (closed)
 * with the regime split by the sign of 8 beta (1-alpha)/n + c:
 *   (iii) < 0  -> CompactCaseIII,  (iv) >= 0 -> CompactCaseIV.
 * Margins are reported for "i", "ii" and "iii"; infeasibility is a verdict,
 * never an exception.
 */
FeasibilityVerdict validate_compact(const ParamSet& p);

/**
 * Noncompact conditions (all strict):
 *   (i)   0 < alpha < 1
 *   (ii)  beta < noncompact bound
 *   (iii) beta inside the noncompact window
 */
FeasibilityVerdict validate_noncompact(const ParamSet& p);

/**
 * Constants derived from a parameter tuple.
 *
 * mu1/nu1/omega1 drive the compact-case time profiles; mu2/nu2/omega2 the
 * noncompact one (only defined when -cn - 8 beta (1-alpha) > 0, see
 * `has_noncompact`). A is the quadratic-form coefficient A(eps') and T2 the
 * profile switch time (only meaningful in regime (iv)).
 */
struct DerivedConstants {
  double mu1 = 0.0, nu1 = 0.0, omega1 = 0.0;
  double mu2 = 0.0, nu2 = 0.0, omega2 = 0.0;
  bool has_noncompact = false;
  double A = 0.0;
  double T2 = 0.0;
  double eps = 0.0, eps_prime = 0.0;
};

/// A(eps') = 2 b^2 (1-a)/n - n (c + 4 b (1-a)/n)^2 / (8 (1-a-eps')).
/// Requires eps' < 1 - alpha.
double quad_form_A(const ParamSet& p, double eps_prime);

/// T2(eps) = n / (2 (1-a)(1-eps)(-b c)) * (4 b (1-a)/n + c).
double switch_time_T2(const ParamSet& p, double eps = 0.0);

/// All closed-form constants. Requires alpha < 1 and beta != 0. The
/// noncompact pair (mu2, nu2) is filled only when its radicand is positive.
DerivedConstants derived_constants(const ParamSet& p, double eps = 0.0, double eps_prime = 0.0);

/// Like derived_constants but throws NegativeRadicand when mu2/nu2 are undefined.
DerivedConstants noncompact_constants(const ParamSet& p, double eps = 0.0, double eps_prime = 0.0);

/**
 * Finds eps' > 0 with A(eps') > 0 and nu^2 < omega^2 for the A-based
 * nu = (4 b (1-a)/n + c) / (2 sqrt A), omega = sqrt(2(1-a)/n).
 * Seeded by the eps' = 0 check, then 64 bisection steps on [0, 1-alpha) to
 * locate the boundary; returns half of it. Throws NoFeasibleEpsPrime when the
 * noncompact conditions fail.
 */
double find_eps_prime(const ParamSet& p);

/// Beta interval [-c, compact bound] admitting the ratio estimates, empty when
/// the bound falls below -c (nonempty whenever alpha <= n/4).
std::optional<std::pair<double, double>> classical_beta_range(int n, double c, double alpha);

/// Minimal-wave-speed lower bound M''' (n) = 2c (n-4+2 sqrt(4n-n^2)) / (n-2+sqrt(4n-n^2)).
/// Only n in {1,2,3} is supported.
double wave_speed_bound(int n, double c);

}  // namespace fisher

#endif  // FISHER_PARAMS_HPP_
