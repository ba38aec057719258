#ifndef FISHER_PHI_HPP_
#define FISHER_PHI_HPP_

#include <optional>
#include <string>

#include "fisher/params.hpp"

namespace fisher {

/**
 * Time-profile families. The epsilon families solve
 *   -(mu + nu*phi)^2 + ((omega-eps)*phi)^2 + phi_t = 0
 * exactly; the limit families are their eps -> 0 closed forms. CompactIV is
 * the piecewise profile n/(2(1-a)(1-eps)t) for t <= T2 glued to an epsilon
 * family restarted at T2.
 */
enum class PhiFamily {
  GeneralEpsilon,
  CompactIII,
  CompactIV,
  CompactLimitIII,
  CompactLimitIV,
  NoncompactEpsilon,
  NoncompactLimit,
};

std::string phi_family_name(PhiFamily f);

struct PhiProfile {
  PhiFamily family = PhiFamily::GeneralEpsilon;
  double mu = 0.0, nu = 0.0, omega = 0.0, eps = 0.0;
  double T2 = 0.0;          // switch time; meaningful for the CompactIV families
  ParamSet params{};        // backing parameters (unused for GeneralEpsilon)
};

/// Free-standing epsilon family from raw constants. Requires mu != 0,
/// omega > 0 and nu^2 < (omega-eps)^2.
PhiProfile make_general_profile(double mu, double nu, double omega, double eps);

/// Compact families for a feasible compact parameter set; the regime picks
/// CompactIII or CompactIV. eps defaults to min(omega/10, (omega-|nu|)/2)
/// (CompactIII) or min(omega/10, 1/2) (CompactIV).
PhiProfile make_compact_profile(const ParamSet& p, std::optional<double> eps = std::nullopt);

/// eps -> 0 limits of the compact families (the final estimate's profiles).
PhiProfile make_compact_limit_profile(const ParamSet& p);

/// Epsilon family with the noncompact constants (mu2, nu2, omega2).
PhiProfile make_noncompact_profile(const ParamSet& p, std::optional<double> eps = std::nullopt);

/// phi_1: the eps -> 0 noncompact profile.
PhiProfile make_noncompact_limit_profile(const ParamSet& p);

/// Closed-form value. Throws NonpositiveTime for t <= 0.
double eval(const PhiProfile& profile, double t);

/// Closed-form time derivative; at t = T2 the left-branch derivative.
double derivative(const PhiProfile& profile, double t);

/// lim_{t->inf} phi(t).
double long_time_limit(const PhiProfile& profile);

/// -(mu + nu*phi)^2 + ((omega-eps)*phi)^2 + phi_t. Defined for the epsilon
/// families and the t > T2 branch of CompactIV; UnsupportedFamily otherwise.
double riccati_residual(const PhiProfile& profile, double t);

/// Same residual against the un-shifted omega; equals (2 eps omega - eps^2) phi^2.
double riccati_residual_unshifted(const PhiProfile& profile, double t);

/// 2(1-a) phi^2 / n + phi_t, the positivity certificate of the t <= T2 branch.
double p52_value(const PhiProfile& profile, double t);

/// |left limit - right limit| of the piecewise profile at T2.
double continuity_gap_at_T2(const PhiProfile& profile);

/// phi~ = -beta - phi0(t) for the limit profile of p's compact regime.
double phi_tilde(const ParamSet& p, double t);

/// Definite integral of phi~ over [t1, t2] by the case-appropriate closed
/// form (case picked by the sign of 8 beta (1-alpha) + c n). Cases with the
/// switch time require t1 > T2.
double tilde_integral(const ParamSet& p, double t1, double t2);

/// Diagnostic variant of phi_1 with 1/(mu+omega) in place of 1/(nu+omega);
/// it does not satisfy the defining identity and is kept only so reports can
/// show the residual it produces.
double phi1_mu_denominator_variant(const ParamSet& p, double t);

}  // namespace fisher

#endif  // FISHER_PHI_HPP_
