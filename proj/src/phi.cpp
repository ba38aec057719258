#include "fisher/phi.hpp"

#include <algorithm>
#include <cmath>

namespace fisher {

std::string phi_family_name(PhiFamily f) {
  switch (f) {
    case PhiFamily::GeneralEpsilon: return "general-eps";
    case PhiFamily::CompactIII: return "compact-iii-eps";
    case PhiFamily::CompactIV: return "compact-iv-eps";
    case PhiFamily::CompactLimitIII: return "compact-iii";
    case PhiFamily::CompactLimitIV: return "compact-iv";
    case PhiFamily::NoncompactEpsilon: return "noncompact-eps";
    case PhiFamily::NoncompactLimit: return "noncompact";
  }
  return "?";
}

namespace {

void require_positive_time(double t) {
  if (!(t > 0.0)) throw NonpositiveTime("phi profiles are defined for t > 0 only");
}

void require_epsilon_hypotheses(double mu, double nu, double omega, double eps) {
  const double w = omega - eps;
  if (mu == 0.0 || omega <= 0.0 || eps < 0.0 || !(nu * nu < w * w))
    throw InfeasibleParams("epsilon family requires mu != 0, omega > 0 and nu^2 < (omega-eps)^2");
}

// phi = -mu/(nu-w) - 2 mu w / ((nu^2-w^2) expm1(2 mu w t)); stable for all t.
double eval_epsilon_family(double mu, double nu, double w, double t) {
  const double d = nu * nu - w * w;
  return -mu / (nu - w) - 2.0 * mu * w / (d * std::expm1(2.0 * mu * w * t));
}

// phi_t = -mu^2 w^2 / ((w^2-nu^2) sinh^2(mu w t)).
double derivative_epsilon_family(double mu, double nu, double w, double t) {
  const double sh = std::sinh(mu * w * t);
  return -mu * mu * w * w / ((w * w - nu * nu) * sh * sh);
}

// t > T2 branch: phi = -mu (1+E) / ((nu+w) E + (nu-w)), E = exp(-2 mu w (t-T2)).
double eval_after_switch(double mu, double nu, double w, double dt) {
  const double E = std::exp(-2.0 * mu * w * dt);
  return -mu * (1.0 + E) / ((nu + w) * E + (nu - w));
}

double derivative_after_switch(double mu, double nu, double w, double dt) {
  const double E = std::exp(-2.0 * mu * w * dt);
  const double den = (nu + w) * E + (nu - w);
  return -4.0 * mu * mu * w * w * E / (den * den);
}

double default_eps_for(PhiFamily family, double nu, double omega) {
  if (family == PhiFamily::CompactIV) return std::min(omega / 10.0, 0.5);
  return std::min(omega / 10.0, 0.5 * (omega - std::abs(nu)));
}

// Coefficient of the case-(iii) limit profile: beta c n / (c n + 8 beta (1-alpha)).
double limit_iii_coeff(const ParamSet& p) {
  return p.beta * p.c * p.n / (p.c * p.n + 8.0 * p.beta * (1.0 - p.alpha));
}

}  // namespace

PhiProfile make_general_profile(double mu, double nu, double omega, double eps) {
  require_epsilon_hypotheses(mu, nu, omega, eps);
  return {PhiFamily::GeneralEpsilon, mu, nu, omega, eps, 0.0, {}};
}

PhiProfile make_compact_profile(const ParamSet& p, std::optional<double> eps) {
  const auto verdict = validate_compact(p);
  if (!verdict.feasible) throw InfeasibleParams("compact profile requires feasible parameters");
  DerivedConstants d = derived_constants(p);
  PhiProfile prof;
  prof.params = p;
  prof.mu = d.mu1;
  prof.nu = d.nu1;
  prof.omega = d.omega1;
  if (verdict.regime == Regime::CompactCaseIII) {
    prof.family = PhiFamily::CompactIII;
    prof.eps = eps.value_or(default_eps_for(prof.family, prof.nu, prof.omega));
    require_epsilon_hypotheses(prof.mu, prof.nu, prof.omega, prof.eps);
  } else {
    prof.family = PhiFamily::CompactIV;
    prof.eps = eps.value_or(default_eps_for(prof.family, prof.nu, prof.omega));
    if (prof.eps <= 0.0 || prof.eps >= 1.0 || prof.eps >= 2.0 * prof.omega)
      throw InfeasibleParams("CompactIV requires 0 < eps < min(1, 2 omega)");
    prof.T2 = switch_time_T2(p, prof.eps);
  }
  return prof;
}

PhiProfile make_compact_limit_profile(const ParamSet& p) {
  const auto verdict = validate_compact(p);
  if (!verdict.feasible) throw InfeasibleParams("compact profile requires feasible parameters");
  DerivedConstants d = derived_constants(p);
  PhiProfile prof;
  prof.params = p;
  prof.mu = d.mu1;
  prof.nu = d.nu1;
  prof.omega = d.omega1;
  prof.eps = 0.0;
  if (verdict.regime == Regime::CompactCaseIII) {
    prof.family = PhiFamily::CompactLimitIII;
  } else {
    prof.family = PhiFamily::CompactLimitIV;
    prof.T2 = switch_time_T2(p, 0.0);
  }
  return prof;
}

PhiProfile make_noncompact_profile(const ParamSet& p, std::optional<double> eps) {
  if (!validate_noncompact(p).feasible)
    throw InfeasibleParams("noncompact profile requires feasible parameters");
  DerivedConstants d = noncompact_constants(p);
  PhiProfile prof;
  prof.family = PhiFamily::NoncompactEpsilon;
  prof.params = p;
  prof.mu = d.mu2;
  prof.nu = d.nu2;
  prof.omega = d.omega2;
  prof.eps = eps.value_or(default_eps_for(prof.family, prof.nu, prof.omega));
  require_epsilon_hypotheses(prof.mu, prof.nu, prof.omega, prof.eps);
  return prof;
}

PhiProfile make_noncompact_limit_profile(const ParamSet& p) {
  PhiProfile prof = make_noncompact_profile(p, 0.0);
  prof.family = PhiFamily::NoncompactLimit;
  return prof;
}

double eval(const PhiProfile& prof, double t) {
  require_positive_time(t);
  const ParamSet& p = prof.params;
  switch (prof.family) {
    case PhiFamily::GeneralEpsilon:
    case PhiFamily::CompactIII:
    case PhiFamily::NoncompactEpsilon:
      return eval_epsilon_family(prof.mu, prof.nu, prof.omega - prof.eps, t);
    case PhiFamily::NoncompactLimit:
      return eval_epsilon_family(prof.mu, prof.nu, prof.omega, t);
    case PhiFamily::CompactIV: {
      if (t <= prof.T2) return p.n / (2.0 * (1.0 - p.alpha) * (1.0 - prof.eps) * t);
      return eval_after_switch(prof.mu, prof.nu, prof.omega - prof.eps, t - prof.T2);
    }
    case PhiFamily::CompactLimitIII: {
      const double P = limit_iii_coeff(p);
      const double em = std::expm1(-p.c * t);
      return (P * em + (P - p.beta)) / (-em);
    }
    case PhiFamily::CompactLimitIV: {
      if (t <= prof.T2) return p.n / (2.0 * (1.0 - p.alpha) * t);
      const double E = std::exp(-p.c * (t - prof.T2));
      const double D = p.c * p.n + 8.0 * p.beta * (1.0 - p.alpha);
      return -p.beta * p.c * p.n * (1.0 + E) / (D * E + p.c * p.n);
    }
  }
  return 0.0;
}

double derivative(const PhiProfile& prof, double t) {
  require_positive_time(t);
  const ParamSet& p = prof.params;
  switch (prof.family) {
    case PhiFamily::GeneralEpsilon:
    case PhiFamily::CompactIII:
    case PhiFamily::NoncompactEpsilon:
      return derivative_epsilon_family(prof.mu, prof.nu, prof.omega - prof.eps, t);
    case PhiFamily::NoncompactLimit:
      return derivative_epsilon_family(prof.mu, prof.nu, prof.omega, t);
    case PhiFamily::CompactIV: {
      // At t = T2 the derivative from the left.
      if (t <= prof.T2) {
        const double s = 2.0 * (1.0 - p.alpha) * (1.0 - prof.eps);
        return -p.n / (s * t * t);
      }
      return derivative_after_switch(prof.mu, prof.nu, prof.omega - prof.eps, t - prof.T2);
    }
    case PhiFamily::CompactLimitIII: {
      const double P = limit_iii_coeff(p);
      const double sh = std::sinh(0.5 * p.c * t);
      return p.c * (p.beta - P) / (4.0 * sh * sh);
    }
    case PhiFamily::CompactLimitIV: {
      if (t <= prof.T2) return -p.n / (2.0 * (1.0 - p.alpha) * t * t);
      const double E = std::exp(-p.c * (t - prof.T2));
      const double D = p.c * p.n + 8.0 * p.beta * (1.0 - p.alpha);
      const double den = D * E + p.c * p.n;
      return -8.0 * p.beta * p.beta * p.c * p.c * p.n * (1.0 - p.alpha) * E / (den * den);
    }
  }
  return 0.0;
}

double long_time_limit(const PhiProfile& prof) {
  switch (prof.family) {
    case PhiFamily::CompactLimitIII:
    case PhiFamily::CompactLimitIV:
      return -prof.params.beta;
    default: {
      const double w = prof.omega - prof.eps;
      return prof.mu > 0.0 ? prof.mu / (w - prof.nu) : -prof.mu / (prof.nu + w);
    }
  }
}

namespace {

bool has_riccati_branch(const PhiProfile& prof, double t) {
  switch (prof.family) {
    case PhiFamily::GeneralEpsilon:
    case PhiFamily::CompactIII:
    case PhiFamily::NoncompactEpsilon:
      return true;
    case PhiFamily::CompactIV:
      return t > prof.T2;
    default:
      return false;
  }
}

}  // namespace

double riccati_residual(const PhiProfile& prof, double t) {
  require_positive_time(t);
  if (!has_riccati_branch(prof, t))
    throw UnsupportedFamily("riccati_residual: identity not defined for this family/branch");
  const double w = prof.omega - prof.eps;
  const double phi = eval(prof, t);
  const double phi_t = derivative(prof, t);
  const double a = prof.mu + prof.nu * phi;
  return -a * a + w * phi * w * phi + phi_t;
}

double riccati_residual_unshifted(const PhiProfile& prof, double t) {
  require_positive_time(t);
  if (!has_riccati_branch(prof, t))
    throw UnsupportedFamily("riccati_residual: identity not defined for this family/branch");
  const double phi = eval(prof, t);
  const double phi_t = derivative(prof, t);
  const double a = prof.mu + prof.nu * phi;
  return -a * a + prof.omega * phi * prof.omega * phi + phi_t;
}

double p52_value(const PhiProfile& prof, double t) {
  require_positive_time(t);
  const ParamSet& p = prof.params;
  const double phi = eval(prof, t);
  return 2.0 * (1.0 - p.alpha) * phi * phi / p.n + derivative(prof, t);
}

double continuity_gap_at_T2(const PhiProfile& prof) {
  const ParamSet& p = prof.params;
  if (prof.family == PhiFamily::CompactIV) {
    const double left = p.n / (2.0 * (1.0 - p.alpha) * (1.0 - prof.eps) * prof.T2);
    const double right = eval_after_switch(prof.mu, prof.nu, prof.omega - prof.eps, 0.0);
    return std::abs(left - right);
  }
  if (prof.family == PhiFamily::CompactLimitIV) {
    const double left = p.n / (2.0 * (1.0 - p.alpha) * prof.T2);
    const double D = p.c * p.n + 8.0 * p.beta * (1.0 - p.alpha);
    const double right = -2.0 * p.beta * p.c * p.n / (D + p.c * p.n);
    return std::abs(left - right);
  }
  throw UnsupportedFamily("continuity_gap_at_T2 requires a CompactIV family");
}

double phi_tilde(const ParamSet& p, double t) {
  return -p.beta - eval(make_compact_limit_profile(p), t);
}

double tilde_integral(const ParamSet& p, double t1, double t2) {
  if (!(t1 > 0.0)) throw NonpositiveTime("tilde_integral requires 0 < t1 <= t2");
  if (!(t1 <= t2)) throw DegenerateInterval("tilde_integral requires t1 <= t2");
  const double oma = 1.0 - p.alpha;
  const double disc = 8.0 * p.beta * oma + p.c * p.n;
  const double zero_tol = 1e-12 * p.c * p.n;
  if (disc < -zero_tol) {
    // phi~ = beta * 8 beta (1-a)/(cn + 8 beta (1-a)) * e^{-ct}/(1 - e^{-ct})
    const double coef = 8.0 * p.beta * p.beta * oma / (p.c * disc);
    return coef * (std::log1p(-std::exp(-p.c * t2)) - std::log1p(-std::exp(-p.c * t1)));
  }
  const double T2 = switch_time_T2(p, 0.0);
  if (t1 <= T2) throw OutOfRegime("tilde_integral: t1 must exceed T2 in this regime");
  if (t1 == t2) return 0.0;
  const double e1 = std::exp(-p.c * (t1 - T2));
  const double e2 = std::exp(-p.c * (t2 - T2));
  if (disc > zero_tol) {
    const double coef = 8.0 * p.beta * p.beta * oma / (p.c * disc);
    return coef * std::log((disc * e2 + p.c * p.n) / (disc * e1 + p.c * p.n));
  }
  return -(p.beta / p.c) * (e2 - e1);
}

double phi1_mu_denominator_variant(const ParamSet& p, double t) {
  require_positive_time(t);
  DerivedConstants d = noncompact_constants(p);
  const double a = 2.0 * d.mu2 * d.omega2;
  const double num = d.mu2 * (std::exp(a * t) / (d.nu2 - d.omega2) - 1.0 / (d.mu2 + d.omega2));
  return num / (1.0 - std::exp(a * t));
}

}  // namespace fisher
