#include "fisher/params.hpp"

#include <algorithm>
#include <cmath>

namespace fisher {

std::string regime_name(Regime r) {
  switch (r) {
    case Regime::CompactCaseIII: return "compact-iii";
    case Regime::CompactCaseIV: return "compact-iv";
    case Regime::Noncompact: return "noncompact";
    case Regime::Infeasible: return "infeasible";
  }
  return "?";
}

double compact_beta_bound(int n, double c, double alpha) {
  return -c * n * (1.0 + alpha) / (4.0 * alpha * alpha - 4.0 * alpha + 2.0 * n);
}

double noncompact_beta_bound(int n, double c, double alpha) {
  return -c * n * (1.0 + alpha) / (2.0 * (2.0 * alpha * alpha - 2.0 * alpha + n));
}

std::pair<double, double> noncompact_beta_window(int n, double c, double alpha) {
  const double s = c * n / (4.0 * (1.0 - alpha));
  return {-(2.0 + std::sqrt(2.0)) * s, -(2.0 - std::sqrt(2.0)) * s};
}

double compact_regime_discriminant(const ParamSet& p) {
  return 8.0 * p.beta * (1.0 - p.alpha) / p.n + p.c;
}

double p2_gradient_coefficient(const ParamSet& p) {
  return 4.0 * p.alpha * p.beta * (1.0 - p.alpha) / p.n - 2.0 * p.beta - p.alpha * p.c - p.c;
}

namespace {

double alpha_margin(double alpha) { return std::min(alpha, 1.0 - alpha); }

}  // namespace

FeasibilityVerdict validate_compact(const ParamSet& p) {
  FeasibilityVerdict v;
  const double m_i = alpha_margin(p.alpha);
  const double m_ii = compact_beta_bound(p.n, p.c, p.alpha) - p.beta;
  const double m_iii = -compact_regime_discriminant(p);
  v.margins["i"] = m_i;
  v.margins["ii"] = m_ii;
  v.margins["iii"] = m_iii;
  if (m_i <= 0.0) v.violated_conditions.push_back("i");
  // (ii) is a closed inequality; equality is feasible.
  if (m_ii < 0.0) v.violated_conditions.push_back("ii");
  v.feasible = v.violated_conditions.empty();
  v.regime = !v.feasible ? Regime::Infeasible
             : m_iii > 0.0 ? Regime::CompactCaseIII
                           : Regime::CompactCaseIV;
  return v;
}

FeasibilityVerdict validate_noncompact(const ParamSet& p) {
  FeasibilityVerdict v;
  const double m_i = alpha_margin(p.alpha);
  v.margins["i"] = m_i;
  if (m_i <= 0.0) {
    v.violated_conditions.push_back("i");
    v.feasible = false;
    v.regime = Regime::Infeasible;
    return v;
  }
  const double m_ii = noncompact_beta_bound(p.n, p.c, p.alpha) - p.beta;
  const auto [lo, hi] = noncompact_beta_window(p.n, p.c, p.alpha);
  const double m_iii = std::min(p.beta - lo, hi - p.beta);
  v.margins["ii"] = m_ii;
  v.margins["iii"] = m_iii;
  if (m_ii <= 0.0) v.violated_conditions.push_back("ii");  // strict
  if (m_iii <= 0.0) v.violated_conditions.push_back("iii");
  v.feasible = v.violated_conditions.empty();
  v.regime = v.feasible ? Regime::Noncompact : Regime::Infeasible;
  return v;
}

double quad_form_A(const ParamSet& p, double eps_prime) {
  const double oma = 1.0 - p.alpha - eps_prime;
  if (oma <= 0.0) throw NegativeRadicand("quad_form_A: eps' must be < 1 - alpha");
  const double b4 = p.c + 4.0 * p.beta * (1.0 - p.alpha) / p.n;
  return 2.0 * p.beta * p.beta * (1.0 - p.alpha) / p.n - p.n * b4 * b4 / (8.0 * oma);
}

double switch_time_T2(const ParamSet& p, double eps) {
  const double b4 = 4.0 * p.beta * (1.0 - p.alpha) / p.n + p.c;
  return p.n / (2.0 * (1.0 - p.alpha) * (1.0 - eps) * (-p.beta * p.c)) * b4;
}

DerivedConstants derived_constants(const ParamSet& p, double eps, double eps_prime) {
  DerivedConstants d;
  d.eps = eps;
  d.eps_prime = eps_prime;
  const double one_m_a = 1.0 - p.alpha;
  const double s = std::sqrt(p.n / (2.0 * one_m_a));
  const double b4 = p.c + 4.0 * p.beta * one_m_a / p.n;
  d.mu1 = 0.5 * p.c * s;
  d.nu1 = b4 / (2.0 * p.beta) * s;
  d.omega1 = std::sqrt(2.0 * one_m_a / p.n);
  d.omega2 = d.omega1;
  const double rad = -p.c * p.n - 8.0 * p.beta * one_m_a;
  if (rad > 0.0) {
    const double r = std::sqrt(2.0 * one_m_a / (p.c * rad));
    d.mu2 = p.beta * p.c * r;
    d.nu2 = b4 * r;
    d.has_noncompact = true;
  }
  d.A = quad_form_A(p, eps_prime);
  d.T2 = switch_time_T2(p, eps);
  return d;
}

DerivedConstants noncompact_constants(const ParamSet& p, double eps, double eps_prime) {
  DerivedConstants d = derived_constants(p, eps, eps_prime);
  if (!d.has_noncompact)
    throw NegativeRadicand("noncompact constants undefined: -cn - 8 beta (1-alpha) <= 0");
  if (d.A <= 0.0) throw NegativeRadicand("noncompact constants undefined: A(eps') <= 0");
  return d;
}

namespace {

// A(eps') > 0 and nu^2 < omega^2 for the A-based nu, without forming sqrt(A):
// n * b4^2 < 8 A (1-alpha).
bool eps_prime_conditions(const ParamSet& p, double eps_prime) {
  const double A = quad_form_A(p, eps_prime);
  if (A <= 0.0) return false;
  const double b4 = p.c + 4.0 * p.beta * (1.0 - p.alpha) / p.n;
  return p.n * b4 * b4 < 8.0 * A * (1.0 - p.alpha);
}

}  // namespace

double find_eps_prime(const ParamSet& p) {
  if (!validate_noncompact(p).feasible)
    throw NoFeasibleEpsPrime("find_eps_prime requires noncompact-feasible parameters");
  if (!eps_prime_conditions(p, 0.0))
    throw NoFeasibleEpsPrime("strict inequalities fail already at eps' = 0");
  // The conditions hold on an interval [0, e*) inside [0, 1-alpha); bisect for
  // the boundary and return a point safely inside.
  double lo = 0.0, hi = 1.0 - p.alpha;
  for (int i = 0; i < 64; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid >= 1.0 - p.alpha) { hi = mid; continue; }
    if (eps_prime_conditions(p, mid)) lo = mid; else hi = mid;
  }
  double eps_prime = 0.5 * lo;
  if (eps_prime <= 0.0 || !eps_prime_conditions(p, eps_prime)) {
    // Boundary numerically at 0; fall back to a downward scan.
    for (int k = 1; k <= 80; ++k) {
      eps_prime = (1.0 - p.alpha) * std::ldexp(1.0, -k);
      if (eps_prime_conditions(p, eps_prime)) return eps_prime;
    }
    throw NoFeasibleEpsPrime("no eps' > 0 satisfies the strict inequalities");
  }
  return eps_prime;
}

std::optional<std::pair<double, double>> classical_beta_range(int n, double c, double alpha) {
  const double hi = compact_beta_bound(n, c, alpha);
  if (hi < -c) return std::nullopt;
  return std::make_pair(-c, hi);
}

double wave_speed_bound(int n, double c) {
  if (n < 1 || n > 3) throw UnsupportedDimension("wave_speed_bound: n must be 1, 2 or 3");
  const double q = std::sqrt(4.0 * n - double(n) * n);
  return 2.0 * c * (n - 4.0 + 2.0 * q) / (n - 2.0 + q);
}

}  // namespace fisher
