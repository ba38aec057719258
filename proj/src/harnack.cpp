#include "fisher/harnack.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fisher {

ScalarField harnack_quantity(const ScalarField& f, const ParamSet& p, double phi_value) {
  const ScalarField u = log_field(f);  // validates positivity
  const ScalarField lap_u = laplacian(u);
  const ScalarField gsq = grad_norm_sq(u);
  ScalarField h{f.grid, std::vector<double>(f.v.size())};
  const std::int64_t N = f.grid.total();
  const double* lv = lap_u.v.data();
  const double* gv = gsq.v.data();
  const double* fv = f.v.data();
  double* hv = h.v.data();
  const double alpha = p.alpha, beta = p.beta;
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < N; ++i)
    hv[i] = lv[i] + alpha * gv[i] + beta * fv[i] + phi_value;
  return h;
}

double harnack_tolerance(double dx, double dt, double beta, double phi_value, double factor) {
  return factor * (dx * dx + dt) * std::max({1.0, std::abs(beta), phi_value});
}

namespace {

void require_profile_feasible(const ParamSet& p, const PhiProfile& profile) {
  switch (profile.family) {
    case PhiFamily::CompactIII:
    case PhiFamily::CompactLimitIII: {
      const auto v = validate_compact(p);
      if (!v.feasible || v.regime != Regime::CompactCaseIII)
        throw InfeasibleParams("trajectory parameters are not compact-(iii) feasible");
      return;
    }
    case PhiFamily::CompactIV:
    case PhiFamily::CompactLimitIV: {
      const auto v = validate_compact(p);
      if (!v.feasible || v.regime != Regime::CompactCaseIV)
        throw InfeasibleParams("trajectory parameters are not compact-(iv) feasible");
      return;
    }
    case PhiFamily::NoncompactEpsilon:
    case PhiFamily::NoncompactLimit:
      if (!validate_noncompact(p).feasible)
        throw InfeasibleParams("trajectory parameters are not noncompact feasible");
      return;
    case PhiFamily::GeneralEpsilon:
      throw UnsupportedFamily("trajectory checks need a parameter-backed profile");
  }
}

}  // namespace

HarnackReport check_trajectory(const Trajectory& traj, const PhiProfile& profile,
                               double tol_factor, double t_min) {
  require_profile_feasible(traj.params, profile);
  if (t_min < 0.0) t_min = 0.05 / traj.params.c;
  HarnackReport rep;
  rep.dx = traj.grid.max_dx();
  rep.dt = traj.dt_used;
  rep.t_min = t_min;
  rep.tol_factor = tol_factor;
  rep.overall_pass = true;
  for (size_t i = 0; i < traj.times.size(); ++i) {
    const double t = traj.times[i];
    if (t < t_min * (1.0 - 1e-12)) continue;
    const double phi = eval(profile, t);
    const ScalarField h = harnack_quantity(traj.fields[i], traj.params, phi);
    const MinLoc m = min_reduce(h.v);
    HarnackSample s;
    s.t = t;
    s.min_h = m.value;
    s.argmin_flat = m.index;
    s.argmin = traj.grid.unflatten(m.index);
    s.tol = harnack_tolerance(rep.dx, rep.dt, traj.params.beta, phi, tol_factor);
    s.pass = m.value >= -s.tol;
    if (i > 0 && i + 1 < traj.times.size()) {
      s.identity_residual =
          max_abs_reduce(evolution_identity_residual(traj, profile, t).v).value;
      rep.max_identity_residual = std::max(rep.max_identity_residual, s.identity_residual);
    } else {
      s.identity_residual = std::numeric_limits<double>::quiet_NaN();
    }
    rep.overall_pass = rep.overall_pass && s.pass;
    rep.samples.push_back(s);
  }
  return rep;
}

ScalarField evolution_identity_residual(const Trajectory& traj, const PhiProfile& profile,
                                        double t) {
  size_t j = traj.times.size();
  for (size_t i = 0; i < traj.times.size(); ++i)
    if (std::abs(traj.times[i] - t) <= 1e-9 * std::max(1.0, t)) { j = i; break; }
  if (j == traj.times.size() || j == 0 || j + 1 == traj.times.size())
    throw InsufficientSnapshots("evolution identity needs an interior sample with neighbors");

  const ParamSet& p = traj.params;
  const double tm = traj.times[j - 1], tc = traj.times[j], tp = traj.times[j + 1];
  const ScalarField hm = harnack_quantity(traj.fields[j - 1], p, eval(profile, tm));
  const ScalarField hc = harnack_quantity(traj.fields[j], p, eval(profile, tc));
  const ScalarField hp = harnack_quantity(traj.fields[j + 1], p, eval(profile, tp));

  const ScalarField u = log_field(traj.fields[j]);
  const auto grad_u = gradient(u);
  const auto grad_h = gradient(hc);
  const ScalarField lap_h = laplacian(hc);
  const ScalarField lap_u = laplacian(u);
  const ScalarField gsq = grad_norm_sq(u);
  const ScalarField hess = hessian_frobenius_sq(u);
  const double phi_t = derivative(profile, tc);

  ScalarField res{traj.grid, std::vector<double>(hc.v.size())};
  const std::int64_t N = traj.grid.total();
  const double idt = 1.0 / (tp - tm);
  const double* fv = traj.fields[j].v.data();
  const double cc = p.c, alpha = p.alpha, beta = p.beta;
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < N; ++i) {
    double dot = 0.0;
    for (int a = 0; a < traj.grid.n; ++a) dot += grad_u[a].v[size_t(i)] * grad_h[a].v[size_t(i)];
    const double h_t = (hp.v[size_t(i)] - hm.v[size_t(i)]) * idt;
    const double lhs = h_t - lap_h.v[size_t(i)] - 2.0 * dot;
    const double f = fv[i];
    const double rhs = 2.0 * (1.0 - alpha) * hess.v[size_t(i)] - cc * f * lap_u.v[size_t(i)] -
                       gsq.v[size_t(i)] * f * (2.0 * alpha * cc + 2.0 * beta + cc) +
                       beta * cc * f - beta * cc * f * f + phi_t;
    res.v[size_t(i)] = std::abs(lhs - rhs);
  }
  return res;
}

PTerms p_terms(const PointData& pt, const ParamSet& p, double phi, double phi_t,
               const PsiData& psi, double eps_prime) {
  PTerms out;
  const double n = p.n, a = p.alpha, b = p.beta, c = p.c;
  const double oma = 1.0 - a;
  const double g2 = pt.grad_u_sq;
  const double eu = pt.f_val;
  out.h = pt.delta_u + a * g2 + b * eu + phi + psi.psi;
  out.p2_coefficient = p2_gradient_coefficient(p);
  out.P1 = 2.0 * oma / n * out.h - 4.0 * oma / n * (a * g2 + b * eu + phi + psi.psi) - c * eu;
  out.P2 = 2.0 * oma / n * (a * a * g2 * g2 + 2.0 * phi * psi.psi) - 2.0 * p.K * oma * g2 +
           4.0 * a * oma / n * phi * g2 + g2 * eu * out.p2_coefficient;
  const double b4 = 4.0 * b * oma / n + c;
  out.P3 = eu * eu * 2.0 * b * b * oma / n + eu * (4.0 * b * oma / n * phi + c * phi + c * b) +
           2.0 * oma / n * phi * phi + phi_t;
  out.P4 = 4.0 * a * oma / n * psi.psi * g2 - 2.0 * psi.grad_u_dot_grad_psi +
           eu * psi.psi * b4 + 2.0 * oma / n * psi.psi * psi.psi - psi.delta_psi;
  const DerivedConstants d = derived_constants(p, 0.0, eps_prime);
  out.P5 = -(d.mu1 + d.nu1 * phi) * (d.mu1 + d.nu1 * phi) + d.omega1 * phi * d.omega1 * phi +
           phi_t;
  out.P5_1 = b4 * phi + b * c;
  out.P5_2 = 2.0 * oma / n * phi * phi + phi_t;
  out.P6 = d.A * eu * eu + eu * (4.0 * b * oma / n * phi + c * b + c * phi) +
           2.0 * oma / n * phi * phi + phi_t;
  out.P7 = 4.0 * a * oma / n * psi.psi * g2 - 2.0 * psi.grad_u_dot_grad_psi +
           2.0 * eps_prime / n * psi.psi * psi.psi - psi.delta_psi;
  if (d.A > 0.0) {
    const double muA = b * c / (2.0 * std::sqrt(d.A));
    const double nuA = b4 / (2.0 * std::sqrt(d.A));
    out.P8 = -(muA + nuA * phi) * (muA + nuA * phi) + d.omega1 * phi * d.omega1 * phi + phi_t;
  } else {
    out.P8 = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

CutoffReport cutoff_check(int n, double R, double k, const std::vector<double>& radii,
                          double alpha, double eps_prime) {
  if (!(R >= 1.0)) throw RadiusOutOfRange("cutoff_check requires R >= 1");
  CutoffReport rep;
  rep.c1 = n - 1;  // lap rho = (n-1)/rho for rho = |x| in flat R^n
  rep.c2 = 6.0 * rep.c1 + 18.0;
  rep.k = k;
  rep.k_required = std::max(rep.c2 * n / eps_prime,
                            18.0 * n * n / (4.0 * alpha * (1.0 - alpha) * eps_prime));
  rep.k_ok = k > rep.k_required;
  rep.all_pass = true;
  for (double rho : radii) {
    if (!(rho >= 0.0 && rho < R)) throw RadiusOutOfRange("cutoff radius must lie in [0, R)");
    CutoffSample s;
    s.rho = rho;
    const double R2 = R * R, r2 = rho * rho;
    const double den = R2 - r2;
    s.Psi = (R2 + r2) / (den * den);
    if (rho > 0.0) {
      const double dPsi = (6.0 * rho * R2 + 2.0 * rho * r2) / (den * den * den);
      s.grad_sq = dPsi * dPsi;
      s.lap = rep.c1 / rho * (6.0 * rho * R2 + 2.0 * rho * r2) / (den * den * den) +
              (6.0 * R2 * R2 + 36.0 * r2 * R2 + 6.0 * r2 * r2) / (den * den * den * den);
    } else {
      s.grad_sq = 0.0;
      s.lap = 6.0 * n / (R2 * R2);
    }
    s.margin_grad = 18.0 * s.Psi * s.Psi * s.Psi - s.grad_sq;
    s.margin_lap = rep.c2 * s.Psi * s.Psi - s.lap;
    s.pass = s.margin_grad >= 0.0 && s.margin_lap >= 0.0;
    rep.all_pass = rep.all_pass && s.pass;
    rep.samples.push_back(s);
  }
  return rep;
}

}  // namespace fisher
