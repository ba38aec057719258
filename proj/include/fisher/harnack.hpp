#ifndef FISHER_HARNACK_HPP_
#define FISHER_HARNACK_HPP_

#include <array>
#include <cstdint>
#include <vector>

#include "fisher/grid.hpp"
#include "fisher/phi.hpp"
#include "fisher/solver.hpp"

namespace fisher {

/// h = lap u + alpha |grad u|^2 + beta e^u + phi with u = log f (e^u = f
/// exactly, derivatives discrete). Throws NonpositiveField.
ScalarField harnack_quantity(const ScalarField& f, const ParamSet& p, double phi_value);

/// Default tolerance: factor * (dx^2 + dt) * max(1, |beta|, phi).
double harnack_tolerance(double dx, double dt, double beta, double phi_value,
                         double factor = 10.0);

struct HarnackSample {
  double t;
  double min_h;
  std::array<int, 3> argmin;
  std::int64_t argmin_flat;
  double tol;
  bool pass;
  // max pointwise evolution-identity residual, time-differenced at the
  // sample spacing; NaN for samples without both neighbors.
  double identity_residual;
};

struct HarnackReport {
  std::vector<HarnackSample> samples;
  double dx = 0.0;
  double dt = 0.0;
  double t_min = 0.0;
  double tol_factor = 0.0;
  double max_identity_residual = 0.0;
  bool overall_pass = false;
};

/**
 * Per-sample minima of h along a trajectory, with pass iff
 * min h >= -tolerance. Samples earlier than t_min (default 0.05/c, where the
 * profile blow-up makes the check vacuous) are skipped. psi = 0 throughout.
 * Throws InfeasibleParams when the trajectory parameters do not satisfy the
 * profile's regime conditions.
 */
HarnackReport check_trajectory(const Trajectory& traj, const PhiProfile& profile,
                               double tol_factor = 10.0, double t_min = -1.0);

/**
 * Pointwise |LHS - RHS| of the evolution identity
 *   (d/dt - lap) h - 2 grad u . grad h =
 *     2(1-a)|hess u|^2 - c e^u lap u - |grad u|^2 e^u (2ac + 2b + c)
 *     + b c e^u - b c e^{2u} + phi_t
 * (flat torus: Ricci = 0, psi = 0), with a centered time difference of h.
 * t must be an interior sample; throws InsufficientSnapshots otherwise.
 */
ScalarField evolution_identity_residual(const Trajectory& traj, const PhiProfile& profile,
                                        double t);

struct PointData {
  double grad_u_sq = 0.0;
  double delta_u = 0.0;
  double f_val = 1.0;
};

struct PsiData {
  double psi = 0.0;
  double grad_u_dot_grad_psi = 0.0;
  double delta_psi = 0.0;
};

/// The P-quantities evaluated at a point. P8 is NaN when A(eps') <= 0.
struct PTerms {
  double h = 0.0;
  double P1 = 0.0, P2 = 0.0, P3 = 0.0, P4 = 0.0;
  double P5 = 0.0, P5_1 = 0.0, P5_2 = 0.0;
  double P6 = 0.0, P7 = 0.0, P8 = 0.0;
  double p2_coefficient = 0.0;
};

PTerms p_terms(const PointData& pt, const ParamSet& p, double phi, double phi_t,
               const PsiData& psi = {}, double eps_prime = 0.0);

struct CutoffSample {
  double rho;
  double Psi;
  double grad_sq;   // |grad Psi|^2
  double lap;       // lap Psi
  double margin_grad;  // 18 Psi^3 - |grad Psi|^2
  double margin_lap;   // (6 c1 + 18) Psi^2 - lap Psi
  bool pass;
};

struct CutoffReport {
  std::vector<CutoffSample> samples;
  bool all_pass = false;
  double c1 = 0.0;      // n - 1 for rho = |x| in flat R^n
  double c2 = 0.0;      // 6 c1 + 18
  double k = 0.0;
  double k_required = 0.0;  // max(c2 n / eps', 18 n^2 / (4 a (1-a) eps'))
  bool k_ok = false;
};

/**
 * Evaluates Psi(rho) = (R^2 + rho^2)/(R^2 - rho^2)^2 and its derivatives
 * analytically for rho(x) = |x| in flat R^n and verifies
 * |grad Psi|^2 <= 18 Psi^3 and lap Psi <= (6 c1 + 18) Psi^2 at the given
 * radii. Requires R >= 1 and radii in [0, R).
 */
CutoffReport cutoff_check(int n, double R, double k, const std::vector<double>& radii,
                          double alpha, double eps_prime);

}  // namespace fisher

#endif  // FISHER_HARNACK_HPP_
