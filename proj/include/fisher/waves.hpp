#ifndef FISHER_WAVES_HPP_
#define FISHER_WAVES_HPP_

#include <string>
#include <vector>

#include "fisher/params.hpp"
#include "fisher/phi.hpp"

namespace fisher {

enum class WaveClass { MonotoneFront, Oscillatory, Diverged };

std::string wave_class_name(WaveClass c);

/// 1-D traveling-wave profile v(z) of f(x,t) = v(x + eta t), satisfying
/// v'' = eta v' - c v (1 - v). MonotoneFront means v increases from ~0 to ~1
/// across the sampled window with v in (0,1).
struct WaveProfile {
  double eta = 0.0;
  double c = 0.0;
  std::vector<double> z_samples;
  std::vector<double> v_samples;
  WaveClass classification = WaveClass::Diverged;
  double min_v = 0.0;
  double tail_decay_rate = 0.0;  // fitted d(log v)/dz in the decaying tail (fronts only)
};

/**
 * Constructs the connecting orbit by shooting: the integration starts a
 * distance 1e-6 along the one eigendirection at v = 1 that leaves the fixed
 * point toward the front (the origin end of the connection is a degenerate
 * node, so the orbit is integrated toward it, where it is attracting).
 * Classification: any sample v < -1e-9 or a complex linearization at v = 0
 * (eta^2 < 4c, whose tail must oscillate) gives Oscillatory; a monotone
 * connection reaching the tail gives MonotoneFront.
 */
WaveProfile shoot_profile(double eta, double c, double z_span = 200.0, double tol = 1e-10);

/// Bisection on eta over [0.5 sqrt(c), 4 sqrt(c)] with the front classifier;
/// throws BracketFailure when the endpoints do not straddle the transition.
double minimal_speed_search(double c, double tol = 1e-4);

/// Profile value at z by linear interpolation (clamped at the window ends).
double profile_value(const WaveProfile& prof, double z);

/// Largest sampled z with v(z) <= v_target (the decaying tail).
double tail_z_for_value(const WaveProfile& prof, double v_target);

struct BoundChain {
  double M_prime;        // 4(1-a)[(c - phi(t)) - (beta+c) v(z)]
  double M_double;       // 4(1-a)(c - (-mu2)/(nu2+omega2))
  double M_triple;       // closed form, n in {1,2,3}
};

/// All three wave-speed bounds; phi is the noncompact limit profile of p
/// evaluated at t and v the profile value at z. Requires noncompact-feasible p.
BoundChain speed_bound_chain(const ParamSet& p, const WaveProfile& prof, double t, double z);

/// M'' alone (no profile needed).
double m_double_prime(const ParamSet& p);

/// Small-alpha schedule beta(alpha) = -c/(2(1-alpha)), i.e. beta (1-alpha) =
/// -c/2 exactly; along it M''(alpha) -> M''' at rate 4 c alpha.
double speed_chain_beta(double c, double alpha);

struct SpeedBoundReport {
  int n = 0;
  double eta_min = 0.0;
  double M_triple = 0.0;
  double margin = 0.0;  // eta_min^2 - M'''
  bool pass = false;
};

/// Checks eta_min^2 >= M'''(n); eta_min is located by search for n = 1 and is
/// 2 sqrt(c) for n in {2,3} (plane-wave profiles reduce to the 1-D ODE).
SpeedBoundReport verify_speed_bound(int n, double c);

}  // namespace fisher

#endif  // FISHER_WAVES_HPP_
