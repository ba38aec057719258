#include "fisher/waves.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace fisher {

std::string wave_class_name(WaveClass c) {
  switch (c) {
    case WaveClass::MonotoneFront: return "monotone-front";
    case WaveClass::Oscillatory: return "oscillatory";
    case WaveClass::Diverged: return "diverged";
  }
  return "?";
}

namespace {

using State = std::array<double, 2>;  // (v, p) with p = dv/dz

// The profile ODE integrated against z (s = -z), so the degenerate node at
// v = 0 is attracting: dv/ds = -p, dp/ds = -eta p + c v (1 - v).
State rhs_backward(double eta, double c, const State& y) {
  return {-y[1], -eta * y[1] + c * y[0] * (1.0 - y[0])};
}

// Dormand-Prince 5(4) pair with standard step control.
struct Dopri5 {
  double eta, c, atol, rtol;

  bool step(State& y, double& s, double& ds) const {
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                            e4 = 125.0 / 192 - 393.0 / 640,
                            e5 = -2187.0 / 6784 + 92097.0 / 339200,
                            e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

    const State k1 = rhs_backward(eta, c, y);
    auto at = [&](double f1, double f2) {
      return State{y[0] + ds * f1, y[1] + ds * f2};
    };
    const State k2 = rhs_backward(eta, c, at(a21 * k1[0], a21 * k1[1]));
    const State k3 =
        rhs_backward(eta, c, at(a31 * k1[0] + a32 * k2[0], a31 * k1[1] + a32 * k2[1]));
    const State k4 = rhs_backward(eta, c,
                                  at(a41 * k1[0] + a42 * k2[0] + a43 * k3[0],
                                     a41 * k1[1] + a42 * k2[1] + a43 * k3[1]));
    const State k5 = rhs_backward(
        eta, c,
        at(a51 * k1[0] + a52 * k2[0] + a53 * k3[0] + a54 * k4[0],
           a51 * k1[1] + a52 * k2[1] + a53 * k3[1] + a54 * k4[1]));
    const State k6 = rhs_backward(
        eta, c,
        at(a61 * k1[0] + a62 * k2[0] + a63 * k3[0] + a64 * k4[0] + a65 * k5[0],
           a61 * k1[1] + a62 * k2[1] + a63 * k3[1] + a64 * k4[1] + a65 * k5[1]));
    State ynew;
    for (int i = 0; i < 2; ++i)
      ynew[i] = y[i] + ds * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    const State k7 = rhs_backward(eta, c, ynew);
    double err = 0.0;
    for (int i = 0; i < 2; ++i) {
      const double e =
          ds * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      err = std::max(err, std::abs(e) / sc);
    }
    if (err <= 1.0) {
      s += ds;
      y = ynew;
      ds *= std::min(5.0, std::max(0.2, 0.9 * std::pow(std::max(err, 1e-16), -0.2)));
      return true;
    }
    ds *= std::max(0.2, 0.9 * std::pow(err, -0.2));
    return false;
  }
};

}  // namespace

WaveProfile shoot_profile(double eta, double c, double z_span, double tol) {
  if (!(eta > 0.0) || !(c > 0.0))
    throw RangeViolation("shoot_profile requires eta > 0 and c > 0");
  WaveProfile prof;
  prof.eta = eta;
  prof.c = c;
  prof.tail_decay_rate = std::numeric_limits<double>::quiet_NaN();

  const double delta = 1e-6;
  const double lam_out = 0.5 * (-eta + std::sqrt(eta * eta + 4.0 * c));
  State y{1.0 - delta, lam_out * delta};
  double s = 0.0;
  double ds = 1e-3;
  const double v_stop = 1e-7;
  const double p_floor = -1e-9;

  Dopri5 stepper{eta, c, tol, tol};
  std::vector<double> ss{0.0}, vv{y[0]};
  double min_v = y[0];
  bool monotone = true;
  bool reached_tail = false;
  long accepted = 0;
  while (s < z_span) {
    if (ds < 1e-14) throw IntegrationFailure("shoot_profile: step size collapsed");
    if (!stepper.step(y, s, ds)) continue;
    if (++accepted > 2000000) throw IntegrationFailure("shoot_profile: step budget exhausted");
    ss.push_back(s);
    vv.push_back(y[0]);
    min_v = std::min(min_v, y[0]);
    if (y[1] < p_floor) monotone = false;
    if (y[0] > 1.5 || y[0] < -0.5 || std::abs(y[1]) > 100.0 * std::max({1.0, c, eta})) break;
    if (min_v < -1e-9) break;
    if (y[0] < v_stop) { reached_tail = true; break; }
  }
  prof.min_v = min_v;

  // Samples were produced against z; emit them in increasing z with v rising
  // from the tail toward 1.
  prof.z_samples.reserve(ss.size());
  prof.v_samples.reserve(ss.size());
  for (size_t i = ss.size(); i-- > 0;) {
    prof.z_samples.push_back(-ss[i]);
    prof.v_samples.push_back(vv[i]);
  }

  const bool oscillatory = min_v < -1e-9 || eta * eta < 4.0 * c;
  if (oscillatory) {
    prof.classification = WaveClass::Oscillatory;
  } else if (reached_tail && monotone && min_v > -1e-9) {
    prof.classification = WaveClass::MonotoneFront;
    // Decay-rate fit on the computed tail: slope of log v between the
    // v = 1e-6 and v = 1e-5 crossings.
    auto z_at = [&](double v_target) {
      for (size_t i = 0; i + 1 < prof.v_samples.size(); ++i)
        if (prof.v_samples[i] <= v_target && prof.v_samples[i + 1] > v_target) {
          const double w = (std::log(v_target) - std::log(prof.v_samples[i])) /
                           (std::log(prof.v_samples[i + 1]) - std::log(prof.v_samples[i]));
          return prof.z_samples[i] + w * (prof.z_samples[i + 1] - prof.z_samples[i]);
        }
      return std::numeric_limits<double>::quiet_NaN();
    };
    const double z1 = z_at(1e-6), z2 = z_at(1e-5);
    if (std::isfinite(z1) && std::isfinite(z2) && z2 != z1)
      prof.tail_decay_rate = (std::log(1e-5) - std::log(1e-6)) / (z2 - z1);
  } else {
    prof.classification = WaveClass::Diverged;
  }
  return prof;
}

double minimal_speed_search(double c, double tol) {
  if (!(c > 0.0)) throw RangeViolation("minimal_speed_search requires c > 0");
  const double rc = std::sqrt(c);
  double lo = 0.5 * rc, hi = 4.0 * rc;
  const auto is_front = [&](double eta) {
    return shoot_profile(eta, c).classification == WaveClass::MonotoneFront;
  };
  if (is_front(lo) || !is_front(hi))
    throw BracketFailure("minimal_speed_search: bracket endpoints do not straddle the front transition");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (is_front(mid)) hi = mid; else lo = mid;
  }
  return 0.5 * (lo + hi);
}

double profile_value(const WaveProfile& prof, double z) {
  const auto& zs = prof.z_samples;
  const auto& vs = prof.v_samples;
  if (zs.empty()) throw RangeViolation("profile_value: empty profile");
  if (z <= zs.front()) return vs.front();
  if (z >= zs.back()) return vs.back();
  const auto it = std::upper_bound(zs.begin(), zs.end(), z);
  const size_t i = size_t(it - zs.begin());
  const double w = (z - zs[i - 1]) / (zs[i] - zs[i - 1]);
  return vs[i - 1] + w * (vs[i] - vs[i - 1]);
}

double tail_z_for_value(const WaveProfile& prof, double v_target) {
  for (size_t i = prof.v_samples.size(); i-- > 0;)
    if (prof.v_samples[i] <= v_target) return prof.z_samples[i];
  throw RangeViolation("tail_z_for_value: no sample at or below the target");
}

double m_double_prime(const ParamSet& p) {
  const DerivedConstants d = noncompact_constants(p);
  return 4.0 * (1.0 - p.alpha) * (p.c - (-d.mu2) / (d.nu2 + d.omega2));
}

double speed_chain_beta(double c, double alpha) { return -c / (2.0 * (1.0 - alpha)); }

BoundChain speed_bound_chain(const ParamSet& p, const WaveProfile& prof, double t, double z) {
  if (!validate_noncompact(p).feasible)
    throw InfeasibleParams("speed_bound_chain requires noncompact-feasible parameters");
  const PhiProfile phi1 = make_noncompact_limit_profile(p);
  const double phi = eval(phi1, t);
  const double v = profile_value(prof, z);
  BoundChain b;
  b.M_prime = 4.0 * (1.0 - p.alpha) * ((p.c - phi) - (p.beta + p.c) * v);
  b.M_double = m_double_prime(p);
  b.M_triple = wave_speed_bound(p.n, p.c);
  return b;
}

SpeedBoundReport verify_speed_bound(int n, double c) {
  if (n < 1 || n > 3) throw UnsupportedDimension("verify_speed_bound: n must be 1, 2 or 3");
  SpeedBoundReport rep;
  rep.n = n;
  rep.eta_min = (n == 1) ? minimal_speed_search(c, 1e-4) : 2.0 * std::sqrt(c);
  rep.M_triple = wave_speed_bound(n, c);
  rep.margin = rep.eta_min * rep.eta_min - rep.M_triple;
  rep.pass = rep.margin >= 0.0;
  return rep;
}

}  // namespace fisher
