#include "fisher/classical.hpp"

#include <algorithm>
#include <cmath>

namespace fisher {

std::string ratio_case_name(RatioCase c) {
  switch (c) {
    case RatioCase::CaseI: return "i";
    case RatioCase::CaseII: return "ii";
    case RatioCase::CaseIII: return "iii";
  }
  return "?";
}

RatioCase classify_ratio_case(const ParamSet& p) {
  const double disc = 8.0 * p.beta * (1.0 - p.alpha) + p.c * p.n;
  const double zero_tol = 1e-12 * p.c * p.n;
  if (disc < -zero_tol) return RatioCase::CaseI;
  if (disc > zero_tol) return RatioCase::CaseII;
  return RatioCase::CaseIII;
}

double ratio_bound(const ParamSet& p, double d, double t1, double t2) {
  const auto range = classical_beta_range(p.n, p.c, p.alpha);
  if (!range || p.beta < range->first || p.beta > range->second)
    throw InfeasibleParams("ratio_bound requires beta in the classical beta range");
  if (!(t1 > 0.0) || t2 < t1) throw NonpositiveTime("ratio_bound requires 0 < t1 <= t2");
  if (t1 == t2) {
    if (d > 0.0)
      throw DegenerateInterval("ratio_bound: distance term undefined for t1 = t2, d > 0");
    return 1.0;
  }
  const double integral = tilde_integral(p, t1, t2);
  const double dist_term = -d * d / (4.0 * (1.0 - p.alpha) * (t2 - t1));
  return std::exp(integral) * std::exp(dist_term);
}

std::vector<RatioCheck> verify_pairs(const Trajectory& traj, const ParamSet& p,
                                     const std::vector<PairSpec>& pairs, double tol_rel) {
  for (const auto& f : traj.fields)
    for (double x : f.v)
      if (!(x > 0.0 && x < 1.0))
        throw RangeViolation("verify_pairs: trajectory must satisfy 0 < f < 1 everywhere");

  // Resolve snapshots up front so index errors surface before the
  // (exception-free) parallel pair loop.
  const auto snapshot_index = [&](double t) -> size_t {
    for (size_t i = 0; i < traj.times.size(); ++i)
      if (std::abs(traj.times[i] - t) <= 1e-9 * std::max(1.0, std::abs(t))) return i;
    throw MissingSnapshot("verify_pairs: no snapshot at t=" + std::to_string(t));
  };

  std::vector<RatioCheck> out(pairs.size());
  std::vector<std::array<size_t, 2>> snap(pairs.size());
  const RatioCase tag = classify_ratio_case(p);
  for (size_t i = 0; i < pairs.size(); ++i) {
    const PairSpec& pr = pairs[i];
    RatioCheck& rc = out[i];
    rc.pair = pr;
    rc.case_tag = tag;
    rc.distance = geodesic_distance(traj.grid, pr.x1, pr.x2);
    const double gap = pr.t2 - pr.t1;
    if (gap == 0.0 && rc.distance == 0.0) {
      rc.lhs = rc.rhs = 1.0;
      rc.pass = true;
    } else if (gap < 10.0 * traj.dt_used) {
      rc.skipped = true;
    } else {
      snap[i] = {snapshot_index(pr.t1), snapshot_index(pr.t2)};
      rc.rhs = ratio_bound(p, rc.distance, pr.t1, pr.t2);  // validates the regime
    }
  }
  // Pair checks are independent; results land at their input index.
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < std::int64_t(pairs.size()); ++i) {
    RatioCheck& rc = out[size_t(i)];
    if (rc.skipped || rc.pair.t1 == rc.pair.t2) continue;
    const ScalarField& f1 = traj.fields[snap[size_t(i)][0]];
    const ScalarField& f2 = traj.fields[snap[size_t(i)][1]];
    rc.lhs = f2.v[size_t(nearest_index(traj.grid, rc.pair.x2))] /
             f1.v[size_t(nearest_index(traj.grid, rc.pair.x1))];
    rc.tol = tol_rel * rc.rhs;
    rc.margin = rc.lhs - rc.rhs;
    rc.pass = rc.margin >= -rc.tol;
  }
  return out;
}

}  // namespace fisher
