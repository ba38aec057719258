#ifndef FISHER_CLASSICAL_HPP_
#define FISHER_CLASSICAL_HPP_

#include <array>
#include <string>
#include <vector>

#include "fisher/phi.hpp"
#include "fisher/solver.hpp"

namespace fisher {

/// Integral-form cases, selected by the sign of 8 beta (1-alpha) + c n.
enum class RatioCase { CaseI, CaseII, CaseIII };

std::string ratio_case_name(RatioCase c);

RatioCase classify_ratio_case(const ParamSet& p);

/**
 * Lower bound for f(x2,t2)/f(x1,t1):
 *   exp(integral of phi~ over [t1,t2]) * exp(-d^2 / (4(1-alpha)(t2-t1))).
 * Requires beta in the classical beta range (beta + c >= 0) and 0 < t1 < t2
 * (t1 = t2 is allowed only with d = 0, where the bound is 1). Cases II/III
 * require t1 > T2.
 */
double ratio_bound(const ParamSet& p, double d, double t1, double t2);

struct PairSpec {
  std::vector<double> x1, x2;
  double t1 = 0.0, t2 = 0.0;
};

struct RatioCheck {
  PairSpec pair;
  RatioCase case_tag = RatioCase::CaseI;
  double distance = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // lhs - rhs
  double tol = 0.0;
  bool pass = false;
  bool skipped = false;  // pair rejected (t2 - t1 below the time resolution)
};

/**
 * Reads f at the nearest grid points of the requested snapshots and checks
 * lhs >= rhs - tol with tol = tol_rel * rhs. The whole trajectory must lie in
 * (0,1) (RangeViolation otherwise); pairs with 0 < t2-t1 < 10 dt are marked
 * skipped. Results keep the input order.
 */
std::vector<RatioCheck> verify_pairs(const Trajectory& traj, const ParamSet& p,
                                     const std::vector<PairSpec>& pairs, double tol_rel = 1e-3);

}  // namespace fisher

#endif  // FISHER_CLASSICAL_HPP_
