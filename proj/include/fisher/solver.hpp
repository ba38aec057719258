#ifndef FISHER_SOLVER_HPP_
#define FISHER_SOLVER_HPP_

#include <cstdint>
#include <vector>

#include "fisher/grid.hpp"
#include "fisher/params.hpp"

namespace fisher {

/// Time-ordered positive solution samples of f_t = lap f + c f (1-f).
struct Trajectory {
  ParamSet params;
  TorusGrid grid;
  std::vector<double> times;
  std::vector<ScalarField> fields;
  double dt_used = 0.0;
};

/// Explicit-scheme step bound: safety / (2 sum_a 1/dx_a^2 + c). The +c term
/// covers the reaction slope |c(1-2f)| <= c on (0,1).
double stable_dt(const TorusGrid& g, double c, double safety);

/// Spatially constant exact solution f0 e^{ct} / (1 - f0 + f0 e^{ct}).
double logistic_exact(double f0, double c, double t);

enum class InitKind { Constant, SmoothRandom, Bump };

struct InitSpec {
  InitKind kind = InitKind::SmoothRandom;
  double value = 0.5;          // Constant
  std::uint64_t seed = 0;      // SmoothRandom
  int band = 4;                // SmoothRandom: max wave number per axis
  double floor = 0.05;         // SmoothRandom range (floor, 1-floor); Bump base level
  std::vector<double> center;  // Bump
  double width = 0.1;          // Bump
  double height = 0.9;         // Bump
};

/// Deterministic initial data; throws RangeViolation when the requested
/// values would leave (0,1).
ScalarField make_initial(const TorusGrid& g, const InitSpec& spec);

/**
 * Classical RK4 in time with the periodic second-order Laplacian in space.
 * Snapshots are taken exactly at the requested times (the final substep
 * before each sample is shortened). Values leaving (-1e-9, 1+1e-9) raise
 * StabilityViolation; positivity is monitored, never repaired.
 */
Trajectory simulate(const ScalarField& initial, const ParamSet& p, double t_end,
                    const std::vector<double>& sample_times, double safety = 0.5);

}  // namespace fisher

#endif  // FISHER_SOLVER_HPP_
