#ifndef FISHER_GRID_HPP_
#define FISHER_GRID_HPP_

#include <array>
#include <cstdint>
#include <vector>

#include "fisher/errors.hpp"

namespace fisher {

/// Uniform periodic grid on a flat torus, n = 1..3, row-major storage with the
/// last axis fastest.
struct TorusGrid {
  int n = 1;
  std::array<int, 3> pts{8, 1, 1};
  std::array<double, 3> len{1.0, 1.0, 1.0};

  double dx(int axis) const { return len[axis] / pts[axis]; }
  double max_dx() const;
  std::int64_t total() const;
  std::int64_t flatten(const std::array<int, 3>& idx) const;
  std::array<int, 3> unflatten(std::int64_t flat) const;
  /// Coordinate of a grid point along one axis.
  double coord(int axis, int i) const { return i * dx(axis); }
};

TorusGrid make_grid(const std::vector<int>& points_per_axis, const std::vector<double>& lengths);

struct ScalarField {
  TorusGrid grid;
  std::vector<double> v;
};

ScalarField constant_field(const TorusGrid& g, double value);

/// Central-difference gradient, one ScalarField per axis.
std::vector<ScalarField> gradient(const ScalarField& f);

/// (2n+1)-point second-order periodic Laplacian.
ScalarField laplacian(const ScalarField& f);

/// Pointwise |grad f|^2.
ScalarField grad_norm_sq(const ScalarField& f);

/// Sum of squares of all second partials; mixed partials by 4-point centered
/// cross-differences.
ScalarField hessian_frobenius_sq(const ScalarField& f);

/// Pointwise log; throws NonpositiveField if any value <= 0.
ScalarField log_field(const ScalarField& f);

/// Wrapped distance: Euclidean norm of componentwise min(|d|, L-|d|).
double geodesic_distance(const TorusGrid& g, const std::vector<double>& x1,
                         const std::vector<double>& x2);

/// Flat index of the grid point nearest to x (componentwise wrap).
std::int64_t nearest_index(const TorusGrid& g, const std::vector<double>& x);

struct MinLoc {
  double value;
  std::int64_t index;
};

/// Minimum with first-in-row-major tie-breaking, computed by a fixed-shape
/// blockwise reduction so the result is identical for any thread count.
MinLoc min_reduce(const std::vector<double>& v);
MinLoc max_abs_reduce(const std::vector<double>& v);

/// Serial reference stencils; same contracts as the parallel versions above.
namespace ref {
std::vector<ScalarField> gradient(const ScalarField& f);
ScalarField laplacian(const ScalarField& f);
ScalarField hessian_frobenius_sq(const ScalarField& f);
}  // namespace ref

}  // namespace fisher

#endif  // FISHER_GRID_HPP_
