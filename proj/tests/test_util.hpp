#ifndef FISHER_TESTS_TEST_UTIL_HPP_
#define FISHER_TESTS_TEST_UTIL_HPP_

#include <cmath>
#include <functional>
#include <random>

namespace testutil {

// Adaptive Simpson quadrature; independent oracle for the closed-form
// integrals under test.
inline double simpson(const std::function<double(double)>& f, double a, double b, double fa,
                      double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double b,
                                   double fa, double fm, double fb, double whole, double tol,
                                   int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(f, a, m, fa, flm, fm);
  const double right = simpson(f, m, b, fm, frm, fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  return adaptive_simpson_rec(f, a, b, fa, fm, fb, simpson(f, a, b, fa, fm, fb), tol, 48);
}

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(1e-300, std::abs(want));
}

}  // namespace testutil

#endif  // FISHER_TESTS_TEST_UTIL_HPP_
