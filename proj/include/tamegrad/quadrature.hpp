#pragma once

// Adaptive Simpson quadrature with Richardson correction.

#include <cmath>
#include <functional>
#include <stdexcept>

namespace tamegrad {

struct MaxSubdivisions : std::runtime_error {
  MaxSubdivisions() : std::runtime_error("quadrature: subdivision limit reached") {}
};

namespace detail {

inline double simpson(double fa, double fm, double fb, double h) {
  return h / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double fa, double fm, double fb, double whole, double tol,
                               int depth) {
  if (depth > 60) throw MaxSubdivisions();
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = simpson(fa, flm, fm, m - a);
  double right = simpson(fm, frm, fb, b - m);
  double delta = left + right - whole;
  if (std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, tol * 0.5, depth + 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, tol * 0.5, depth + 1);
}

}  // namespace detail

inline double quadrature(const std::function<double(double)>& f, double a, double b,
                         double tol) {
  if (!(a < b)) throw std::invalid_argument("quadrature: requires a < b");
  if (!(tol > 0)) throw std::invalid_argument("quadrature: tolerance must be positive");
  double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  double whole = detail::simpson(fa, fm, fb, b - a);
  return detail::adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 0);
}

}  // namespace tamegrad
