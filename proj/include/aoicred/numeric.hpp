#pragma once

#include <functional>

namespace aoicred {
namespace numeric {

// Root of f on [lo, hi]; f(lo) and f(hi) must have opposite (or zero) signs.
// Stops when the bracket is below xtol or |f| below ftol.
double bisect_root(const std::function<double(double)>& f, double lo, double hi,
                   double xtol = 1e-12, double ftol = 0.0);

// Golden-section minimizer of a unimodal f on [a, b]; returns the argmin.
double golden_min(const std::function<double(double)>& f, double a, double b,
                  double xtol = 1e-8);

// Adaptive Simpson quadrature on [a, b] to absolute tolerance.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-10);

// Integral of f over [a, inf) via the substitution y = a + t/(1-t).
// Requires f to decay faster than 1/y^2.
double integrate_to_inf(const std::function<double(double)>& f, double a,
                        double tol = 1e-10);

}  // namespace numeric
}  // namespace aoicred
