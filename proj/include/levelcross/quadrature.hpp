#pragma once

#include <functional>

namespace lcross::quad {

// Adaptive Gauss-Kronrod (G7,K15) integration of f over [a, b] to an
// absolute tolerance. Splits the worst interval until the summed error
// estimate is below tol or the interval budget is exhausted.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-10, int max_intervals = 2000);

// Integration for integrands with (at worst) inverse-square-root
// singularities at either endpoint: the interval is split at the
// midpoint and each half is mapped by x = a + t^2 (resp. x = b - t^2),
// which turns 1/sqrt(x-a) into a bounded factor before the adaptive
// pass runs.
double integrate_endpoint_singular(const std::function<double(double)>& f, double a, double b,
                                   double abs_tol = 1e-10, int max_intervals = 2000);

}  // namespace lcross::quad
