#pragma once

#include <functional>

#include "igac/types.hpp"

namespace igac {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // absolute error estimate
  long evals = 0;
  bool converged = false;
};

/// Adaptive Gauss-Kronrod (7,15) on a finite interval. Splits the interval
/// with the largest local error estimate until the summed estimate meets
/// tol = max(abs_tol, rel_tol*|I|) or the evaluation budget runs out.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b, double abs_tol,
                                    double rel_tol, long max_evals);

/// Same, but throws NumericalError (carrying the achieved estimate) when the
/// budget is exhausted before the tolerance is met.
double integrate_or_throw(const std::function<double(double)>& f, double a,
                          double b, double abs_tol, double rel_tol,
                          long max_evals, double* error_out = nullptr,
                          long* evals_out = nullptr);

/// Integral of f over the real line, mapped through a logistic substitution
/// x = center + scale*log(t/(1-t)) (handles Gaussian-type tails).
QuadratureResult integrate_real_line(const std::function<double(double)>& f,
                                     double center, double scale,
                                     double abs_tol, double rel_tol,
                                     long max_evals);

/// Integral of f over (lo, +inf), mapped through x = lo - scale*log(1-t)
/// (handles exponential and faster-decaying tails).
QuadratureResult integrate_half_line(const std::function<double(double)>& f,
                                     double lo, double scale, double abs_tol,
                                     double rel_tol, long max_evals);

}  // namespace igac
