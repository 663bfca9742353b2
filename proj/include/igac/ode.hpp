#pragma once

#include <array>
#include <functional>
#include <vector>

#include "igac/types.hpp"

namespace igac {

/// Right-hand side y' = f(t, y). Returns false when the state is outside the
/// region where f can be evaluated; the integrator then retries with a
/// smaller step.
using OdeRhs = std::function<bool(double t, const Vec& y, Vec& dydt)>;

/// Called after every accepted step; returning false stops the integration
/// at that step (recorded as StoppedByCallback, not an error).
using OdeCallback = std::function<bool(double t, const Vec& y)>;

struct OdeOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  double max_step = 0.0;    // 0 = unlimited
  long max_steps = 2000000;
  double fixed_step = 0.0;  // > 0 selects the fixed-step 4th-order mode
};

enum class OdeStatus { ReachedEnd, StoppedByCallback };

/// One accepted step's interpolation polynomial (quartic in the step
/// fraction for the embedded pair, cubic Hermite in fixed-step mode).
struct DenseStep {
  double t0 = 0.0;
  double t1 = 0.0;
  std::array<Vec, 5> p;

  Vec eval(double t) const {
    const double a = (t - t0) / (t1 - t0);
    const double b = 1.0 - a;
    return p[0] + a * (p[1] + b * (p[2] + a * (p[3] + b * p[4])));
  }
};

struct OdeResult {
  std::vector<double> ts;   // accepted step times, starting at t0
  std::vector<Vec> ys;      // states at ts
  std::vector<DenseStep> dense;
  OdeStatus status = OdeStatus::ReachedEnd;
  long accepted = 0;
  long rejected = 0;
  long rhs_evals = 0;

  double t_begin() const { return ts.front(); }
  double t_end() const { return ts.back(); }

  /// Dense-output state at any t within the integrated span.
  Vec at(double t) const;
};

/// Adaptive Dormand-Prince 5(4) with free 4th-order dense output.
/// Throws NumericalError on step-size underflow or when max_steps is hit.
OdeResult integrate_ode(const OdeRhs& rhs, double t0, const Vec& y0,
                        double t_end, const OdeOptions& opts = {},
                        const OdeCallback& callback = {});

}  // namespace igac
