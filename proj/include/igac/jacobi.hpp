#pragma once

#include "igac/geodesic.hpp"
#include "igac/geometry.hpp"
#include "igac/manifold.hpp"

namespace igac {

struct JacobiSample {
  double tau = 0.0;
  Vec J;          // Jacobi field components
  Vec DJ;         // covariant derivative along the geodesic
  double intensity = 0.0;  // sqrt(g(J, J))
};

struct JacobiField {
  std::vector<JacobiSample> samples;
  double tau_begin() const { return samples.front().tau; }
  double tau_end() const { return samples.back().tau; }
};

/// Integrates the geodesic-deviation system
///   D^2 J / dtau^2 + R(J, theta_dot) theta_dot = 0
/// jointly with the geodesic (augmented state), starting from the path's
/// initial state and sampling at the path's parameter grid. The path only
/// supplies the initial condition, span, and sample times; it must carry at
/// least a minimal grid.
JacobiField integrate_jlc(const ManifoldSpec& m, const GeodesicPath& p,
                          const Vec& J0, const Vec& DJ0,
                          const StepControl& ctrl = {});

/// Log-linear fit of the intensity over a parameter window, with a
/// linear-growth alternative. When the straight-line model J ~ a*tau + b
/// explains the data better than the exponential model (in intensity
/// space), the exponential form is rejected: `exponential_model` is false
/// and `exponent` is reported as zero (raw_slope keeps the log-space fit).
struct ExponentFit {
  double exponent = 0.0;
  double intercept = 0.0;
  double window_lo = 0.0;
  double window_hi = 0.0;
  double r2 = 0.0;           // of the log-space fit
  double raw_slope = 0.0;    // log-space slope before model selection
  bool exponential_model = true;
};

ExponentFit divergence_exponent(const JacobiField& f, double window_lo,
                                double window_hi);

/// Unit vector (in g) orthogonal to theta_dot at theta; the standardized
/// pure-spread initial condition is J0 = 0, DJ0 = this.
Vec unit_normal_to(const ManifoldSpec& m, const Vec& theta,
                   const Vec& theta_dot);

}  // namespace igac
