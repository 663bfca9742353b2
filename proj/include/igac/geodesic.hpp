#pragma once

#include <functional>
#include <vector>

#include "igac/geometry.hpp"
#include "igac/manifold.hpp"
#include "igac/ode.hpp"

namespace igac {

struct GeodesicState {
  double tau = 0.0;
  Vec theta;
  Vec theta_dot;
};

/// Integrator tolerances and limits.
struct StepControl {
  double rtol = 1e-10;
  double atol = 1e-12;
  double max_step = 0.0;    // 0 = unlimited
  long max_steps = 2000000;
  double fixed_step = 0.0;  // > 0 selects the fixed-step 4th-order mode
};

enum class PathStatus {
  Completed,     // reached tau_max
  BoundaryExit,  // stopped within kBoundaryStop of the domain boundary
  Overflow       // a coordinate exceeded the overflow guard
};

/// Trajectories stop when they approach a finite domain face this closely.
constexpr double kBoundaryStop = 1e-9;
/// Overflow guard for the oscillator flow.
constexpr double kOverflowGuard = 1e150;

/// A sampled geodesic with per-step interpolation data, so downstream
/// consumers can evaluate the state at any parameter value in the span.
struct GeodesicPath {
  std::vector<GeodesicState> samples;
  OdeResult raw;  // holds dense output over (theta, theta_dot)
  PathStatus status = PathStatus::Completed;
  double initial_norm = 0.0;  // g(theta_dot, theta_dot) at tau = 0
  double rtol = 0.0;
  double atol = 0.0;

  int dim() const { return samples.empty() ? 0 : static_cast<int>(samples.front().theta.size()); }
  double tau_begin() const { return samples.front().tau; }
  double tau_end() const { return samples.back().tau; }
  GeodesicState state_at(double tau) const;
};

/// Integrates theta'' + Gamma(theta) theta' theta' = 0 from s0 to tau_max.
/// If sample_grid is non-empty its entries (plus the endpoint) become the
/// recorded samples; otherwise the accepted integrator steps are recorded.
/// Approaching a finite domain face within kBoundaryStop stops the
/// trajectory with PathStatus::BoundaryExit.
GeodesicPath integrate_geodesic(const ManifoldSpec& m, const GeodesicState& s0,
                                double tau_max, const StepControl& ctrl = {},
                                const std::vector<double>& sample_grid = {});

/// Kinetic-norm drift g(theta_dot, theta_dot)(tau_i) - initial norm.
std::vector<double> norm_drift(const ManifoldSpec& m, const GeodesicPath& p);

using VectorField = std::function<Vec(const Vec&)>;

/// g(xi, theta_dot) along the path; constant when xi is a Killing field.
std::vector<double> killing_conservation(const ManifoldSpec& m,
                                         const VectorField& xi,
                                         const GeodesicPath& p);

/// The reparameterized oscillator flow theta_k'' = omega_k^2 theta_k in the
/// parameter tau. The returned path lives on the conformal ("iho") manifold
/// built from the same frequencies. Exceeding kOverflowGuard in any
/// coordinate stops the flow with PathStatus::Overflow.
GeodesicPath iho_trajectories(const std::vector<double>& omega,
                              const Vec& theta0, const Vec& theta_dot0,
                              double tau_max, const StepControl& ctrl = {});

}  // namespace igac
