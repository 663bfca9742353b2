#include "igac/geodesic.hpp"

#include <algorithm>
#include <cmath>

namespace igac {
namespace {

// Packs (theta, theta_dot) into one ODE state vector.
Vec pack(const Vec& theta, const Vec& theta_dot) {
  Vec y(theta.size() * 2);
  y.head(theta.size()) = theta;
  y.tail(theta.size()) = theta_dot;
  return y;
}

OdeOptions to_ode_options(const StepControl& ctrl) {
  OdeOptions o;
  o.rtol = ctrl.rtol;
  o.atol = ctrl.atol;
  o.max_step = ctrl.max_step;
  o.max_steps = ctrl.max_steps;
  o.fixed_step = ctrl.fixed_step;
  return o;
}

GeodesicPath assemble_path(const ManifoldSpec& m, const OdeResult& raw,
                           PathStatus status, const StepControl& ctrl,
                           const std::vector<double>& sample_grid) {
  const int n = m.dim;
  GeodesicPath path;
  path.raw = raw;
  path.status = status;
  path.rtol = ctrl.rtol;
  path.atol = ctrl.atol;

  auto state_of = [n](double tau, const Vec& y) {
    return GeodesicState{tau, y.head(n), y.tail(n)};
  };

  if (sample_grid.empty()) {
    for (size_t i = 0; i < raw.ts.size(); ++i)
      path.samples.push_back(state_of(raw.ts[i], raw.ys[i]));
  } else {
    const double t_end = raw.t_end();
    for (double tau : sample_grid) {
      if (tau < raw.t_begin() - 1e-12 || tau > t_end + 1e-12) continue;
      const double tc = std::clamp(tau, raw.t_begin(), t_end);
      path.samples.push_back(state_of(tc, raw.at(tc)));
    }
    if (path.samples.empty() || path.samples.back().tau < t_end)
      path.samples.push_back(state_of(t_end, raw.ys.back()));
  }

  // Initial norm is taken at the start of integration, not at the first
  // recorded sample (a sample grid may begin later).
  const Vec y0 = raw.ys.front();
  const Vec th0 = y0.head(n);
  const Vec v0 = y0.tail(n);
  path.initial_norm = v0.dot(metric_at(m, th0) * v0);
  return path;
}

}  // namespace

GeodesicState GeodesicPath::state_at(double tau) const {
  if (raw.dense.empty())
    throw ValidationError("GeodesicPath: no dense output available");
  const Vec y = raw.at(tau);
  const auto n = y.size() / 2;
  return GeodesicState{tau, y.head(n), y.tail(n)};
}

GeodesicPath integrate_geodesic(const ManifoldSpec& m, const GeodesicState& s0,
                                double tau_max, const StepControl& ctrl,
                                const std::vector<double>& sample_grid) {
  require_in_domain(m, s0.theta);
  if (s0.theta_dot.size() != m.dim)
    throw ValidationError("integrate_geodesic: velocity dimension mismatch");
  if (!(tau_max > s0.tau))
    throw ValidationError("integrate_geodesic: tau_max must exceed s0.tau");

  const int n = m.dim;
  GeometryOptions geo;

  OdeRhs rhs = [&m, n, &geo](double, const Vec& y, Vec& dydt) {
    const Vec theta = y.head(n);
    if (!m.domain.contains(theta, kDomainMargin)) return false;
    const Vec v = y.tail(n);
    Tensor3 gamma;
    try {
      gamma = christoffel(m, theta, geo);
    } catch (const DomainError&) {
      return false;
    }
    dydt.resize(2 * n);
    dydt.head(n) = v;
    for (int rho = 0; rho < n; ++rho) {
      double acc = 0.0;
      for (int mu = 0; mu < n; ++mu)
        for (int nu = 0; nu < n; ++nu)
          acc += gamma(rho, mu, nu) * v[mu] * v[nu];
      dydt[n + rho] = -acc;
    }
    return true;
  };

  bool boundary_exit = false;
  OdeCallback cb = [&m, n, &boundary_exit](double, const Vec& y) {
    const Vec theta = y.head(n);
    if (m.domain.distance_to_boundary(theta) < kBoundaryStop) {
      boundary_exit = true;
      return false;
    }
    return true;
  };

  OdeResult raw;
  try {
    raw = integrate_ode(rhs, s0.tau, pack(s0.theta, s0.theta_dot), tau_max,
                        to_ode_options(ctrl), cb);
  } catch (const NumericalError& e) {
    // Persistent stage failures right at a domain face shrink the step to
    // nothing; report that as a boundary exit rather than an error.
    if (std::string(e.what()).find("underflow") != std::string::npos)
      throw NumericalError(std::string(e.what()) +
                           " (trajectory may have reached the domain "
                           "boundary between accepted steps)");
    throw;
  }

  const PathStatus status = boundary_exit ? PathStatus::BoundaryExit
                                          : PathStatus::Completed;
  return assemble_path(m, raw, status, ctrl, sample_grid);
}

std::vector<double> norm_drift(const ManifoldSpec& m, const GeodesicPath& p) {
  if (p.samples.empty()) throw ValidationError("norm_drift: empty path");
  std::vector<double> drift;
  drift.reserve(p.samples.size());
  for (const auto& s : p.samples) {
    const double norm = s.theta_dot.dot(metric_at(m, s.theta) * s.theta_dot);
    drift.push_back(norm - p.initial_norm);
  }
  return drift;
}

std::vector<double> killing_conservation(const ManifoldSpec& m,
                                         const VectorField& xi,
                                         const GeodesicPath& p) {
  if (p.samples.empty())
    throw ValidationError("killing_conservation: empty path");
  std::vector<double> series;
  series.reserve(p.samples.size());
  for (const auto& s : p.samples)
    series.push_back(xi(s.theta).dot(metric_at(m, s.theta) * s.theta_dot));
  return series;
}

GeodesicPath iho_trajectories(const std::vector<double>& omega,
                              const Vec& theta0, const Vec& theta_dot0,
                              double tau_max, const StepControl& ctrl) {
  const int l = static_cast<int>(omega.size());
  if (l == 0) throw ValidationError("iho_trajectories: empty frequency list");
  for (double w : omega)
    if (!(w > 0.0))
      throw ValidationError("iho_trajectories: every omega_k must be > 0");
  if (theta0.size() != l || theta_dot0.size() != l)
    throw ValidationError("iho_trajectories: initial condition dimension "
                          "disagrees with omega");

  ManifoldParams params;
  params.omega = omega;
  const ManifoldSpec m = build_manifold("iho", params);

  OdeRhs rhs = [&omega, l](double, const Vec& y, Vec& dydt) {
    dydt.resize(2 * l);
    dydt.head(l) = y.tail(l);
    for (int k = 0; k < l; ++k)
      dydt[l + k] = omega[static_cast<size_t>(k)] *
                    omega[static_cast<size_t>(k)] * y[k];
    return true;
  };

  bool overflow = false;
  OdeCallback cb = [l, &overflow](double, const Vec& y) {
    for (int k = 0; k < l; ++k)
      if (std::abs(y[k]) > kOverflowGuard) {
        overflow = true;
        return false;
      }
    return true;
  };

  const OdeResult raw = integrate_ode(rhs, 0.0, pack(theta0, theta_dot0),
                                      tau_max, to_ode_options(ctrl), cb);
  const PathStatus status =
      overflow ? PathStatus::Overflow : PathStatus::Completed;
  return assemble_path(m, raw, status, ctrl, {});
}

}  // namespace igac
