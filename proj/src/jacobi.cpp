#include "igac/jacobi.hpp"

#include <algorithm>
#include <cmath>

#include "igac/linefit.hpp"

namespace igac {

JacobiField integrate_jlc(const ManifoldSpec& m, const GeodesicPath& p,
                          const Vec& J0, const Vec& DJ0,
                          const StepControl& ctrl) {
  const int n = m.dim;
  if (p.samples.size() < 2)
    throw ValidationError(
        "integrate_jlc: path too sparse (needs at least two samples; "
        "integrate with dense output)");
  if (J0.size() != n || DJ0.size() != n)
    throw ValidationError("integrate_jlc: J0/DJ0 dimension mismatch");

  GeometryOptions geo;

  // Augmented state [theta, theta_dot, J, A] with A = DJ/dtau. Expanding the
  // covariant derivatives:
  //   J'  = A - Gamma theta_dot J
  //   A'  = -Gamma theta_dot A - R^mu_{nu rho sig} theta_dot^nu J^rho theta_dot^sig
  OdeRhs rhs = [&m, n, &geo](double, const Vec& y, Vec& dydt) {
    const Vec theta = y.segment(0, n);
    if (!m.domain.contains(theta, kDomainMargin)) return false;
    const Vec v = y.segment(n, n);
    const Vec J = y.segment(2 * n, n);
    const Vec A = y.segment(3 * n, n);

    Tensor3 gamma;
    CurvatureBundle curv;
    try {
      gamma = christoffel(m, theta, geo);
      curv = curvature_tensors(m, theta, geo);
    } catch (const DomainError&) {
      return false;
    }

    auto contract = [&gamma, n](const Vec& a, const Vec& b) {
      Vec out = Vec::Zero(n);
      for (int rho = 0; rho < n; ++rho) {
        double acc = 0.0;
        for (int mu = 0; mu < n; ++mu)
          for (int nu = 0; nu < n; ++nu)
            acc += gamma(rho, mu, nu) * a[mu] * b[nu];
        out[rho] = acc;
      }
      return out;
    };

    Vec curv_term = Vec::Zero(n);
    for (int mu = 0; mu < n; ++mu) {
      double acc = 0.0;
      for (int nu = 0; nu < n; ++nu)
        for (int rho = 0; rho < n; ++rho)
          for (int sig = 0; sig < n; ++sig)
            acc += curv.riemann(mu, nu, rho, sig) * v[nu] * J[rho] * v[sig];
      curv_term[mu] = acc;
    }

    dydt.resize(4 * n);
    dydt.segment(0, n) = v;
    dydt.segment(n, n) = -contract(v, v);
    dydt.segment(2 * n, n) = A - contract(v, J);
    dydt.segment(3 * n, n) = -contract(v, A) - curv_term;
    return true;
  };

  const GeodesicState& s0 = p.samples.front();
  Vec y0(4 * n);
  y0.segment(0, n) = s0.theta;
  y0.segment(n, n) = s0.theta_dot;
  y0.segment(2 * n, n) = J0;
  y0.segment(3 * n, n) = DJ0;

  OdeOptions opts;
  opts.rtol = ctrl.rtol;
  opts.atol = ctrl.atol;
  opts.max_step = ctrl.max_step;
  opts.max_steps = ctrl.max_steps;
  opts.fixed_step = ctrl.fixed_step;

  const OdeResult raw =
      integrate_ode(rhs, s0.tau, y0, p.tau_end(), opts, {});

  JacobiField field;
  field.samples.reserve(p.samples.size());
  for (const auto& s : p.samples) {
    const Vec y = raw.at(s.tau);
    JacobiSample js;
    js.tau = s.tau;
    js.J = y.segment(2 * n, n);
    js.DJ = y.segment(3 * n, n);
    const Vec theta = y.segment(0, n);
    js.intensity = std::sqrt(std::max(0.0, js.J.dot(metric_at(m, theta) * js.J)));
    field.samples.push_back(std::move(js));
  }
  return field;
}

ExponentFit divergence_exponent(const JacobiField& f, double window_lo,
                                double window_hi) {
  if (!(window_lo < window_hi))
    throw ValidationError("divergence_exponent: empty window");
  if (window_lo < f.tau_begin() - 1e-12 || window_hi > f.tau_end() + 1e-12)
    throw DomainError("divergence_exponent: window outside the sampled span");

  std::vector<double> taus, intensities, logs;
  for (const auto& s : f.samples) {
    if (s.tau < window_lo - 1e-12 || s.tau > window_hi + 1e-12) continue;
    if (!(s.intensity > 0.0))
      throw NumericalError(
          "divergence_exponent: zero intensity inside the fit window");
    taus.push_back(s.tau);
    intensities.push_back(s.intensity);
    logs.push_back(std::log(s.intensity));
  }
  if (taus.size() < 10)
    throw ValidationError(
        "divergence_exponent: fewer than 10 samples in the window");

  const LineFit log_fit = fit_line(taus, logs);
  const LineFit lin_fit = fit_line(taus, intensities);

  // Compare both models where they live: in intensity space.
  double sse_exp = 0.0;
  for (size_t i = 0; i < taus.size(); ++i) {
    const double pred = std::exp(log_fit.intercept + log_fit.slope * taus[i]);
    const double r = intensities[i] - pred;
    sse_exp += r * r;
  }

  ExponentFit fit;
  fit.window_lo = window_lo;
  fit.window_hi = window_hi;
  fit.r2 = log_fit.r2;
  fit.raw_slope = log_fit.slope;
  fit.intercept = log_fit.intercept;
  fit.exponential_model = sse_exp <= lin_fit.sse && log_fit.r2 >= 0.9;
  fit.exponent = fit.exponential_model ? log_fit.slope : 0.0;
  return fit;
}

Vec unit_normal_to(const ManifoldSpec& m, const Vec& theta,
                   const Vec& theta_dot) {
  const Mat g = metric_at(m, theta);
  const int n = m.dim;
  const double vnorm2 = theta_dot.dot(g * theta_dot);
  if (!(vnorm2 > 0.0))
    throw ValidationError("unit_normal_to: zero velocity");

  // Orthogonalize a fixed generic direction against theta_dot. An
  // axis-aligned choice can land in a flat factor of a product metric (or
  // tangent to a factor's velocity) and miss the curvature entirely; the
  // irrational component spacing avoids such accidental alignments.
  Vec seed(n);
  for (int k = 0; k < n; ++k) seed[k] = 1.0 + 0.61803398875 * k;
  Vec normal = seed - (seed.dot(g * theta_dot) / vnorm2) * theta_dot;
  double norm2 = normal.dot(g * normal);

  if (!(norm2 > 1e-8 * seed.dot(g * seed))) {
    // Seed was (nearly) parallel to the velocity; sweep the axes instead.
    double best_norm2 = -1.0;
    for (int i = 0; i < n; ++i) {
      Vec e = Vec::Zero(n);
      e[i] = 1.0;
      e -= (e.dot(g * theta_dot) / vnorm2) * theta_dot;
      const double r2 = e.dot(g * e);
      if (r2 > best_norm2) {
        best_norm2 = r2;
        normal = e;
      }
    }
    norm2 = best_norm2;
  }
  if (!(norm2 > 0.0))
    throw NumericalError("unit_normal_to: no orthogonal direction found");
  return normal / std::sqrt(norm2);
}

}  // namespace igac
