#include "igac/geometry.hpp"

#include <cmath>

namespace igac {
namespace {

Mat inverse_metric(const ManifoldSpec& m, const Vec& theta) {
  const Mat g = metric_at(m, theta);
  Eigen::LLT<Mat> llt(g);
  return llt.solve(Mat::Identity(m.dim, m.dim));
}

void require_boundary_margin(const ManifoldSpec& m, const Vec& theta,
                             double step, double reach) {
  double h_max = 0.0;
  for (int k = 0; k < m.dim; ++k)
    h_max = std::max(h_max, step * std::max(1.0, std::abs(theta[k])));
  if (m.domain.distance_to_boundary(theta) <= reach * h_max)
    throw DomainError(m.name +
                      ": point too close to the domain boundary for "
                      "finite-difference curvature");
}

}  // namespace

Tensor3 christoffel(const ManifoldSpec& m, const Vec& theta,
                    const GeometryOptions& opts) {
  require_in_domain(m, theta);
  // The finite-difference fallback needs room for its stencil; analytic
  // metric derivatives are evaluable right up to the domain edge.
  if (!m.metric.derivative)
    require_boundary_margin(m, theta, opts.metric_step, 2.0);

  const int n = m.dim;
  const Mat ginv = inverse_metric(m, theta);
  const Tensor3 dg = metric_derivative_at(m, theta, opts.metric_step);

  Tensor3 gamma(n);
  for (int rho = 0; rho < n; ++rho)
    for (int mu = 0; mu < n; ++mu)
      for (int nu = mu; nu < n; ++nu) {
        double sum = 0.0;
        for (int lam = 0; lam < n; ++lam)
          sum += ginv(rho, lam) *
                 (dg(mu, lam, nu) + dg(nu, lam, mu) - dg(lam, mu, nu));
        gamma(rho, mu, nu) = 0.5 * sum;
        gamma(rho, nu, mu) = gamma(rho, mu, nu);
      }
  return gamma;
}

CurvatureBundle curvature_tensors(const ManifoldSpec& m, const Vec& theta,
                                  const GeometryOptions& opts) {
  require_in_domain(m, theta);
  require_boundary_margin(m, theta, opts.christoffel_step, 4.0);

  const int n = m.dim;
  const Mat g = metric_at(m, theta);
  const Mat ginv = inverse_metric(m, theta);
  const Tensor3 gamma = christoffel(m, theta, opts);

  // dgamma(k, rho, mu, nu) = d_k Gamma^rho_{mu nu}, five-point central
  // stencil (the second-order stencil leaves the lowered-Riemann symmetry
  // defects right at the 1e-8 tolerance on the conformal manifold).
  Tensor4 dgamma(n);
  for (int k = 0; k < n; ++k) {
    const double h = opts.christoffel_step * std::max(1.0, std::abs(theta[k]));
    Vec t = theta;
    t[k] = theta[k] + 2 * h;
    const Tensor3 gp2 = christoffel(m, t, opts);
    t[k] = theta[k] + h;
    const Tensor3 gp1 = christoffel(m, t, opts);
    t[k] = theta[k] - h;
    const Tensor3 gm1 = christoffel(m, t, opts);
    t[k] = theta[k] - 2 * h;
    const Tensor3 gm2 = christoffel(m, t, opts);
    for (int rho = 0; rho < n; ++rho)
      for (int mu = 0; mu < n; ++mu)
        for (int nu = 0; nu < n; ++nu)
          dgamma(k, rho, mu, nu) =
              (-gp2(rho, mu, nu) + 8.0 * gp1(rho, mu, nu) -
               8.0 * gm1(rho, mu, nu) + gm2(rho, mu, nu)) /
              (12.0 * h);
  }

  CurvatureBundle bundle;
  bundle.point = theta;
  bundle.riemann = Tensor4(n);
  bundle.riemann_lowered = Tensor4(n);
  bundle.ricci = Mat::Zero(n, n);

  for (int mu = 0; mu < n; ++mu)
    for (int nu = 0; nu < n; ++nu)
      for (int rho = 0; rho < n; ++rho)
        for (int sig = 0; sig < n; ++sig) {
          double r = dgamma(rho, mu, nu, sig) - dgamma(sig, mu, nu, rho);
          for (int lam = 0; lam < n; ++lam)
            r += gamma(mu, rho, lam) * gamma(lam, nu, sig) -
                 gamma(mu, sig, lam) * gamma(lam, nu, rho);
          bundle.riemann(mu, nu, rho, sig) = r;
        }

  for (int mu = 0; mu < n; ++mu)
    for (int nu = 0; nu < n; ++nu)
      for (int rho = 0; rho < n; ++rho)
        for (int sig = 0; sig < n; ++sig) {
          double r = 0.0;
          for (int lam = 0; lam < n; ++lam)
            r += g(mu, lam) * bundle.riemann(lam, nu, rho, sig);
          bundle.riemann_lowered(mu, nu, rho, sig) = r;
        }

  for (int nu = 0; nu < n; ++nu)
    for (int sig = 0; sig < n; ++sig) {
      double r = 0.0;
      for (int rho = 0; rho < n; ++rho) r += bundle.riemann(rho, nu, rho, sig);
      bundle.ricci(nu, sig) = r;
    }

  bundle.scalar = (ginv.array() * bundle.ricci.array()).sum();
  return bundle;
}

double sectional_curvature(const CurvatureBundle& bundle, const Mat& g,
                           const TangentPlane& plane) {
  const int n = static_cast<int>(g.rows());
  const Vec& u = plane.u;
  const Vec& v = plane.v;
  if (u.size() != n || v.size() != n)
    throw ValidationError("sectional_curvature: plane has wrong dimension");

  const double uu = u.dot(g * u);
  const double vv = v.dot(g * v);
  const double uv = u.dot(g * v);
  const double gram = uu * vv - uv * uv;
  if (gram <= 1e-12 * std::max(1.0, uu * vv))
    throw ValidationError("sectional_curvature: degenerate tangent plane");

  double num = 0.0;
  for (int mu = 0; mu < n; ++mu)
    for (int nu = 0; nu < n; ++nu)
      for (int rho = 0; rho < n; ++rho)
        for (int sig = 0; sig < n; ++sig)
          num += bundle.riemann_lowered(mu, nu, rho, sig) * u[mu] * v[nu] *
                 u[rho] * v[sig];
  return num / gram;
}

double sectional_curvature(const ManifoldSpec& m, const Vec& theta,
                           const TangentPlane& plane,
                           const GeometryOptions& opts) {
  const CurvatureBundle bundle = curvature_tensors(m, theta, opts);
  return sectional_curvature(bundle, metric_at(m, theta), plane);
}

double sum_sectional_coordinate_planes(const ManifoldSpec& m, const Vec& theta,
                                       const GeometryOptions& opts) {
  const int n = m.dim;
  const Mat g = metric_at(m, theta);
  const CurvatureBundle bundle = curvature_tensors(m, theta, opts);

  // Gram-Schmidt of the coordinate basis in the metric inner product.
  std::vector<Vec> basis;
  for (int i = 0; i < n; ++i) {
    Vec e = Vec::Zero(n);
    e[i] = 1.0;
    for (const Vec& b : basis) e -= b.dot(g * e) * b;
    const double norm = std::sqrt(e.dot(g * e));
    if (norm <= 0.0)
      throw NumericalError("sum_sectional_coordinate_planes: basis collapsed");
    basis.push_back(e / norm);
  }

  double sum = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      sum += 2.0 * sectional_curvature(bundle, g, TangentPlane{basis[static_cast<size_t>(i)],
                                                               basis[static_cast<size_t>(j)]});
  return sum;
}

Tensor4 weyl_anisotropy(const ManifoldSpec& m, const Vec& theta,
                        const GeometryOptions& opts) {
  const int n = m.dim;
  if (n < 2)
    throw ValidationError("weyl_anisotropy: requires dimension >= 2");
  const Mat g = metric_at(m, theta);
  const CurvatureBundle bundle = curvature_tensors(m, theta, opts);
  const double k = bundle.scalar / (n * (n - 1.0));

  Tensor4 w(n);
  for (int mu = 0; mu < n; ++mu)
    for (int nu = 0; nu < n; ++nu)
      for (int rho = 0; rho < n; ++rho)
        for (int sig = 0; sig < n; ++sig)
          w(mu, nu, rho, sig) =
              bundle.riemann_lowered(mu, nu, rho, sig) -
              k * (g(mu, rho) * g(nu, sig) - g(mu, sig) * g(nu, rho));
  return w;
}

}  // namespace igac
