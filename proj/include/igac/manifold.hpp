#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "igac/types.hpp"

namespace igac {

/// Metric tensor field over a coordinate chart. `value` must return a
/// symmetric matrix that is positive definite everywhere inside the domain.
/// `derivative` (optional) returns the analytic first derivatives,
/// d(k,i,j) = d g_ij / d theta_k; when absent, consumers fall back to
/// central finite differences of `value`.
struct MetricField {
  std::function<Mat(const Vec&)> value;
  std::function<Tensor3(const Vec&)> derivative;
};

/// Named parameters for the built-in manifolds: scalar entries (e.g. "l")
/// plus the oscillator frequency list for the conformal family.
struct ManifoldParams {
  std::map<std::string, double> scalars;
  std::vector<double> omega;
};

/// A statistical manifold: a coordinate box equipped with a metric field.
struct ManifoldSpec {
  std::string name;
  int dim = 0;
  MetricField metric;
  DomainBox domain;
  ManifoldParams params;
  std::vector<std::string> coord_names;
};

/// Points closer than this to a finite domain boundary are treated as
/// out-of-domain (1/sigma^2-type metrics overflow there).
constexpr double kDomainMargin = 1e-12;

/// Builds one of the built-in manifolds:
///  - "gaussian":   dim 2l, coordinates (mu_1..mu_l, sigma_1..sigma_l),
///                  metric diag(1/sigma_k^2 ... , 2/sigma_k^2 ...)
///  - "iho":        dim l, conformal metric (1 + 1/2 sum omega_k^2 theta_k^2) I
///  - "integrable": dim 2, metric diag(1/mu_A^2, 1/mu_B^2)
///  - "chaotic":    dim 3, metric diag(4/mu_A^2, 1/sigma_B^2, 2/sigma_B^2)
ManifoldSpec build_manifold(const std::string& name,
                            const ManifoldParams& params);

/// Metric matrix at a point. Throws DomainError outside the domain and
/// NumericalError if the returned matrix is not symmetric positive definite.
Mat metric_at(const ManifoldSpec& m, const Vec& theta);

/// sqrt(|det g|) at a point.
double volume_element(const ManifoldSpec& m, const Vec& theta);

/// First derivatives of the metric, d(k,i,j) = d g_ij / d theta_k.
/// Uses the analytic evaluator when present, otherwise central differences
/// with per-axis step h_k = step_scale * max(1, |theta_k|).
Tensor3 metric_derivative_at(const ManifoldSpec& m, const Vec& theta,
                             double step_scale = 1e-5);

/// Validates a point against the manifold domain (dimension and box).
void require_in_domain(const ManifoldSpec& m, const Vec& theta);

}  // namespace igac
