#pragma once

#include <functional>
#include <string>
#include <vector>

#include "igac/types.hpp"

namespace igac {

enum class SupportKind { RealLine, PositiveHalfLine, FiniteInterval };

struct SampleSupport {
  SupportKind kind = SupportKind::RealLine;
  double lo = -kInf;
  double hi = kInf;

  bool contains(double x) const {
    switch (kind) {
      case SupportKind::RealLine:
        return std::isfinite(x);
      case SupportKind::PositiveHalfLine:
        return x > 0.0;
      case SupportKind::FiniteInterval:
        return x > lo && x < hi;
    }
    return false;
  }
};

/// Parametric family of densities p(x | theta). Built-ins are univariate in
/// the sample; products (see compose_product) carry one sample coordinate
/// per component.
struct DistributionFamily {
  std::string name;
  int param_dim = 0;
  int sample_dim = 1;
  std::vector<SampleSupport> support;  // one per sample coordinate
  DomainBox param_domain;

  std::function<double(const Vec& x, const Vec& theta)> log_density;
  /// Analytic score d log p / d theta (optional; finite differences
  /// otherwise).
  std::function<Vec(const Vec& x, const Vec& theta)> score;
  /// Draws one sample coordinate from up to two uniforms in (0,1)
  /// (inverse CDF or Box-Muller); optional, required for Monte Carlo.
  std::function<double(const Vec& theta, double u1, double u2)> sampler;
  /// Location/scale of the density in sample coordinate k, used to center
  /// the quadrature substitution.
  std::function<void(const Vec& theta, int k, double& center, double& scale)>
      quad_hint;

  // Product structure (empty for atomic families).
  std::vector<DistributionFamily> children;
  /// child_param_index[c][j] = index in the product's parameter vector of
  /// child c's j-th parameter.
  std::vector<std::vector<int>> child_param_index;

  bool is_product() const { return !children.empty(); }
};

/// Normal in x with parameters (mu, sigma); Fisher metric diag(1/s^2, 2/s^2).
DistributionFamily gaussian_1d();

/// Spacing density p(s|mu) = (1/mu) exp(-s/mu); Fisher information 1/mu^2.
DistributionFamily exponential_spacing();

/// Spacing density p(s|mu) = (pi s / 2 mu^2) exp(-pi s^2 / 4 mu^2)
/// (Wigner surmise with mean spacing mu); Fisher information 4/mu^2.
DistributionFamily wigner_dyson_spacing();

DistributionFamily family_by_name(const std::string& name);

/// Independent product of families. Parameter layout: when every component
/// has the same parameter dimension, parameters are grouped by position
/// (all first parameters, then all second parameters, ...), matching the
/// built-in manifold coordinate conventions; otherwise the component
/// parameter vectors are concatenated.
DistributionFamily compose_product(std::vector<DistributionFamily> families);

/// log p(x | theta), with support and parameter-domain checks.
double family_log_density(const DistributionFamily& f, const Vec& x,
                          const Vec& theta);

void require_sample_in_support(const DistributionFamily& f, const Vec& x);
void require_params_in_domain(const DistributionFamily& f, const Vec& theta);

}  // namespace igac
