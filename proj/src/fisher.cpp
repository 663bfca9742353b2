#include "igac/fisher.hpp"

#include <cmath>

#include "igac/quadrature.hpp"
#include "igac/rng.hpp"

namespace igac {
namespace {

// Expectation of fn(x) under an atomic (univariate-sample) family, by
// adaptive quadrature through the support substitution.
QuadratureResult expect_1d(const DistributionFamily& f, const Vec& theta,
                           const std::function<double(double)>& fn,
                           double rel_tol, long budget) {
  double center = 0.0, scale = 1.0;
  if (f.quad_hint) f.quad_hint(theta, 0, center, scale);

  auto integrand = [&](double x) {
    Vec xv(1);
    xv[0] = x;
    const double lp = f.log_density(xv, theta);
    if (!std::isfinite(lp)) return 0.0;
    return std::exp(lp) * fn(x);
  };

  // The absolute floor keeps near-cancelling integrals (zero-mean scores)
  // from chasing an unreachable pure-relative target.
  const double abs_tol = rel_tol;
  const auto& sup = f.support.front();
  switch (sup.kind) {
    case SupportKind::RealLine:
      return integrate_real_line(integrand, center, scale, abs_tol, rel_tol,
                                 budget);
    case SupportKind::PositiveHalfLine:
      return integrate_half_line(integrand, 0.0, scale, abs_tol, rel_tol,
                                 budget);
    case SupportKind::FiniteInterval:
      return integrate_adaptive(integrand, sup.lo, sup.hi, abs_tol, rel_tol,
                                budget);
  }
  throw ValidationError("expect_1d: unknown support kind");
}

void require_converged(const QuadratureResult& r, const std::string& what,
                       long budget) {
  if (!r.converged)
    throw NumericalError(what + ": quadrature did not converge within budget " +
                         std::to_string(budget) +
                         "; achieved error estimate " +
                         std::to_string(r.error));
}

FisherEstimate fisher_quadrature_atomic(const DistributionFamily& f,
                                        const Vec& theta,
                                        const IntegrationScheme& scheme) {
  const int d = f.param_dim;
  FisherEstimate est;
  est.metric = Mat::Zero(d, d);

  // Normalization check; also catches non-normalizable densities.
  const QuadratureResult norm =
      expect_1d(f, theta, [](double) { return 1.0; }, scheme.tolerance,
                scheme.budget);
  est.evals += norm.evals;
  require_converged(norm, f.name + " normalization", scheme.budget);
  if (std::abs(norm.value - 1.0) > 1e-6)
    throw NumericalError(f.name +
                         ": density does not normalize to 1 at this point "
                         "(integral = " +
                         std::to_string(norm.value) + ")");

  double max_err = 0.0;
  for (int a = 0; a < d; ++a)
    for (int b = a; b < d; ++b) {
      auto fn = [&](double x) {
        Vec xv(1);
        xv[0] = x;
        const Vec s = family_score(f, xv, theta);
        return s[a] * s[b];
      };
      const QuadratureResult r =
          expect_1d(f, theta, fn, scheme.tolerance, scheme.budget);
      est.evals += r.evals;
      require_converged(r, f.name + " Fisher entry", scheme.budget);
      est.metric(a, b) = r.value;
      est.metric(b, a) = r.value;
      max_err = std::max(max_err, r.error);
    }
  est.error_estimate = max_err;
  return est;
}

FisherEstimate fisher_monte_carlo(const DistributionFamily& f,
                                  const Vec& theta,
                                  const IntegrationScheme& scheme) {
  if (f.is_product())
    throw ValidationError(
        "fisher_metric: Monte Carlo on products is assembled per component");
  if (!f.sampler)
    throw ValidationError(f.name + ": no sampler available for Monte Carlo");

  const int d = f.param_dim;
  const long n = scheme.budget;
  if (n < 16) throw ValidationError("fisher_metric: budget must be >= 16");

  CounterRng rng(scheme.seed);
  Mat sum = Mat::Zero(d, d);
  Mat sum_sq = Mat::Zero(d, d);

  // Fixed chunking keeps the accumulation order independent of threading.
  for (long i = 0; i < n; ++i) {
    const auto u = rng.uniform_pair(/*stream=*/1, static_cast<uint64_t>(i));
    Vec xv(1);
    xv[0] = f.sampler(theta, u[0], u[1]);
    const Vec s = family_score(f, xv, theta);
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        const double v = s[a] * s[b];
        sum(a, b) += v;
        sum_sq(a, b) += v * v;
      }
  }

  FisherEstimate est;
  est.metric = sum / static_cast<double>(n);
  est.evals = n;
  double max_se = 0.0;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      const double mean = est.metric(a, b);
      const double var =
          std::max(0.0, sum_sq(a, b) / static_cast<double>(n) - mean * mean);
      max_se = std::max(max_se, std::sqrt(var / static_cast<double>(n)));
    }
  est.error_estimate = max_se;
  return est;
}

}  // namespace

Vec family_score(const DistributionFamily& f, const Vec& x, const Vec& theta) {
  if (f.score) return f.score(x, theta);
  Vec g(f.param_dim);
  for (int a = 0; a < f.param_dim; ++a) {
    const double h = 1e-6 * std::max(1.0, std::abs(theta[a]));
    Vec tp = theta, tm = theta;
    tp[a] += h;
    tm[a] -= h;
    g[a] = (f.log_density(x, tp) - f.log_density(x, tm)) / (2.0 * h);
  }
  return g;
}

FisherEstimate fisher_metric(const DistributionFamily& f, const Vec& theta,
                             const IntegrationScheme& scheme) {
  require_params_in_domain(f, theta);
  if (scheme.kind == IntegrationScheme::Kind::AdaptiveQuadrature &&
      scheme.budget < 16)
    throw ValidationError("fisher_metric: budget must be >= 16");

  if (f.is_product()) {
    // Blocks are the components' own Fisher matrices; cross-component
    // entries vanish identically because the components are independent.
    FisherEstimate est;
    est.metric = Mat::Zero(f.param_dim, f.param_dim);
    for (size_t c = 0; c < f.children.size(); ++c) {
      const auto& idx = f.child_param_index[c];
      Vec th(static_cast<Eigen::Index>(idx.size()));
      for (size_t j = 0; j < idx.size(); ++j)
        th[static_cast<Eigen::Index>(j)] = theta[idx[j]];
      IntegrationScheme child_scheme = scheme;
      child_scheme.seed = scheme.seed + 0x9E3779B97F4A7C15ull * (c + 1);
      const FisherEstimate child = fisher_metric(f.children[c], th, child_scheme);
      est.evals += child.evals;
      est.error_estimate = std::max(est.error_estimate, child.error_estimate);
      for (size_t a = 0; a < idx.size(); ++a)
        for (size_t b = 0; b < idx.size(); ++b)
          est.metric(idx[a], idx[b]) =
              child.metric(static_cast<Eigen::Index>(a),
                           static_cast<Eigen::Index>(b));
    }
    return est;
  }

  if (scheme.kind == IntegrationScheme::Kind::MonteCarlo)
    return fisher_monte_carlo(f, theta, scheme);
  return fisher_quadrature_atomic(f, theta, scheme);
}

FamilyDiagnostics validate_family(const DistributionFamily& f,
                                  const Vec& theta,
                                  const IntegrationScheme& scheme) {
  require_params_in_domain(f, theta);
  FamilyDiagnostics diag;

  if (f.is_product()) {
    for (size_t c = 0; c < f.children.size(); ++c) {
      const auto& idx = f.child_param_index[c];
      Vec th(static_cast<Eigen::Index>(idx.size()));
      for (size_t j = 0; j < idx.size(); ++j)
        th[static_cast<Eigen::Index>(j)] = theta[idx[j]];
      const FamilyDiagnostics d = validate_family(f.children[c], th, scheme);
      diag.normalization_defect =
          std::max(diag.normalization_defect, d.normalization_defect);
      diag.max_score_mean = std::max(diag.max_score_mean, d.max_score_mean);
    }
    return diag;
  }

  const QuadratureResult norm =
      expect_1d(f, theta, [](double) { return 1.0; }, scheme.tolerance,
                scheme.budget);
  require_converged(norm, f.name + " normalization", scheme.budget);
  diag.normalization_defect = std::abs(norm.value - 1.0);

  for (int a = 0; a < f.param_dim; ++a) {
    auto fn = [&](double x) {
      Vec xv(1);
      xv[0] = x;
      return family_score(f, xv, theta)[a];
    };
    const QuadratureResult r =
        expect_1d(f, theta, fn, scheme.tolerance, scheme.budget);
    require_converged(r, f.name + " score mean", scheme.budget);
    diag.max_score_mean = std::max(diag.max_score_mean, std::abs(r.value));
  }
  return diag;
}

}  // namespace igac
