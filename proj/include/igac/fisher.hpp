#pragma once

#include "igac/families.hpp"
#include "igac/types.hpp"

namespace igac {

/// How expectations over the sample space are evaluated.
struct IntegrationScheme {
  enum class Kind { AdaptiveQuadrature, MonteCarlo };
  Kind kind = Kind::AdaptiveQuadrature;
  long budget = 200000;      // function evaluations (quadrature) or samples (MC)
  double tolerance = 1e-9;   // target relative error (quadrature)
  uint64_t seed = 0;         // Monte Carlo substream seed

  static IntegrationScheme quadrature(long budget = 200000,
                                      double tol = 1e-9) {
    return {Kind::AdaptiveQuadrature, budget, tol, 0};
  }
  static IntegrationScheme monte_carlo(long samples, uint64_t seed) {
    return {Kind::MonteCarlo, samples, 0.0, seed};
  }
};

struct FisherEstimate {
  Mat metric;
  double error_estimate = 0.0;  // max per-entry error (quadrature bound or MC standard error)
  long evals = 0;
};

/// Fisher-Rao metric E[score score^T] at theta. Quadrature verifies the
/// density normalization first and fails on non-normalizable input;
/// Monte Carlo draws deterministic counter-based substreams, so the result
/// does not depend on how the work is scheduled.
FisherEstimate fisher_metric(const DistributionFamily& f, const Vec& theta,
                             const IntegrationScheme& scheme = {});

/// Score vector; analytic when available, else central differences with
/// step 1e-6 * max(1, |theta_a|) per parameter.
Vec family_score(const DistributionFamily& f, const Vec& x, const Vec& theta);

struct FamilyDiagnostics {
  double normalization_defect = 0.0;  // |integral p - 1|
  double max_score_mean = 0.0;        // max_a |E[score_a]|
};

/// Quadrature checks of the density normalization and the zero-mean score
/// identity at theta.
FamilyDiagnostics validate_family(const DistributionFamily& f,
                                  const Vec& theta,
                                  const IntegrationScheme& scheme = {});

}  // namespace igac
