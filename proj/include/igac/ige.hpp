#pragma once

#include <cstdint>

#include "igac/geodesic.hpp"
#include "igac/manifold.hpp"

namespace igac {

/// Coordinate-aligned bounding box swept by the geodesic over [0, tau'].
/// This is the integration domain of the statistical weight; it grows
/// monotonically with tau'.
struct ExploredRegion {
  Vec lo;
  Vec hi;
  int dim() const { return static_cast<int>(lo.size()); }
};

ExploredRegion explored_region(const GeodesicPath& p, double tau_prime,
                               int scan_points = 2048);

enum class WeightScheme { Auto, Quadrature, MonteCarlo };

struct WeightOptions {
  long budget = 200000;  // evaluations (quadrature) or samples (Monte Carlo)
  WeightScheme scheme = WeightScheme::Auto;  // Auto: quadrature for n <= 3
  double rel_tol = 1e-6;
  uint64_t seed = 0;
  uint64_t stream_base = 0;  // substream offset for nested deterministic use
};

struct WeightEstimate {
  double value = 0.0;
  double error = 0.0;  // quadrature estimate or Monte Carlo standard error
  long evals = 0;
};

/// Statistical weight: integral of sqrt(|det g|) over the region explored
/// up to tau'. A coordinate whose sweep has zero width is an error (the
/// region would have measure zero), reported with the coordinate's name.
WeightEstimate statistical_weight(const ManifoldSpec& m, const GeodesicPath& p,
                                  double tau_prime,
                                  const WeightOptions& opts = {});

/// Integral of sqrt(|det g|) over an explicit box (exposed for cross-checks).
WeightEstimate integrate_volume_over_box(const ManifoldSpec& m,
                                         const ExploredRegion& region,
                                         const WeightOptions& opts = {});

struct IGESeries {
  std::vector<double> tau;
  std::vector<double> weight;      // statistical weight at tau_j
  std::vector<double> weight_err;  // per-point integration error estimate
  std::vector<double> avg_volume;  // V(tau_j), time-averaged weight
  std::vector<double> entropy;     // S(tau_j) = log V(tau_j)
};

/// Evaluates the entropy series on the given parameter grid: the statistical
/// weight on a refined mesh, its running time average V by composite
/// integration, and S = log V. The path must start at parameter 0.
IGESeries ige_series(const ManifoldSpec& m, const GeodesicPath& p,
                     const std::vector<double>& grid,
                     const WeightOptions& opts = {});

enum class GrowthClass { Linear, Logarithmic, Undetermined };

struct GrowthClassification {
  GrowthClass cls = GrowthClass::Undetermined;
  double rate = 0.0;  // slope of the winning model
  double r2_linear = 0.0;
  double r2_log = 0.0;
  double window_lo = 0.0;
  double window_hi = 0.0;
};

/// Fits S = a tau + b and S = c log(tau) + d over the window; a class is
/// declared only when the winner reaches r^2 >= 0.98 and beats the loser
/// by at least 0.01.
GrowthClassification classify_growth(const IGESeries& s, double window_lo,
                                     double window_hi);

const char* to_string(GrowthClass c);

/// Gaussian frequency spectrum for the oscillator ensemble; draws are
/// truncated to omega > 0 by resampling.
struct FrequencySpectrum {
  int l = 1;
  double omega_mean = 1.0;
  double omega_std = 0.0;
  uint64_t seed = 0;
};

std::vector<double> draw_frequencies(const FrequencySpectrum& spec,
                                     uint64_t draw_index);

struct EnsembleResult {
  IGESeries series;  // entropy averaged across draws
  GrowthClassification classification;
  int draws = 0;
  std::vector<double> grid_used;  // possibly shortened by overflow exits
};

/// Ensemble-averaged entropy growth for the oscillator flow: draws
/// frequency vectors, integrates each trajectory, computes the entropy
/// series on the matching conformal manifold, averages S pointwise, and
/// classifies the growth over the window.
EnsembleResult ensemble_ige(const FrequencySpectrum& spec, const Vec& theta0,
                            const Vec& theta_dot0,
                            const std::vector<double>& grid, int samples,
                            double window_lo, double window_hi,
                            const WeightOptions& opts = {},
                            const StepControl& ctrl = {}, int threads = 1);

}  // namespace igac
