#include "igac/ige.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <cstring>

#include "igac/io.hpp"
#include "igac/linefit.hpp"
#include "igac/parallel.hpp"
#include "igac/quadrature.hpp"
#include "igac/rng.hpp"

namespace igac {
namespace {

constexpr double kDegenerateWidth = 1e-14;

std::string coord_label(const ManifoldSpec& m, int k) {
  if (k < static_cast<int>(m.coord_names.size()))
    return m.coord_names[static_cast<size_t>(k)];
  return "coordinate " + std::to_string(k);
}

void require_nondegenerate(const ManifoldSpec& m, const ExploredRegion& r) {
  for (int k = 0; k < r.dim(); ++k) {
    const double width = r.hi[k] - r.lo[k];
    const double scale = std::max({1.0, std::abs(r.lo[k]), std::abs(r.hi[k])});
    if (!(width > kDegenerateWidth * scale)) {
      std::ostringstream os;
      os << "statistical_weight: degenerate sweep in " << coord_label(m, k)
         << " (the geodesic does not move in this coordinate; the explored "
            "region has measure zero)";
      throw NumericalError(os.str());
    }
  }
}

// Shared evaluation budget for the nested quadrature.
struct EvalBudget {
  long remaining;
  double achieved_error = 0.0;
};

// Local power exponent of the profile between two abscissae.
double local_power(double f_a, double f_b, double a, double b) {
  if (!(f_a > 0.0) || !(f_b > 0.0)) return 0.0;
  return std::log(f_b / f_a) / std::log(b / a);
}

// Splits [lo, hi] geometrically wherever the probed local power of the
// profile changes regime (e.g. a conformal factor that is flat below a
// crossover and ~theta^l above it). Each returned segment is close to a
// single power law. Probing uses the true profile with the remaining inner
// coordinates parked at their box midpoints; probe quality affects only
// efficiency, never correctness.
struct AxisSegment {
  double lo, hi;
  double power;
};

void split_axis_segments(const std::function<double(double)>& probe,
                         double lo, double hi, int depth,
                         std::vector<AxisSegment>& out) {
  const double mid = std::sqrt(lo * hi);
  const double f_lo = probe(lo);
  const double f_mid = probe(mid);
  const double f_hi = probe(hi);
  const double p_left = local_power(f_lo, f_mid, lo, mid);
  const double p_right = local_power(f_mid, f_hi, mid, hi);
  if (depth <= 0 || std::abs(p_left - p_right) < 0.5) {
    out.push_back({lo, hi, 0.5 * (p_left + p_right)});
    return;
  }
  split_axis_segments(probe, lo, mid, depth - 1, out);
  split_axis_segments(probe, mid, hi, depth - 1, out);
}

// Nested tensor-product adaptive quadrature of sqrt(det g) over box axes
// [axis..n). Each level integrates one axis; the innermost evaluates the
// volume element. Axes spanning several decades are broken into near-power
// segments and substituted per segment: v = theta^q / q with q = p + 1 (log
// coordinates in the q -> 0 limit). 1/sigma^2 factors and conformal
// theta^l growth become nearly flat, so a handful of panels suffices
// instead of one per decade.
double nested_quadrature(const ManifoldSpec& m, const ExploredRegion& region,
                         Vec& point, int axis, double rel_tol,
                         EvalBudget& budget, double* err_out) {
  const int n = region.dim();
  const double lo = region.lo[axis], hi = region.hi[axis];
  const bool wide_axis = lo > 0.0 && hi / lo > 100.0;

  // Inner levels run much tighter than the requested tolerance: their
  // residual noise feeds the outer error estimator, which (by design)
  // inflates noisy estimates and would otherwise subdivide without profit.
  auto eval_rest = [&](double coordinate) {
    point[axis] = coordinate;
    if (axis + 1 == n) {
      --budget.remaining;
      return volume_element(m, point);
    }
    return nested_quadrature(m, region, point, axis + 1,
                             std::max(rel_tol * 0.05, 1e-12), budget, nullptr);
  };
  if (budget.remaining <= 0)
    throw NumericalError(
        "statistical_weight: budget exhausted before tolerance; achieved "
        "error estimate " +
        std::to_string(budget.achieved_error));
  const long max_evals = std::max<long>(budget.remaining, 15);

  QuadratureResult r;
  if (wide_axis) {
    auto probe = [&](double t) {
      Vec probe_point = point;
      for (int k = axis + 1; k < n; ++k) {
        const double klo = region.lo[k], khi = region.hi[k];
        probe_point[k] = klo > 0.0 ? std::sqrt(klo * khi) : 0.5 * (klo + khi);
      }
      probe_point[axis] = t;
      return volume_element(m, probe_point);
    };
    std::vector<AxisSegment> segments;
    split_axis_segments(probe, lo, hi, 3, segments);

    // Dominant segments first (by probed mass), so later segments can stop
    // against an absolute floor instead of polishing a negligible share of
    // the total to full relative precision.
    std::stable_sort(segments.begin(), segments.end(),
                     [&](const AxisSegment& a, const AxisSegment& b) {
                       return probe(std::sqrt(a.lo * a.hi)) * (a.hi - a.lo) >
                              probe(std::sqrt(b.lo * b.hi)) * (b.hi - b.lo);
                     });

    double total = 0.0, total_err = 0.0;
    for (const AxisSegment& seg : segments) {
      double q = std::clamp(seg.power + 1.0, -6.0,
                            std::min(6.0, 600.0 / std::log(hi)));
      const double abs_floor = 0.25 * rel_tol * total;
      QuadratureResult rs;
      if (std::abs(q) < 0.2) {
        auto slice = [&](double u) {
          const double t = std::exp(u);
          return eval_rest(t) * t;
        };
        rs = integrate_adaptive(slice, std::log(seg.lo), std::log(seg.hi),
                                abs_floor, rel_tol, max_evals);
      } else {
        // v = theta^q / q, dtheta = theta^{1-q} dv; monotone for theta > 0.
        auto slice = [&](double v) {
          const double t = std::exp(std::log(q * v) / q);
          return eval_rest(t) * std::exp((1.0 - q) * std::log(t));
        };
        const double v_lo = std::exp(q * std::log(seg.lo)) / q;
        const double v_hi = std::exp(q * std::log(seg.hi)) / q;
        rs = integrate_adaptive(slice, std::min(v_lo, v_hi),
                                std::max(v_lo, v_hi), abs_floor, rel_tol,
                                max_evals);
      }
      if (!rs.converged) {
        budget.achieved_error = total_err + rs.error;
        throw NumericalError(
            "statistical_weight: budget exhausted before tolerance; achieved "
            "error estimate " +
            std::to_string(budget.achieved_error));
      }
      total += rs.value;
      total_err += rs.error;
    }
    r.value = total;
    r.error = total_err;
    r.converged = true;
  } else {
    r = integrate_adaptive(eval_rest, lo, hi, 0.0, rel_tol, max_evals);
    if (!r.converged) {
      budget.achieved_error = r.error;
      throw NumericalError(
          "statistical_weight: budget exhausted before tolerance; achieved "
          "error estimate " +
          std::to_string(r.error));
    }
  }
  if (err_out) *err_out = r.error;
  return r.value;
}

WeightEstimate weight_by_quadrature(const ManifoldSpec& m,
                                    const ExploredRegion& region,
                                    const WeightOptions& opts) {
  EvalBudget budget{opts.budget};
  Vec point(region.dim());
  double err = 0.0;
  WeightEstimate est;
  est.value =
      nested_quadrature(m, region, point, 0, opts.rel_tol, budget, &err);
  est.error = err;
  est.evals = opts.budget - budget.remaining;
  return est;
}

// Per-axis piecewise-constant importance proposal built from the volume
// element along an axis slice through the box midpoint. Uniform sampling of
// the box is useless here: scale-type coordinates give the integrand a
// dynamic range of many orders of magnitude, so the proposal has to follow
// the per-axis profile.
struct AxisProposal {
  std::vector<double> edges;  // K+1
  std::vector<double> cum;    // cumulative masses, cum.back() = 1
  std::vector<double> density;  // normalized density per bin

  double sample(double u_bin, double u_pos, double* q_out) const {
    const auto it = std::upper_bound(cum.begin(), cum.end(), u_bin);
    size_t b = static_cast<size_t>(it - cum.begin());
    if (b >= density.size()) b = density.size() - 1;
    const double lo = edges[b], hi = edges[b + 1];
    *q_out = density[b];
    return lo + u_pos * (hi - lo);
  }

  double density_at(double x) const {
    const auto it = std::upper_bound(edges.begin(), edges.end(), x);
    size_t b = it == edges.begin() ? 0 : static_cast<size_t>(it - edges.begin()) - 1;
    if (b >= density.size()) b = density.size() - 1;
    return density[b];
  }
};

AxisProposal build_axis_proposal(const ManifoldSpec& m,
                                 const ExploredRegion& region, int axis) {
  constexpr int kBins = 128;
  const double lo = region.lo[axis], hi = region.hi[axis];
  const bool geometric = lo > 0.0 && hi / lo > 50.0;

  AxisProposal prop;
  prop.edges.resize(kBins + 1);
  for (int b = 0; b <= kBins; ++b) {
    const double t = static_cast<double>(b) / kBins;
    prop.edges[static_cast<size_t>(b)] =
        geometric ? lo * std::pow(hi / lo, t) : lo + t * (hi - lo);
  }

  Vec point(region.dim());
  for (int k = 0; k < region.dim(); ++k)
    point[k] = 0.5 * (region.lo[k] + region.hi[k]);

  // 3-point Gauss-Legendre mass per bin; the proposal only needs to track
  // the profile's shape.
  constexpr double gx[3] = {-0.774596669241483, 0.0, 0.774596669241483};
  constexpr double gw[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
  std::vector<double> mass(kBins);
  double total = 0.0;
  for (int b = 0; b < kBins; ++b) {
    const double a = prop.edges[static_cast<size_t>(b)];
    const double c = prop.edges[static_cast<size_t>(b) + 1];
    double s = 0.0;
    for (int i = 0; i < 3; ++i) {
      point[axis] = 0.5 * (a + c) + 0.5 * (c - a) * gx[i];
      s += gw[i] * volume_element(m, point);
    }
    mass[static_cast<size_t>(b)] = s * 0.5 * (c - a);
    total += mass[static_cast<size_t>(b)];
  }

  prop.cum.resize(kBins);
  prop.density.resize(kBins);
  double run = 0.0;
  for (int b = 0; b < kBins; ++b) {
    const double w =
        prop.edges[static_cast<size_t>(b) + 1] - prop.edges[static_cast<size_t>(b)];
    const double frac = total > 0.0
                            ? mass[static_cast<size_t>(b)] / total
                            : w / (region.hi[axis] - region.lo[axis]);
    run += frac;
    prop.cum[static_cast<size_t>(b)] = run;
    prop.density[static_cast<size_t>(b)] = frac / w;
  }
  prop.cum.back() = 1.0;
  return prop;
}

// Importance sampling with a defensive two-component mixture:
//   q = 1/2 prod_k tilted_k(theta_k)
//     + 1/2 (1/n) sum_j tilted_j(theta_j) prod_{k != j} uniform_k(theta_k).
// The product component matches separable volume elements (1/sigma^2
// factors), whose mass sits in the all-coordinates-small corner; the
// one-axis-tilted components match shell-structured conformal integrands,
// whose mass sits where a single coordinate is large. Either way the
// importance weight stays within a bounded factor of the matching
// component, so the standard error does not blow up with the box's dynamic
// range (plain uniform sampling is useless here for exactly that reason).
WeightEstimate weight_by_monte_carlo(const ManifoldSpec& m,
                                     const ExploredRegion& region,
                                     const WeightOptions& opts) {
  const int n = region.dim();
  const long samples = std::max<long>(opts.budget, 16);

  std::vector<AxisProposal> props;
  props.reserve(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) props.push_back(build_axis_proposal(m, region, k));

  auto uniform_density = [&](int k) {
    return 1.0 / (region.hi[k] - region.lo[k]);
  };
  auto mixture_density = [&](const Vec& point,
                             const std::vector<double>& tilted) {
    double prod_all = 1.0;
    for (int k = 0; k < n; ++k) prod_all *= tilted[static_cast<size_t>(k)];
    double shell = 0.0;
    for (int j = 0; j < n; ++j) {
      double term = tilted[static_cast<size_t>(j)];
      for (int k = 0; k < n; ++k)
        if (k != j) term *= uniform_density(k);
      shell += term;
    }
    (void)point;
    return 0.5 * prod_all + 0.5 * shell / n;
  };

  CounterRng rng(opts.seed);
  double sum = 0.0, sum_sq = 0.0;
  Vec point(n);
  std::vector<double> tilted(static_cast<size_t>(n));
  for (long i = 0; i < samples; ++i) {
    // One selector block, then one block per axis; all counter-derived.
    const double select =
        rng.uniform(opts.stream_base * 64 + 63, static_cast<uint64_t>(i));
    const bool product_component = select < 0.5;
    const int shell_axis =
        product_component ? -1
                          : std::min(n - 1, static_cast<int>((select - 0.5) * 2.0 * n));

    for (int k = 0; k < n; ++k) {
      const auto u = rng.uniform_pair(
          opts.stream_base * 64 + static_cast<uint64_t>(k),
          static_cast<uint64_t>(i));
      if (product_component || k == shell_axis) {
        double unused = 0.0;
        point[k] = props[static_cast<size_t>(k)].sample(u[0], u[1], &unused);
      } else {
        point[k] = region.lo[k] + u[0] * (region.hi[k] - region.lo[k]);
      }
      tilted[static_cast<size_t>(k)] =
          props[static_cast<size_t>(k)].density_at(point[k]);
    }

    const double q = mixture_density(point, tilted);
    const double w = volume_element(m, point) / q;
    sum += w;
    sum_sq += w * w;
  }

  WeightEstimate est;
  const double mean = sum / static_cast<double>(samples);
  const double var =
      std::max(0.0, sum_sq / static_cast<double>(samples) - mean * mean);
  est.value = mean;
  est.error = std::sqrt(var / static_cast<double>(samples));
  est.evals = samples;
  return est;
}

// Incrementally grown sweep box over a fixed scan mesh; guarantees
// monotone region growth across increasing tau'.
class RegionTracker {
 public:
  RegionTracker(const GeodesicPath& p, int scan_points)
      : path_(p),
        t0_(p.tau_begin()),
        t1_(p.tau_end()),
        step_((t1_ - t0_) / scan_points) {
    const GeodesicState s = p.samples.front();
    lo_ = s.theta;
    hi_ = s.theta;
    cursor_ = t0_;
  }

  ExploredRegion region_at(double tau_prime) {
    if (tau_prime < cursor_ - 1e-12)
      throw ValidationError("RegionTracker: tau' must be nondecreasing");
    while (cursor_ + step_ <= tau_prime + 1e-15) {
      cursor_ += step_;
      absorb(cursor_);
    }
    absorb(std::min(tau_prime, t1_));
    return ExploredRegion{lo_, hi_};
  }

 private:
  void absorb(double tau) {
    const GeodesicState s = path_.state_at(tau);
    lo_ = lo_.cwiseMin(s.theta);
    hi_ = hi_.cwiseMax(s.theta);
  }

  const GeodesicPath& path_;
  double t0_, t1_, step_, cursor_;
  Vec lo_, hi_;
};

}  // namespace

ExploredRegion explored_region(const GeodesicPath& p, double tau_prime,
                               int scan_points) {
  if (p.samples.empty()) throw ValidationError("explored_region: empty path");
  if (tau_prime < p.tau_begin() - 1e-12 || tau_prime > p.tau_end() + 1e-12)
    throw DomainError("explored_region: tau' outside the path span");
  RegionTracker tracker(p, scan_points);
  return tracker.region_at(std::clamp(tau_prime, p.tau_begin(), p.tau_end()));
}

WeightEstimate integrate_volume_over_box(const ManifoldSpec& m,
                                         const ExploredRegion& region,
                                         const WeightOptions& opts) {
  if (region.dim() != m.dim)
    throw ValidationError("integrate_volume_over_box: dimension mismatch");
  require_nondegenerate(m, region);
  const bool use_quadrature =
      opts.scheme == WeightScheme::Quadrature ||
      (opts.scheme == WeightScheme::Auto && m.dim <= 3);
  return use_quadrature ? weight_by_quadrature(m, region, opts)
                        : weight_by_monte_carlo(m, region, opts);
}

WeightEstimate statistical_weight(const ManifoldSpec& m, const GeodesicPath& p,
                                  double tau_prime, const WeightOptions& opts) {
  const ExploredRegion region = explored_region(p, tau_prime);
  require_nondegenerate(m, region);
  return integrate_volume_over_box(m, region, opts);
}

IGESeries ige_series(const ManifoldSpec& m, const GeodesicPath& p,
                     const std::vector<double>& grid,
                     const WeightOptions& opts) {
  if (grid.size() < 2) throw ValidationError("ige_series: grid too short");
  for (size_t j = 1; j < grid.size(); ++j)
    if (!(grid[j] > grid[j - 1]))
      throw ValidationError("ige_series: grid must be strictly increasing");
  if (std::abs(p.tau_begin()) > 1e-12)
    throw ValidationError("ige_series: path must start at parameter 0");
  if (grid.front() <= 0.0)
    throw ValidationError("ige_series: grid values must be positive");
  if (grid.back() > p.tau_end() + 1e-12)
    throw DomainError("ige_series: grid extends beyond the path span");

  // Refined mesh: grid points plus uniform sub-panels per gap (even count
  // for composite Simpson), anchored at 0.
  const double span = grid.back();
  const double target = span / 300.0;
  std::vector<double> mesh{0.0};
  std::vector<size_t> grid_pos;  // index into mesh of each grid point
  double prev = 0.0;
  for (double gj : grid) {
    const double gap = gj - prev;
    int panels = std::max(4, static_cast<int>(std::ceil(gap / target)));
    if (panels % 2) ++panels;
    for (int i = 1; i <= panels; ++i)
      mesh.push_back(prev + gap * i / panels);
    mesh.back() = gj;
    grid_pos.push_back(mesh.size() - 1);
    prev = gj;
  }

  // Weights on the mesh; W(0) = 0 by the degenerate-box limit.
  RegionTracker tracker(p, 4 * static_cast<int>(mesh.size()));
  std::vector<double> w(mesh.size(), 0.0), werr(mesh.size(), 0.0);
  for (size_t i = 1; i < mesh.size(); ++i) {
    const ExploredRegion region = tracker.region_at(mesh[i]);
    require_nondegenerate(m, region);
    WeightOptions wopts = opts;
    wopts.stream_base = opts.stream_base + i;
    const WeightEstimate est = integrate_volume_over_box(m, region, wopts);
    w[i] = est.value;
    werr[i] = est.error;
  }

  // Running integral by composite Simpson between mesh points (panel counts
  // per gap are even by construction).
  std::vector<double> cum(mesh.size(), 0.0), cum_err(mesh.size(), 0.0);
  size_t seg_start = 0;
  for (size_t gp : grid_pos) {
    double acc = cum[seg_start];
    double acc_err = cum_err[seg_start];
    for (size_t i = seg_start; i + 2 <= gp; i += 2) {
      const double h = mesh[i + 1] - mesh[i];
      acc += h / 3.0 * (w[i] + 4.0 * w[i + 1] + w[i + 2]);
      acc_err += h / 3.0 * (werr[i] + 4.0 * werr[i + 1] + werr[i + 2]);
      cum[i + 2] = acc;
      cum_err[i + 2] = acc_err;
    }
    seg_start = gp;
  }

  IGESeries series;
  for (size_t j = 0; j < grid.size(); ++j) {
    const size_t i = grid_pos[j];
    const double tau = grid[j];
    const double v = cum[i] / tau;
    if (!(v > 0.0))
      throw NumericalError("ige_series: nonpositive averaged volume at tau=" +
                           std::to_string(tau));
    series.tau.push_back(tau);
    series.weight.push_back(w[i]);
    series.weight_err.push_back(werr[i]);
    series.avg_volume.push_back(v);
    series.entropy.push_back(std::log(v));
  }
  return series;
}

GrowthClassification classify_growth(const IGESeries& s, double window_lo,
                                     double window_hi) {
  if (!(window_lo < window_hi))
    throw ValidationError("classify_growth: empty window");

  std::vector<double> taus, logs, entropies;
  for (size_t j = 0; j < s.tau.size(); ++j) {
    if (s.tau[j] < window_lo - 1e-12 || s.tau[j] > window_hi + 1e-12) continue;
    taus.push_back(s.tau[j]);
    logs.push_back(std::log(s.tau[j]));
    entropies.push_back(s.entropy[j]);
  }
  if (taus.size() < 10)
    throw ValidationError(
        "classify_growth: fewer than 10 series points in the window");

  const LineFit lin = fit_line(taus, entropies);
  const LineFit log_fit = fit_line(logs, entropies);

  GrowthClassification cls;
  cls.r2_linear = lin.r2;
  cls.r2_log = log_fit.r2;
  cls.window_lo = window_lo;
  cls.window_hi = window_hi;

  if (lin.r2 >= 0.98 && lin.r2 >= log_fit.r2 + 0.01) {
    cls.cls = GrowthClass::Linear;
    cls.rate = lin.slope;
  } else if (log_fit.r2 >= 0.98 && log_fit.r2 >= lin.r2 + 0.01) {
    cls.cls = GrowthClass::Logarithmic;
    cls.rate = log_fit.slope;
  } else {
    cls.cls = GrowthClass::Undetermined;
    cls.rate = 0.0;
  }
  return cls;
}

const char* to_string(GrowthClass c) {
  switch (c) {
    case GrowthClass::Linear:
      return "LINEAR";
    case GrowthClass::Logarithmic:
      return "LOGARITHMIC";
    case GrowthClass::Undetermined:
      return "UNDETERMINED";
  }
  return "UNDETERMINED";
}

std::vector<double> draw_frequencies(const FrequencySpectrum& spec,
                                     uint64_t draw_index) {
  if (spec.l < 1)
    throw ValidationError("draw_frequencies: l must be positive");
  if (!(spec.omega_mean > 0.0))
    throw ValidationError("draw_frequencies: omega_mean must be positive");
  if (spec.omega_std < 0.0)
    throw ValidationError("draw_frequencies: omega_std must be nonnegative");

  std::vector<double> omega(static_cast<size_t>(spec.l), spec.omega_mean);
  if (spec.omega_std == 0.0) return omega;

  CounterRng rng(spec.seed);
  uint64_t counter = 0;
  for (int k = 0; k < spec.l; ++k) {
    double w;
    do {  // truncate to omega > 0 by resampling
      w = spec.omega_mean +
          spec.omega_std * rng.normal_pair(draw_index, counter++)[0];
    } while (!(w > 0.0));
    omega[static_cast<size_t>(k)] = w;
  }
  return omega;
}

EnsembleResult ensemble_ige(const FrequencySpectrum& spec, const Vec& theta0,
                            const Vec& theta_dot0,
                            const std::vector<double>& grid, int samples,
                            double window_lo, double window_hi,
                            const WeightOptions& opts, const StepControl& ctrl,
                            int threads) {
  if (samples < 1)
    throw ValidationError("ensemble_ige: samples must be >= 1");
  if (theta0.size() != spec.l || theta_dot0.size() != spec.l)
    throw ValidationError("ensemble_ige: initial condition dimension "
                          "disagrees with the spectrum");

  // Integrate every draw first; overflow exits shorten the usable grid.
  std::vector<GeodesicPath> paths(static_cast<size_t>(samples));
  std::vector<std::vector<double>> omegas(static_cast<size_t>(samples));
  parallel_for(samples, threads, [&](int d) {
    omegas[static_cast<size_t>(d)] =
        draw_frequencies(spec, static_cast<uint64_t>(d));
    paths[static_cast<size_t>(d)] =
        iho_trajectories(omegas[static_cast<size_t>(d)], theta0, theta_dot0,
                         grid.back(), ctrl);
  });

  double usable = grid.back();
  for (const auto& p : paths) usable = std::min(usable, p.tau_end());
  std::vector<double> grid_used;
  for (double g : grid)
    if (g <= usable + 1e-12) grid_used.push_back(std::min(g, usable));
  if (grid_used.size() < 10)
    throw NumericalError(
        "ensemble_ige: overflow exits left fewer than 10 usable grid points");

  std::vector<IGESeries> all(static_cast<size_t>(samples));
  parallel_for(samples, threads, [&](int d) {
    ManifoldParams params;
    params.omega = omegas[static_cast<size_t>(d)];
    const ManifoldSpec m = build_manifold("iho", params);
    WeightOptions wopts = opts;
    // Ensemble averaging tolerates Monte Carlo noise in each entropy value
    // and needs thousands of weight evaluations per draw; the conformal
    // integrand is also the worst case for the nested quadrature. Default
    // to the mixture-importance sampler unless the caller pinned a scheme.
    if (opts.scheme == WeightScheme::Auto)
      wopts.scheme = WeightScheme::MonteCarlo;
    // Substreams are keyed by the drawn frequencies, not the draw index:
    // identical draws (zero spread) then produce identical series, and the
    // ensemble average is independent of the sample count.
    std::string key;
    key.resize(omegas[static_cast<size_t>(d)].size() * sizeof(double));
    std::memcpy(key.data(), omegas[static_cast<size_t>(d)].data(), key.size());
    wopts.stream_base = opts.stream_base + fnv1a(key);
    all[static_cast<size_t>(d)] =
        ige_series(m, paths[static_cast<size_t>(d)], grid_used, wopts);
  });

  EnsembleResult res;
  res.draws = samples;
  res.grid_used = grid_used;
  res.series.tau = grid_used;
  const size_t npts = grid_used.size();
  res.series.weight.assign(npts, 0.0);
  res.series.weight_err.assign(npts, 0.0);
  res.series.avg_volume.assign(npts, 0.0);
  res.series.entropy.assign(npts, 0.0);
  for (int d = 0; d < samples; ++d) {  // deterministic draw-index order
    const IGESeries& s = all[static_cast<size_t>(d)];
    for (size_t j = 0; j < npts; ++j) {
      res.series.weight[j] += s.weight[j] / samples;
      res.series.weight_err[j] += s.weight_err[j] / samples;
      res.series.avg_volume[j] += s.avg_volume[j] / samples;
      res.series.entropy[j] += s.entropy[j] / samples;
    }
  }

  const double hi = std::min(window_hi, grid_used.back());
  res.classification = classify_growth(res.series, window_lo, hi);
  return res;
}

}  // namespace igac
