#include "igac/runner.hpp"

#include <cmath>
#include <filesystem>

#include "igac/geodesic.hpp"
#include "igac/geometry.hpp"
#include "igac/io.hpp"
#include "igac/jacobi.hpp"
#include "igac/parallel.hpp"
#include "igac/rng.hpp"

namespace igac {
namespace {

// Deterministic in-domain sample points for the curvature summary: jitter
// around the geodesic start, kept well inside the domain.
Vec curvature_sample_point(const ManifoldSpec& m, const Vec& base,
                           const CounterRng& rng, int index) {
  Vec p = base;
  for (int k = 0; k < m.dim; ++k) {
    const double u =
        rng.uniform(static_cast<uint64_t>(k) + 101, static_cast<uint64_t>(index));
    const Interval& ax = m.domain.axis(k);
    if (ax.lo > -kInf && ax.hi == kInf) {
      p[k] = base[k] * std::exp(1.0 * (u - 0.5));  // scale-type coordinate
    } else {
      p[k] = base[k] + (u - 0.5) * 2.0;
    }
  }
  return p;
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out;
  out.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    out.push_back(lo + (hi - lo) * i / (n - 1.0));
  return out;
}

}  // namespace

ChaosReport run_experiment(const ExperimentConfig& cfg,
                           const std::string& output_dir_override) {
  const std::string out_dir =
      output_dir_override.empty() ? cfg.output_dir : output_dir_override;

  const ManifoldSpec manifold =
      build_manifold(cfg.manifold_name, cfg.manifold_params);
  if (cfg.theta0.size() != manifold.dim)
    throw ValidationError("[geodesic].theta0 has dimension " +
                          std::to_string(cfg.theta0.size()) + ", manifold '" +
                          cfg.manifold_name + "' needs " +
                          std::to_string(manifold.dim));

  StepControl ctrl;
  ctrl.rtol = cfg.rtol;
  ctrl.atol = cfg.atol;

  std::optional<CurvatureSummary> curvature;
  std::optional<JacobiSummary> jacobi_summary;
  std::optional<IgeSummary> ige_summary;

  // Curvature summary at deterministic sample points.
  if (cfg.curvature_enabled) {
    CounterRng rng(cfg.seed ^ 0xC0FFEEull);
    CurvatureSummary summary;
    summary.config_hash = cfg.source_hash;
    summary.scalar_min = kInf;
    summary.scalar_max = -kInf;
    for (int i = 0; i < cfg.curvature_samples; ++i) {
      const Vec p = curvature_sample_point(manifold, cfg.theta0, rng, i);
      const double scalar = curvature_tensors(manifold, p).scalar;
      summary.scalar_min = std::min(summary.scalar_min, scalar);
      summary.scalar_max = std::max(summary.scalar_max, scalar);
      ++summary.samples;
    }
    curvature = summary;
  }

  // Geodesic integration with the requested sampling.
  GeodesicPath path;
  {
    GeodesicState s0{0.0, cfg.theta0, cfg.theta_dot0};
    path = integrate_geodesic(manifold, s0, cfg.tau_max, ctrl);
  }

  if (cfg.emit_csv) {
    std::string header = "tau";
    for (int k = 1; k <= manifold.dim; ++k)
      header += ",theta_" + std::to_string(k);
    for (int k = 1; k <= manifold.dim; ++k)
      header += ",thetadot_" + std::to_string(k);
    header += ",norm_drift";
    const std::vector<double> drift = norm_drift(manifold, path);
    std::vector<std::vector<double>> rows;
    rows.reserve(path.samples.size());
    for (size_t i = 0; i < path.samples.size(); ++i) {
      const auto& s = path.samples[i];
      std::vector<double> row{s.tau};
      for (int k = 0; k < manifold.dim; ++k) row.push_back(s.theta[k]);
      for (int k = 0; k < manifold.dim; ++k) row.push_back(s.theta_dot[k]);
      row.push_back(drift[i]);
      rows.push_back(std::move(row));
    }
    write_csv(out_dir + "/geodesic.csv", header, rows);
  }

  // Jacobi stage: standardized pure-spread initial condition J0 = 0,
  // DJ0 = unit normal to the initial velocity.
  if (cfg.jacobi_enabled) {
    GeodesicState s0{0.0, cfg.theta0, cfg.theta_dot0};
    const std::vector<double> grid = linspace(0.0, cfg.jacobi_tau_max, 400);
    GeodesicPath jpath =
        integrate_geodesic(manifold, s0, cfg.jacobi_tau_max, ctrl, grid);
    const Vec dj0 = unit_normal_to(manifold, cfg.theta0, cfg.theta_dot0);
    const JacobiField field =
        integrate_jlc(manifold, jpath, Vec::Zero(manifold.dim), dj0, ctrl);
    const ExponentFit fit = divergence_exponent(field, cfg.jacobi_window_lo,
                                                cfg.jacobi_window_hi);
    jacobi_summary = JacobiSummary{fit, cfg.source_hash};

    if (cfg.emit_csv) {
      std::vector<std::vector<double>> rows;
      for (const auto& s : field.samples)
        rows.push_back({s.tau, s.intensity});
      write_csv(out_dir + "/jacobi.csv", "tau,intensity", rows);
    }
  }

  // IGE stage (plain or ensemble-averaged).
  if (cfg.ige_enabled) {
    const std::vector<double> grid =
        linspace(cfg.ige_tau_min, cfg.ige_tau_max, cfg.ige_grid_points);
    WeightOptions wopts;
    wopts.budget = cfg.ige_budget;
    wopts.seed = cfg.seed;
    wopts.rel_tol = cfg.ige_rel_tol;

    IGESeries series;
    GrowthClassification cls;
    if (cfg.ensemble_enabled) {
      FrequencySpectrum spec;
      spec.l = cfg.ensemble_l;
      spec.omega_mean = cfg.ensemble_omega_mean;
      spec.omega_std = cfg.ensemble_omega_std;
      spec.seed = cfg.seed;
      const EnsembleResult ens = ensemble_ige(
          spec, cfg.theta0, cfg.theta_dot0, grid, cfg.ensemble_samples,
          cfg.ige_window_lo, cfg.ige_window_hi, wopts, ctrl, cfg.threads);
      series = ens.series;
      cls = ens.classification;
    } else {
      GeodesicPath ige_path = path;
      if (path.tau_end() < cfg.ige_tau_max - 1e-12)
        throw ValidationError(
            "[ige].tau_max exceeds the integrated geodesic span (" +
            format_number(path.tau_end()) + ")");
      series = ige_series(manifold, ige_path, grid, wopts);
      cls = classify_growth(series, cfg.ige_window_lo, cfg.ige_window_hi);
    }
    ige_summary = IgeSummary{cls, cfg.source_hash};

    if (cfg.emit_csv) {
      std::vector<std::vector<double>> rows;
      for (size_t j = 0; j < series.tau.size(); ++j)
        rows.push_back({series.tau[j], series.weight[j], series.avg_volume[j],
                        series.entropy[j]});
      write_csv(out_dir + "/ige_series.csv", "tau,weight,V,S", rows);
    }
  }

  const ChaosReport report =
      chaos_report(cfg.manifold_name, curvature, jacobi_summary, ige_summary,
                   cfg.ensemble_enabled, cfg.seed);

  if (cfg.emit_json) {
    write_text_file(out_dir + "/report.json", report_to_json(report));

    JsonWriter manifest;
    manifest.begin_object();
    manifest.field("config_hash", hex64(cfg.source_hash));
    manifest.field("seed", cfg.seed);
    manifest.field("version", std::string(kToolVersion));
    manifest.field("config", cfg.source_text);
    manifest.end_object();
    write_text_file(out_dir + "/run_manifest.json", manifest.str() + "\n");
  }

  return report;
}

}  // namespace igac
