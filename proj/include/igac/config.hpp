#pragma once

#include <optional>
#include <string>
#include <vector>

#include "igac/manifold.hpp"
#include "igac/toml.hpp"
#include "igac/types.hpp"

namespace igac {

/// Parsed and validated experiment description (TOML file). Validation
/// collects every problem with its [section].key path before failing.
struct ExperimentConfig {
  // [manifold]
  std::string manifold_name;
  ManifoldParams manifold_params;

  // [geodesic]
  Vec theta0;
  Vec theta_dot0;
  double tau_max = 0.0;
  double rtol = 1e-10;
  double atol = 1e-12;

  // [curvature]
  bool curvature_enabled = false;
  int curvature_samples = 20;

  // [jacobi]
  bool jacobi_enabled = false;
  double jacobi_tau_max = 0.0;
  double jacobi_window_lo = 0.0;
  double jacobi_window_hi = 0.0;

  // [ige]
  bool ige_enabled = false;
  double ige_tau_min = 0.0;
  double ige_tau_max = 0.0;
  int ige_grid_points = 0;
  double ige_window_lo = 0.0;
  double ige_window_hi = 0.0;
  long ige_budget = 200000;
  double ige_rel_tol = 1e-6;

  // [ensemble] (optional; oscillator spectrum runs)
  bool ensemble_enabled = false;
  int ensemble_l = 1;
  double ensemble_omega_mean = 1.0;
  double ensemble_omega_std = 0.0;
  int ensemble_samples = 1;

  // [output]
  std::string output_dir = "out";
  bool emit_csv = true;
  bool emit_json = true;

  uint64_t seed = 0;
  int threads = 0;  // 0 = hardware default

  std::string source_text;
  uint64_t source_hash = 0;

  static ExperimentConfig load_file(const std::string& path);
  static ExperimentConfig from_toml(const TomlDocument& doc);
};

}  // namespace igac
