#include "igac/config.hpp"

#include <cmath>
#include <sstream>

#include "igac/io.hpp"

namespace igac {
namespace {

class ErrorList {
 public:
  void add(const std::string& path, const std::string& msg) {
    errors_.push_back(path + ": " + msg);
  }
  void check() const {
    if (errors_.empty()) return;
    std::ostringstream os;
    os << "config validation failed:";
    for (const auto& e : errors_) os << "\n  - " << e;
    throw ValidationError(os.str());
  }
  bool empty() const { return errors_.empty(); }

 private:
  std::vector<std::string> errors_;
};

Vec to_vec(const std::vector<double>& v) {
  Vec out(static_cast<Eigen::Index>(v.size()));
  for (size_t i = 0; i < v.size(); ++i)
    out[static_cast<Eigen::Index>(i)] = v[i];
  return out;
}

}  // namespace

ExperimentConfig ExperimentConfig::load_file(const std::string& path) {
  return from_toml(TomlDocument::parse_file(path));
}

ExperimentConfig ExperimentConfig::from_toml(const TomlDocument& doc) {
  ExperimentConfig cfg;
  cfg.source_text = doc.text();
  cfg.source_hash = fnv1a(doc.text());
  ErrorList errors;

  // Globals.
  const double seed_raw = doc.number_or("", "seed", 0.0);
  if (seed_raw < 0 || seed_raw != std::floor(seed_raw))
    errors.add("seed", "must be a nonnegative integer");
  else
    cfg.seed = static_cast<uint64_t>(seed_raw);
  cfg.threads = static_cast<int>(doc.number_or("", "threads", 0.0));
  if (cfg.threads < 0) errors.add("threads", "must be >= 0");

  // [manifold]
  if (!doc.has_section("manifold")) {
    errors.add("[manifold]", "section is required");
  } else {
    try {
      cfg.manifold_name = doc.string("manifold", "name");
    } catch (const ValidationError& e) {
      errors.add("[manifold].name", e.what());
    }
    if (doc.has("manifold", "l"))
      cfg.manifold_params.scalars["l"] = doc.number("manifold", "l");
    if (doc.has("manifold", "omega"))
      cfg.manifold_params.omega = doc.numbers("manifold", "omega");
    // Build eagerly so bad parameters surface as config errors.
    if (!cfg.manifold_name.empty()) {
      try {
        (void)build_manifold(cfg.manifold_name, cfg.manifold_params);
      } catch (const ValidationError& e) {
        errors.add("[manifold]", e.what());
      }
    }
  }

  // [geodesic]
  if (!doc.has_section("geodesic")) {
    errors.add("[geodesic]", "section is required");
  } else {
    try {
      cfg.theta0 = to_vec(doc.numbers("geodesic", "theta0"));
      cfg.theta_dot0 = to_vec(doc.numbers("geodesic", "thetadot0"));
    } catch (const ValidationError& e) {
      errors.add("[geodesic]", e.what());
    }
    cfg.tau_max = doc.number_or("geodesic", "tau_max", 0.0);
    if (!(cfg.tau_max > 0.0))
      errors.add("[geodesic].tau_max", "must be present and > 0");
    cfg.rtol = doc.number_or("geodesic", "rtol", 1e-10);
    cfg.atol = doc.number_or("geodesic", "atol", 1e-12);
    if (!(cfg.rtol > 0.0)) errors.add("[geodesic].rtol", "must be > 0");
    if (!(cfg.atol > 0.0)) errors.add("[geodesic].atol", "must be > 0");
    if (cfg.theta0.size() > 0 && cfg.theta0.size() != cfg.theta_dot0.size())
      errors.add("[geodesic]", "theta0 and thetadot0 lengths differ");
  }

  // [curvature]
  cfg.curvature_enabled = doc.boolean_or("curvature", "enabled",
                                         doc.has_section("curvature"));
  cfg.curvature_samples =
      static_cast<int>(doc.number_or("curvature", "samples", 20.0));
  if (cfg.curvature_enabled && cfg.curvature_samples < 1)
    errors.add("[curvature].samples", "must be >= 1");

  // [jacobi]
  cfg.jacobi_enabled =
      doc.boolean_or("jacobi", "enabled", doc.has_section("jacobi"));
  if (cfg.jacobi_enabled) {
    cfg.jacobi_tau_max = doc.number_or("jacobi", "tau_max", cfg.tau_max);
    if (!(cfg.jacobi_tau_max > 0.0))
      errors.add("[jacobi].tau_max", "must be > 0");
    if (doc.has("jacobi", "window")) {
      const auto w = doc.numbers("jacobi", "window");
      if (w.size() != 2 || !(w[0] < w[1]))
        errors.add("[jacobi].window", "must be [lo, hi] with lo < hi");
      else {
        cfg.jacobi_window_lo = w[0];
        cfg.jacobi_window_hi = w[1];
      }
    } else {
      // Default: the last 60% of the integrated span.
      cfg.jacobi_window_lo = 0.4 * cfg.jacobi_tau_max;
      cfg.jacobi_window_hi = cfg.jacobi_tau_max;
    }
  }

  // [ige]
  cfg.ige_enabled = doc.boolean_or("ige", "enabled", doc.has_section("ige"));
  if (cfg.ige_enabled) {
    cfg.ige_tau_min = doc.number_or("ige", "tau_min", 0.0);
    cfg.ige_tau_max = doc.number_or("ige", "tau_max", cfg.tau_max);
    cfg.ige_grid_points =
        static_cast<int>(doc.number_or("ige", "grid_points", 60.0));
    cfg.ige_budget =
        static_cast<long>(doc.number_or("ige", "budget", 200000.0));
    cfg.ige_rel_tol = doc.number_or("ige", "rel_tol", 1e-6);
    if (!(cfg.ige_rel_tol > 0.0))
      errors.add("[ige].rel_tol", "must be > 0");
    if (!(cfg.ige_tau_min > 0.0))
      errors.add("[ige].tau_min", "must be present and > 0");
    if (!(cfg.ige_tau_max > cfg.ige_tau_min))
      errors.add("[ige].tau_max", "must exceed tau_min");
    if (cfg.ige_grid_points < 10)
      errors.add("[ige].grid_points", "must be >= 10");
    if (cfg.ige_budget < 16) errors.add("[ige].budget", "must be >= 16");
    if (doc.has("ige", "window")) {
      const auto w = doc.numbers("ige", "window");
      if (w.size() != 2 || !(w[0] < w[1]))
        errors.add("[ige].window", "must be [lo, hi] with lo < hi");
      else {
        cfg.ige_window_lo = w[0];
        cfg.ige_window_hi = w[1];
      }
    } else {
      cfg.ige_window_lo = cfg.ige_tau_min + 0.4 * (cfg.ige_tau_max - cfg.ige_tau_min);
      cfg.ige_window_hi = cfg.ige_tau_max;
    }
  }

  // [ensemble]
  cfg.ensemble_enabled = doc.has_section("ensemble");
  if (cfg.ensemble_enabled) {
    cfg.ensemble_l = static_cast<int>(doc.number_or("ensemble", "l", 1.0));
    cfg.ensemble_omega_mean = doc.number_or("ensemble", "omega_mean", 1.0);
    cfg.ensemble_omega_std = doc.number_or("ensemble", "omega_std", 0.0);
    cfg.ensemble_samples =
        static_cast<int>(doc.number_or("ensemble", "samples", 1.0));
    if (cfg.ensemble_l < 1) errors.add("[ensemble].l", "must be >= 1");
    if (!(cfg.ensemble_omega_mean > 0.0))
      errors.add("[ensemble].omega_mean", "must be > 0");
    if (cfg.ensemble_omega_std < 0.0)
      errors.add("[ensemble].omega_std", "must be >= 0");
    if (cfg.ensemble_samples < 1)
      errors.add("[ensemble].samples", "must be >= 1");
    if (cfg.manifold_name != "iho")
      errors.add("[ensemble]", "requires [manifold].name = \"iho\"");
    if (!cfg.ige_enabled)
      errors.add("[ensemble]", "requires an [ige] section");
  }

  // [output]
  cfg.output_dir = doc.string_or("output", "dir", "out");
  if (doc.has("output", "formats")) {
    cfg.emit_csv = false;
    cfg.emit_json = false;
    for (const auto& f : doc.strings("output", "formats")) {
      if (f == "csv")
        cfg.emit_csv = true;
      else if (f == "json")
        cfg.emit_json = true;
      else
        errors.add("[output].formats", "unknown format '" + f + "'");
    }
  }

  errors.check();
  return cfg;
}

}  // namespace igac
