// igac - information-geometry chaos analysis CLI.
//
// Subcommands: fisher, curvature, geodesic, jacobi, ige, report.
// Exit codes: 0 success, 2 validation error, 3 numerical failure.

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include "igac/config.hpp"
#include "igac/fisher.hpp"
#include "igac/geodesic.hpp"
#include "igac/geometry.hpp"
#include "igac/ige.hpp"
#include "igac/io.hpp"
#include "igac/jacobi.hpp"
#include "igac/runner.hpp"

namespace {

using namespace igac;

Vec parse_csv_vector(const std::string& text, char sep = ',') {
  std::vector<double> vals;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (item.empty()) continue;
    vals.push_back(std::stod(item));
  }
  Vec v(static_cast<Eigen::Index>(vals.size()));
  for (size_t i = 0; i < vals.size(); ++i)
    v[static_cast<Eigen::Index>(i)] = vals[i];
  return v;
}

// --params "l=2" or "l=2,omega=1.0;2.0": comma-separated pairs,
// semicolon-separated list values.
ManifoldParams parse_manifold_params(const std::string& text) {
  ManifoldParams p;
  std::stringstream ss(text);
  std::string pair;
  while (std::getline(ss, pair, ',')) {
    if (pair.empty()) continue;
    const size_t eq = pair.find('=');
    if (eq == std::string::npos)
      throw ValidationError("--params: expected key=value, got '" + pair + "'");
    const std::string key = pair.substr(0, eq);
    const std::string value = pair.substr(eq + 1);
    if (key == "omega") {
      const Vec v = parse_csv_vector(value, ';');
      p.omega.assign(v.data(), v.data() + v.size());
    } else {
      p.scalars[key] = std::stod(value);
    }
  }
  return p;
}

// --init "theta=0,1;thetadot=0.7,-0.5"
void parse_init(const std::string& text, Vec& theta, Vec& theta_dot) {
  std::stringstream ss(text);
  std::string field;
  while (std::getline(ss, field, ';')) {
    const size_t eq = field.find('=');
    if (eq == std::string::npos)
      throw ValidationError("--init: expected theta=...;thetadot=...");
    const std::string key = field.substr(0, eq);
    const Vec v = parse_csv_vector(field.substr(eq + 1));
    if (key == "theta")
      theta = v;
    else if (key == "thetadot")
      theta_dot = v;
    else
      throw ValidationError("--init: unknown field '" + key + "'");
  }
  if (theta.size() == 0 || theta_dot.size() == 0)
    throw ValidationError("--init: both theta and thetadot are required");
  if (theta.size() != theta_dot.size())
    throw ValidationError("--init: theta and thetadot lengths differ");
}

void emit(const std::string& text, const std::string& out_dir,
          const std::string& filename) {
  if (out_dir.empty())
    std::cout << text;
  else
    write_text_file(out_dir + "/" + filename, text);
}

int run_fisher(const std::string& family_name, const std::string& theta_csv,
               const std::string& scheme_name, long budget, uint64_t seed,
               const std::string& out_dir) {
  const DistributionFamily family = family_by_name(family_name);
  const Vec theta = parse_csv_vector(theta_csv);

  IntegrationScheme scheme;
  if (scheme_name == "quad")
    scheme = IntegrationScheme::quadrature(budget);
  else if (scheme_name == "mc")
    scheme = IntegrationScheme::monte_carlo(budget, seed);
  else
    throw ValidationError("--scheme must be quad or mc");

  const FisherEstimate est = fisher_metric(family, theta, scheme);

  JsonWriter w;
  w.begin_object();
  w.field("family", family.name);
  std::vector<double> row_major;
  for (int a = 0; a < est.metric.rows(); ++a)
    for (int b = 0; b < est.metric.cols(); ++b)
      row_major.push_back(est.metric(a, b));
  w.field("dim", static_cast<long long>(est.metric.rows()));
  w.field("metric_row_major", row_major);
  w.field("error_estimate", est.error_estimate);
  w.field("evals", static_cast<long long>(est.evals));
  w.field("scheme", scheme_name);
  w.end_object();
  emit(w.str() + "\n", out_dir, "fisher.json");
  return 0;
}

int run_curvature(const std::string& manifold_name, const std::string& params,
                  const std::string& point_csv, const std::string& out_dir) {
  const ManifoldSpec m =
      build_manifold(manifold_name, parse_manifold_params(params));
  const Vec point = parse_csv_vector(point_csv);

  const CurvatureBundle bundle = curvature_tensors(m, point);
  const Mat g = metric_at(m, point);

  // Orthonormalized coordinate-pair planes.
  std::vector<Vec> basis;
  for (int i = 0; i < m.dim; ++i) {
    Vec e = Vec::Zero(m.dim);
    e[i] = 1.0;
    for (const Vec& b : basis) e -= b.dot(g * e) * b;
    basis.push_back(e / std::sqrt(e.dot(g * e)));
  }

  JsonWriter w;
  w.begin_object();
  w.field("manifold", m.name);
  w.field("scalar", bundle.scalar);
  std::vector<double> ricci_row_major;
  for (int a = 0; a < m.dim; ++a)
    for (int b = 0; b < m.dim; ++b) ricci_row_major.push_back(bundle.ricci(a, b));
  w.field("ricci_row_major", ricci_row_major);
  w.begin_object("sectional_by_plane");
  for (int i = 0; i < m.dim; ++i)
    for (int j = i + 1; j < m.dim; ++j) {
      const double k = sectional_curvature(
          bundle, g, TangentPlane{basis[static_cast<size_t>(i)], basis[static_cast<size_t>(j)]});
      w.field(std::to_string(i + 1) + "," + std::to_string(j + 1), k);
    }
  w.end_object();
  w.field("weyl_max_abs", weyl_anisotropy(m, point).max_abs());
  w.end_object();
  emit(w.str() + "\n", out_dir, "curvature.json");
  return 0;
}

int run_geodesic(const std::string& manifold_name, const std::string& params,
                 const std::string& init, double tau_max, double rtol,
                 double atol, const std::string& out_dir) {
  const ManifoldSpec m =
      build_manifold(manifold_name, parse_manifold_params(params));
  Vec theta, theta_dot;
  parse_init(init, theta, theta_dot);

  StepControl ctrl;
  ctrl.rtol = rtol;
  ctrl.atol = atol;
  const GeodesicPath path =
      integrate_geodesic(m, GeodesicState{0.0, theta, theta_dot}, tau_max, ctrl);
  const std::vector<double> drift = norm_drift(m, path);

  std::string header = "tau";
  for (int k = 1; k <= m.dim; ++k) header += ",theta_" + std::to_string(k);
  for (int k = 1; k <= m.dim; ++k) header += ",thetadot_" + std::to_string(k);
  header += ",norm_drift";
  std::vector<std::vector<double>> rows;
  for (size_t i = 0; i < path.samples.size(); ++i) {
    const auto& s = path.samples[i];
    std::vector<double> row{s.tau};
    for (int k = 0; k < m.dim; ++k) row.push_back(s.theta[k]);
    for (int k = 0; k < m.dim; ++k) row.push_back(s.theta_dot[k]);
    row.push_back(drift[i]);
    rows.push_back(std::move(row));
  }
  emit(csv_to_string(header, rows), out_dir, "geodesic.csv");
  if (path.status == PathStatus::BoundaryExit)
    std::cerr << "note: trajectory stopped at the domain boundary (tau = "
              << path.tau_end() << ")\n";
  return 0;
}

int run_jacobi(const std::string& manifold_name, const std::string& params,
               const std::string& init, double tau_max,
               const std::string& window, const std::string& out_dir) {
  const ManifoldSpec m =
      build_manifold(manifold_name, parse_manifold_params(params));
  Vec theta, theta_dot;
  parse_init(init, theta, theta_dot);

  double wlo = 0.4 * tau_max, whi = tau_max;
  if (!window.empty()) {
    const Vec w = parse_csv_vector(window);
    if (w.size() != 2) throw ValidationError("--window must be 'lo,hi'");
    wlo = w[0];
    whi = w[1];
  }

  StepControl ctrl;
  std::vector<double> grid;
  for (int i = 0; i < 400; ++i) grid.push_back(tau_max * i / 399.0);
  const GeodesicPath path = integrate_geodesic(
      m, GeodesicState{0.0, theta, theta_dot}, tau_max, ctrl, grid);
  const Vec dj0 = unit_normal_to(m, theta, theta_dot);
  const JacobiField field =
      integrate_jlc(m, path, Vec::Zero(m.dim), dj0, ctrl);
  const ExponentFit fit = divergence_exponent(field, wlo, whi);

  std::vector<std::vector<double>> rows;
  for (const auto& s : field.samples) rows.push_back({s.tau, s.intensity});
  emit(csv_to_string("tau,intensity", rows), out_dir, "jacobi.csv");

  JsonWriter w;
  w.begin_object();
  w.field("lambda", fit.exponent);
  w.field("raw_slope", fit.raw_slope);
  w.field("intercept", fit.intercept);
  w.field("r2", fit.r2);
  w.field("exponential_model", fit.exponential_model);
  w.field("window", std::vector<double>{fit.window_lo, fit.window_hi});
  w.end_object();
  emit(w.str() + "\n", out_dir, "jacobi_fit.json");
  return 0;
}

int run_ige_cmd(const std::string& config_path, const std::string& out_dir,
                uint64_t seed, bool seed_set, int threads) {
  ExperimentConfig cfg = ExperimentConfig::load_file(config_path);
  if (seed_set) cfg.seed = seed;
  if (threads > 0) cfg.threads = threads;
  if (!cfg.ige_enabled)
    throw ValidationError("config has no [ige] section enabled");
  // Run only the entropy stage (curvature/jacobi toggles off).
  cfg.curvature_enabled = false;
  cfg.jacobi_enabled = false;
  const ChaosReport report = run_experiment(cfg, out_dir);
  std::cout << "ige: " << (report.ige ? to_string(report.ige->cls) : "n/a")
            << " rate="
            << (report.ige ? format_number(report.ige->rate) : "n/a") << "\n";
  return 0;
}

int run_report(const std::string& config_path, const std::string& out_dir,
               uint64_t seed, bool seed_set, int threads) {
  ExperimentConfig cfg = ExperimentConfig::load_file(config_path);
  if (seed_set) cfg.seed = seed;
  if (threads > 0) cfg.threads = threads;
  const ChaosReport report = run_experiment(cfg, out_dir);
  std::cout << "manifold: " << report.manifold << "\n";
  if (report.curvature)
    std::cout << "scalar curvature: [" << format_number(report.curvature->scalar_min)
              << ", " << format_number(report.curvature->scalar_max) << "]\n";
  if (report.jacobi_fit)
    std::cout << "jacobi exponent: " << format_number(report.jacobi_fit->exponent)
              << " (r2 = " << format_number(report.jacobi_fit->r2) << ")\n";
  if (report.ige)
    std::cout << "ige growth: " << to_string(report.ige->cls)
              << " rate = " << format_number(report.ige->rate) << "\n";
  std::cout << "verdict: " << report.verdict << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"igac - geodesic flows, curvature diagnostics, and entropy "
               "growth on statistical manifolds"};
  app.require_subcommand(1);

  std::string out_dir;
  uint64_t seed = 0;
  bool seed_set = false;
  int threads = 0;
  app.add_option("--out", out_dir, "output directory (stdout when omitted)");
  app.add_option("--seed", seed, "random substream seed")
      ->each([&](const std::string&) { seed_set = true; });
  app.add_option("--threads", threads,
                 "worker threads (0 = hardware; IGAC_THREADS as fallback)");

  // fisher
  std::string family = "gaussian", theta_csv, scheme = "quad";
  long budget = 200000;
  auto* fisher = app.add_subcommand("fisher", "Fisher-Rao metric of a family");
  fisher->add_option("--family", family,
                     "gaussian|exponential-spacing|wigner-dyson");
  fisher->add_option("--theta", theta_csv, "parameter point, comma-separated")
      ->required();
  fisher->add_option("--scheme", scheme, "quad|mc");
  fisher->add_option("--budget", budget, "evaluations or samples");

  // curvature
  std::string manifold = "gaussian", params, point_csv;
  auto* curv = app.add_subcommand("curvature", "curvature diagnostics at a point");
  curv->add_option("--manifold", manifold, "gaussian|iho|integrable|chaotic");
  curv->add_option("--params", params, "e.g. l=2 or omega=1.0;2.0");
  curv->add_option("--point", point_csv, "coordinates, comma-separated")
      ->required();

  // geodesic
  std::string init;
  double tau_max = 1.0, rtol = 1e-10, atol = 1e-12;
  auto* geo = app.add_subcommand("geodesic", "integrate a geodesic");
  geo->add_option("--manifold", manifold);
  geo->add_option("--params", params);
  geo->add_option("--init", init, "theta=...;thetadot=...")->required();
  geo->add_option("--tau-max", tau_max)->required();
  geo->add_option("--rtol", rtol);
  geo->add_option("--atol", atol);

  // jacobi
  std::string window;
  auto* jac = app.add_subcommand("jacobi", "geodesic-spread intensity and exponent");
  jac->add_option("--manifold", manifold);
  jac->add_option("--params", params);
  jac->add_option("--init", init, "theta=...;thetadot=...")->required();
  jac->add_option("--tau-max", tau_max)->required();
  jac->add_option("--window", window, "fit window 'lo,hi'");

  // ige
  std::string config_path;
  auto* ige_cmd = app.add_subcommand("ige", "entropy-growth series from a config");
  ige_cmd->add_option("--config", config_path, "TOML experiment file")->required();

  // report
  auto* rep = app.add_subcommand("report", "full experiment with verdict");
  rep->add_option("--config", config_path, "TOML experiment file")->required();

  CLI11_PARSE(app, argc, argv);

  if (threads == 0) {
    if (const char* env = std::getenv("IGAC_THREADS")) threads = std::atoi(env);
  }

  try {
    if (fisher->parsed())
      return run_fisher(family, theta_csv, scheme, budget, seed, out_dir);
    if (curv->parsed())
      return run_curvature(manifold, params, point_csv, out_dir);
    if (geo->parsed())
      return run_geodesic(manifold, params, init, tau_max, rtol, atol, out_dir);
    if (jac->parsed())
      return run_jacobi(manifold, params, init, tau_max, window, out_dir);
    if (ige_cmd->parsed())
      return run_ige_cmd(config_path, out_dir, seed, seed_set, threads);
    if (rep->parsed())
      return run_report(config_path, out_dir, seed, seed_set, threads);
  } catch (const igac::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const igac::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
