#include "igac/manifold.hpp"

#include <cmath>
#include <sstream>

namespace igac {
namespace {

int require_positive_integer(const ManifoldParams& p, const std::string& key,
                             const std::string& manifold) {
  auto it = p.scalars.find(key);
  if (it == p.scalars.end())
    throw ValidationError("build_manifold(" + manifold + "): missing parameter '" +
                          key + "'");
  const double v = it->second;
  if (!(v > 0.0) || v != std::floor(v))
    throw ValidationError("build_manifold(" + manifold + "): parameter '" + key +
                          "' must be a positive integer");
  return static_cast<int>(v);
}

void reject_unknown_keys(const ManifoldParams& p,
                         std::initializer_list<std::string> allowed,
                         const std::string& manifold) {
  for (const auto& [key, value] : p.scalars) {
    (void)value;
    bool ok = false;
    for (const auto& a : allowed) ok = ok || key == a;
    if (!ok)
      throw ValidationError("build_manifold(" + manifold +
                            "): unknown parameter '" + key + "'");
  }
}

ManifoldSpec make_gaussian(const ManifoldParams& params) {
  reject_unknown_keys(params, {"l"}, "gaussian");
  if (!params.omega.empty())
    throw ValidationError("build_manifold(gaussian): 'omega' does not apply");
  const int l = require_positive_integer(params, "l", "gaussian");
  const int n = 2 * l;

  ManifoldSpec m;
  m.name = "gaussian";
  m.dim = n;
  m.params = params;

  std::vector<Interval> axes(static_cast<size_t>(n));
  for (int k = 0; k < l; ++k) {
    axes[static_cast<size_t>(k)] = Interval{-kInf, kInf};       // mu_k
    axes[static_cast<size_t>(l + k)] = Interval{0.0, kInf};     // sigma_k
    m.coord_names.push_back("mu_" + std::to_string(k + 1));
  }
  for (int k = 0; k < l; ++k)
    m.coord_names.push_back("sigma_" + std::to_string(k + 1));
  m.domain = DomainBox(std::move(axes));

  m.metric.value = [n, l](const Vec& th) {
    Mat g = Mat::Zero(n, n);
    for (int k = 0; k < l; ++k) {
      const double s2 = th[l + k] * th[l + k];
      g(k, k) = 1.0 / s2;
      g(l + k, l + k) = 2.0 / s2;
    }
    return g;
  };
  m.metric.derivative = [n, l](const Vec& th) {
    Tensor3 d(n);
    for (int k = 0; k < l; ++k) {
      const double s3 = std::pow(th[l + k], 3);
      d(l + k, k, k) = -2.0 / s3;
      d(l + k, l + k, l + k) = -4.0 / s3;
    }
    return d;
  };
  return m;
}

ManifoldSpec make_iho(const ManifoldParams& params) {
  reject_unknown_keys(params, {"l"}, "iho");
  std::vector<double> omega = params.omega;
  if (omega.empty())
    throw ValidationError("build_manifold(iho): missing 'omega' list");
  if (params.scalars.count("l")) {
    const int l = require_positive_integer(params, "l", "iho");
    if (l != static_cast<int>(omega.size()))
      throw ValidationError(
          "build_manifold(iho): 'l' disagrees with the length of 'omega'");
  }
  for (double w : omega)
    if (!(w > 0.0))
      throw ValidationError("build_manifold(iho): every omega_k must be > 0");

  const int n = static_cast<int>(omega.size());
  ManifoldSpec m;
  m.name = "iho";
  m.dim = n;
  m.params = params;
  m.params.omega = omega;
  m.domain = DomainBox::unbounded(n);
  for (int k = 0; k < n; ++k)
    m.coord_names.push_back("theta_" + std::to_string(k + 1));

  // Conformal factor 1 - Phi = 1 + 1/2 sum omega_k^2 theta_k^2, positive on
  // all of R^n, so the chart is global.
  m.metric.value = [n, omega](const Vec& th) {
    double f = 1.0;
    for (int k = 0; k < n; ++k) f += 0.5 * omega[k] * omega[k] * th[k] * th[k];
    return Mat(f * Mat::Identity(n, n));
  };
  m.metric.derivative = [n, omega](const Vec& th) {
    Tensor3 d(n);
    for (int k = 0; k < n; ++k) {
      const double df = omega[k] * omega[k] * th[k];
      for (int i = 0; i < n; ++i) d(k, i, i) = df;
    }
    return d;
  };
  return m;
}

ManifoldSpec make_integrable(const ManifoldParams& params) {
  reject_unknown_keys(params, {}, "integrable");
  if (!params.omega.empty())
    throw ValidationError("build_manifold(integrable): 'omega' does not apply");

  ManifoldSpec m;
  m.name = "integrable";
  m.dim = 2;
  m.params = params;
  m.domain = DomainBox({Interval{0.0, kInf}, Interval{0.0, kInf}});
  m.coord_names = {"mu_A", "mu_B"};
  m.metric.value = [](const Vec& th) {
    Mat g = Mat::Zero(2, 2);
    g(0, 0) = 1.0 / (th[0] * th[0]);
    g(1, 1) = 1.0 / (th[1] * th[1]);
    return g;
  };
  m.metric.derivative = [](const Vec& th) {
    Tensor3 d(2);
    d(0, 0, 0) = -2.0 / std::pow(th[0], 3);
    d(1, 1, 1) = -2.0 / std::pow(th[1], 3);
    return d;
  };
  return m;
}

ManifoldSpec make_chaotic(const ManifoldParams& params) {
  reject_unknown_keys(params, {}, "chaotic");
  if (!params.omega.empty())
    throw ValidationError("build_manifold(chaotic): 'omega' does not apply");

  ManifoldSpec m;
  m.name = "chaotic";
  m.dim = 3;
  m.params = params;
  m.domain = DomainBox(
      {Interval{0.0, kInf}, Interval{-kInf, kInf}, Interval{0.0, kInf}});
  m.coord_names = {"mu_A", "mu_B", "sigma_B"};
  m.metric.value = [](const Vec& th) {
    Mat g = Mat::Zero(3, 3);
    const double s2 = th[2] * th[2];
    g(0, 0) = 4.0 / (th[0] * th[0]);
    g(1, 1) = 1.0 / s2;
    g(2, 2) = 2.0 / s2;
    return g;
  };
  m.metric.derivative = [](const Vec& th) {
    Tensor3 d(3);
    const double s3 = std::pow(th[2], 3);
    d(0, 0, 0) = -8.0 / std::pow(th[0], 3);
    d(2, 1, 1) = -2.0 / s3;
    d(2, 2, 2) = -4.0 / s3;
    return d;
  };
  return m;
}

}  // namespace

ManifoldSpec build_manifold(const std::string& name,
                            const ManifoldParams& params) {
  if (name == "gaussian") return make_gaussian(params);
  if (name == "iho") return make_iho(params);
  if (name == "integrable") return make_integrable(params);
  if (name == "chaotic") return make_chaotic(params);
  throw ValidationError("build_manifold: unknown manifold '" + name +
                        "' (expected gaussian|iho|integrable|chaotic)");
}

void require_in_domain(const ManifoldSpec& m, const Vec& theta) {
  if (theta.size() != m.dim) {
    std::ostringstream os;
    os << m.name << ": point has dimension " << theta.size() << ", expected "
       << m.dim;
    throw DomainError(os.str());
  }
  if (!m.domain.contains(theta, kDomainMargin)) {
    std::ostringstream os;
    os << m.name << ": point (";
    for (int k = 0; k < m.dim; ++k) os << (k ? ", " : "") << theta[k];
    os << ") is outside the coordinate domain";
    throw DomainError(os.str());
  }
}

Mat metric_at(const ManifoldSpec& m, const Vec& theta) {
  require_in_domain(m, theta);
  Mat g = m.metric.value(theta);
  if (g.rows() != m.dim || g.cols() != m.dim)
    throw NumericalError(m.name + ": metric evaluator returned wrong shape");
  const double asym = (g - g.transpose()).cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
  if (asym > 1e-12 * scale)
    throw NumericalError(m.name + ": metric is not symmetric at this point");
  g = 0.5 * (g + g.transpose());
  Eigen::LLT<Mat> llt(g);
  if (llt.info() != Eigen::Success)
    throw NumericalError(m.name +
                         ": metric is not positive definite at this point");
  return g;
}

double volume_element(const ManifoldSpec& m, const Vec& theta) {
  const Mat g = metric_at(m, theta);
  Eigen::LLT<Mat> llt(g);
  double sqrt_det = 1.0;
  for (int i = 0; i < m.dim; ++i) sqrt_det *= llt.matrixL()(i, i);
  return sqrt_det;
}

Tensor3 metric_derivative_at(const ManifoldSpec& m, const Vec& theta,
                             double step_scale) {
  require_in_domain(m, theta);
  if (m.metric.derivative) return m.metric.derivative(theta);

  const int n = m.dim;
  Tensor3 d(n);
  for (int k = 0; k < n; ++k) {
    const double h = step_scale * std::max(1.0, std::abs(theta[k]));
    Vec tp = theta, tm = theta;
    tp[k] += h;
    tm[k] -= h;
    if (!m.domain.contains(tp, kDomainMargin) ||
        !m.domain.contains(tm, kDomainMargin))
      throw DomainError(m.name +
                        ": too close to the boundary for metric derivatives");
    const Mat gp = m.metric.value(tp);
    const Mat gm = m.metric.value(tm);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d(k, i, j) = (gp(i, j) - gm(i, j)) / (2 * h);
  }
  return d;
}

}  // namespace igac
