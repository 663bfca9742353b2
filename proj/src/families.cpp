#include "igac/families.hpp"

#include <cmath>
#include <numeric>

namespace igac {

void require_sample_in_support(const DistributionFamily& f, const Vec& x) {
  if (x.size() != f.sample_dim)
    throw ValidationError(f.name + ": sample dimension mismatch");
  for (int k = 0; k < f.sample_dim; ++k)
    if (!f.support[static_cast<size_t>(k)].contains(x[k]))
      throw DomainError(f.name + ": sample coordinate " + std::to_string(k) +
                        " outside the support");
}

void require_params_in_domain(const DistributionFamily& f, const Vec& theta) {
  if (theta.size() != f.param_dim)
    throw ValidationError(f.name + ": parameter dimension mismatch");
  if (!f.param_domain.contains(theta, 1e-12))
    throw DomainError(f.name + ": parameters outside the family domain");
}

DistributionFamily gaussian_1d() {
  DistributionFamily f;
  f.name = "gaussian";
  f.param_dim = 2;
  f.sample_dim = 1;
  f.support = {SampleSupport{SupportKind::RealLine, -kInf, kInf}};
  f.param_domain = DomainBox({Interval{-kInf, kInf}, Interval{0.0, kInf}});
  f.log_density = [](const Vec& x, const Vec& th) {
    const double z = (x[0] - th[0]) / th[1];
    return -0.5 * std::log(2.0 * M_PI) - std::log(th[1]) - 0.5 * z * z;
  };
  f.score = [](const Vec& x, const Vec& th) {
    const double d = x[0] - th[0];
    const double s = th[1];
    Vec g(2);
    g[0] = d / (s * s);
    g[1] = -1.0 / s + d * d / (s * s * s);
    return g;
  };
  f.sampler = [](const Vec& th, double u1, double u2) {
    const double z =
        std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    return th[0] + th[1] * z;
  };
  f.quad_hint = [](const Vec& th, int, double& center, double& scale) {
    center = th[0];
    scale = th[1];
  };
  return f;
}

DistributionFamily exponential_spacing() {
  DistributionFamily f;
  f.name = "exponential-spacing";
  f.param_dim = 1;
  f.sample_dim = 1;
  f.support = {SampleSupport{SupportKind::PositiveHalfLine, 0.0, kInf}};
  f.param_domain = DomainBox({Interval{0.0, kInf}});
  f.log_density = [](const Vec& x, const Vec& th) {
    return -std::log(th[0]) - x[0] / th[0];
  };
  f.score = [](const Vec& x, const Vec& th) {
    const double mu = th[0];
    Vec g(1);
    g[0] = -1.0 / mu + x[0] / (mu * mu);
    return g;
  };
  f.sampler = [](const Vec& th, double u1, double) {
    return -th[0] * std::log1p(-u1);
  };
  f.quad_hint = [](const Vec& th, int, double& center, double& scale) {
    center = 0.0;
    scale = th[0];
  };
  return f;
}

DistributionFamily wigner_dyson_spacing() {
  DistributionFamily f;
  f.name = "wigner-dyson";
  f.param_dim = 1;
  f.sample_dim = 1;
  f.support = {SampleSupport{SupportKind::PositiveHalfLine, 0.0, kInf}};
  f.param_domain = DomainBox({Interval{0.0, kInf}});
  f.log_density = [](const Vec& x, const Vec& th) {
    const double mu = th[0];
    return std::log(M_PI * x[0] / (2.0 * mu * mu)) -
           M_PI * x[0] * x[0] / (4.0 * mu * mu);
  };
  f.score = [](const Vec& x, const Vec& th) {
    const double mu = th[0];
    Vec g(1);
    g[0] = -2.0 / mu + M_PI * x[0] * x[0] / (2.0 * mu * mu * mu);
    return g;
  };
  f.sampler = [](const Vec& th, double u1, double) {
    // Inverse CDF of the surmise: F(s) = 1 - exp(-pi s^2 / 4 mu^2).
    return 2.0 * th[0] * std::sqrt(-std::log1p(-u1) / M_PI);
  };
  f.quad_hint = [](const Vec& th, int, double& center, double& scale) {
    center = 0.0;
    scale = th[0];
  };
  return f;
}

DistributionFamily family_by_name(const std::string& name) {
  if (name == "gaussian") return gaussian_1d();
  if (name == "exponential-spacing") return exponential_spacing();
  if (name == "wigner-dyson") return wigner_dyson_spacing();
  throw ValidationError("unknown distribution family '" + name +
                        "' (expected gaussian|exponential-spacing|wigner-dyson)");
}

DistributionFamily compose_product(std::vector<DistributionFamily> families) {
  if (families.empty())
    throw ValidationError("compose_product: empty family list");

  for (const auto& c : families)
    if (c.sample_dim != 1)
      throw ValidationError(
          "compose_product: components must be univariate in the sample");

  const int count = static_cast<int>(families.size());
  bool uniform = true;
  for (const auto& c : families)
    uniform = uniform && c.param_dim == families.front().param_dim;

  DistributionFamily prod;
  prod.name = "product(";
  for (int c = 0; c < count; ++c)
    prod.name += (c ? "," : "") + families[static_cast<size_t>(c)].name;
  prod.name += ")";
  prod.sample_dim = count;
  prod.param_dim = 0;
  for (const auto& c : families) prod.param_dim += c.param_dim;

  // Parameter layout: grouped by parameter position for homogeneous
  // products (mu_1..mu_c, sigma_1..sigma_c, ...), plain concatenation
  // otherwise.
  prod.child_param_index.resize(families.size());
  if (uniform) {
    const int d = families.front().param_dim;
    for (int c = 0; c < count; ++c)
      for (int j = 0; j < d; ++j)
        prod.child_param_index[static_cast<size_t>(c)].push_back(j * count + c);
  } else {
    int offset = 0;
    for (int c = 0; c < count; ++c) {
      for (int j = 0; j < families[static_cast<size_t>(c)].param_dim; ++j)
        prod.child_param_index[static_cast<size_t>(c)].push_back(offset + j);
      offset += families[static_cast<size_t>(c)].param_dim;
    }
  }

  std::vector<Interval> axes(static_cast<size_t>(prod.param_dim));
  for (int c = 0; c < count; ++c) {
    const auto& child = families[static_cast<size_t>(c)];
    prod.support.push_back(child.support.front());
    for (int j = 0; j < child.param_dim; ++j)
      axes[static_cast<size_t>(prod.child_param_index[static_cast<size_t>(c)][static_cast<size_t>(j)])] =
          child.param_domain.axis(j);
  }
  prod.param_domain = DomainBox(std::move(axes));
  prod.children = std::move(families);

  // Evaluators route each sample/parameter slice to its component.
  auto child_theta = [](const DistributionFamily& p, int c, const Vec& theta) {
    const auto& idx = p.child_param_index[static_cast<size_t>(c)];
    Vec th(static_cast<Eigen::Index>(idx.size()));
    for (size_t j = 0; j < idx.size(); ++j)
      th[static_cast<Eigen::Index>(j)] = theta[idx[j]];
    return th;
  };

  prod.log_density = [child_theta, p = prod](const Vec& x, const Vec& theta) {
    double sum = 0.0;
    for (size_t c = 0; c < p.children.size(); ++c) {
      Vec xc(1);
      xc[0] = x[static_cast<Eigen::Index>(c)];
      sum += p.children[c].log_density(
          xc, child_theta(p, static_cast<int>(c), theta));
    }
    return sum;
  };

  bool all_scores = true;
  for (const auto& c : prod.children) all_scores = all_scores && bool(c.score);
  if (all_scores) {
    prod.score = [child_theta, p = prod](const Vec& x, const Vec& theta) {
      Vec g = Vec::Zero(p.param_dim);
      for (size_t c = 0; c < p.children.size(); ++c) {
        Vec xc(1);
        xc[0] = x[static_cast<Eigen::Index>(c)];
        const Vec gc = p.children[c].score(
            xc, child_theta(p, static_cast<int>(c), theta));
        const auto& idx = p.child_param_index[c];
        for (size_t j = 0; j < idx.size(); ++j)
          g[idx[j]] = gc[static_cast<Eigen::Index>(j)];
      }
      return g;
    };
  }
  return prod;
}

double family_log_density(const DistributionFamily& f, const Vec& x,
                          const Vec& theta) {
  require_sample_in_support(f, x);
  require_params_in_domain(f, theta);
  const double v = f.log_density(x, theta);
  if (!std::isfinite(v))
    throw NumericalError(f.name + ": log-density not finite at this point");
  return v;
}

}  // namespace igac
