#include <doctest.h>

#include <cmath>

#include "igac/fisher.hpp"
#include "igac/quadrature.hpp"
#include "igac/rng.hpp"

using namespace igac;

namespace {

Vec vec2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

Vec vec1(double a) {
  Vec v(1);
  v << a;
  return v;
}

// Independent oracle: -E[d^2 log p / dtheta_a dtheta_b] by nested central
// differences of the log-density under quadrature.
Mat neg_expected_hessian(const DistributionFamily& f, const Vec& theta) {
  const int d = f.param_dim;
  Mat h = Mat::Zero(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      const double ha = 5e-5 * std::max(1.0, std::abs(theta[a]));
      const double hb = 5e-5 * std::max(1.0, std::abs(theta[b]));
      auto expect = [&](const Vec& th) {
        double center = 0.0, scale = 1.0;
        if (f.quad_hint) f.quad_hint(theta, 0, center, scale);
        auto integrand = [&](double x) {
          Vec xv(1);
          xv[0] = x;
          // Density at the reference theta; differentiate only log p.
          return std::exp(f.log_density(xv, theta)) * f.log_density(xv, th);
        };
        QuadratureResult r;
        if (f.support.front().kind == SupportKind::RealLine)
          r = integrate_real_line(integrand, center, scale, 1e-11, 1e-11,
                                  400000);
        else
          r = integrate_half_line(integrand, 0.0, scale, 1e-11, 1e-11, 400000);
        REQUIRE(r.converged);
        return r.value;
      };
      Vec tpp = theta, tpm = theta, tmp = theta, tmm = theta;
      tpp[a] += ha; tpp[b] += hb;
      tpm[a] += ha; tpm[b] -= hb;
      tmp[a] -= ha; tmp[b] += hb;
      tmm[a] -= ha; tmm[b] -= hb;
      h(a, b) = -(expect(tpp) - expect(tpm) - expect(tmp) + expect(tmm)) /
                (4.0 * ha * hb);
    }
  return h;
}

}  // namespace

TEST_CASE("log densities match the closed forms") {
  const DistributionFamily g = gaussian_1d();
  CHECK(family_log_density(g, vec1(0.0), vec2(0.0, 1.0)) ==
        doctest::Approx(-0.5 * std::log(2.0 * M_PI)).epsilon(1e-12));
  CHECK(family_log_density(g, vec1(0.0), vec2(0.0, 1.0)) ==
        doctest::Approx(-0.918939).epsilon(1e-6));

  const DistributionFamily e = exponential_spacing();
  CHECK(family_log_density(e, vec1(2.0), vec1(2.0)) ==
        doctest::Approx(std::log(0.5) - 1.0).epsilon(1e-12));
  CHECK(family_log_density(e, vec1(2.0), vec1(2.0)) ==
        doctest::Approx(-1.693147).epsilon(1e-6));

  const DistributionFamily w = wigner_dyson_spacing();
  CHECK(family_log_density(w, vec1(1.0), vec1(1.0)) ==
        doctest::Approx(std::log(M_PI / 2.0) - M_PI / 4.0).epsilon(1e-12));

  CHECK_THROWS_AS(family_log_density(e, vec1(-1.0), vec1(2.0)), DomainError);
  CHECK_THROWS_AS(family_log_density(g, vec1(0.0), vec2(0.0, -1.0)),
                  DomainError);
}

TEST_CASE("fisher metric by quadrature reproduces the closed forms") {
  const IntegrationScheme quad = IntegrationScheme::quadrature(400000, 1e-10);

  const FisherEstimate g =
      fisher_metric(gaussian_1d(), vec2(0.0, 1.0), quad);
  CHECK(g.metric(0, 0) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(g.metric(1, 1) == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(std::abs(g.metric(0, 1)) <= 1e-8);

  const FisherEstimate e =
      fisher_metric(exponential_spacing(), vec1(2.0), quad);
  CHECK(e.metric(0, 0) == doctest::Approx(0.25).epsilon(1e-8));

  const FisherEstimate w =
      fisher_metric(wigner_dyson_spacing(), vec1(1.0), quad);
  CHECK(w.metric(0, 0) == doctest::Approx(4.0).epsilon(1e-7));
}

TEST_CASE("zero-mean score and normalization at random parameter points") {
  const CounterRng rng(41);
  const IntegrationScheme quad = IntegrationScheme::quadrature(400000, 1e-9);
  int idx = 0;
  for (const auto& family :
       {gaussian_1d(), exponential_spacing(), wigner_dyson_spacing()}) {
    for (int trial = 0; trial < 10; ++trial) {
      Vec theta(family.param_dim);
      for (int a = 0; a < family.param_dim; ++a) {
        const double u = rng.uniform(static_cast<uint64_t>(idx++), static_cast<uint64_t>(trial));
        theta[a] = (family.param_domain.axis(a).lo > -kInf) ? 0.5 + 2.0 * u
                                                            : 2.0 * (u - 0.5);
      }
      const FamilyDiagnostics diag = validate_family(family, theta, quad);
      CHECK(diag.normalization_defect <= 1e-8);
      CHECK(diag.max_score_mean <= 1e-6);
    }
  }
}

TEST_CASE("score outer product equals minus the expected hessian") {
  const IntegrationScheme quad = IntegrationScheme::quadrature(400000, 1e-10);
  for (const auto& [family, theta] :
       std::vector<std::pair<DistributionFamily, Vec>>{
           {gaussian_1d(), vec2(0.3, 1.4)},
           {exponential_spacing(), vec1(1.7)},
           {wigner_dyson_spacing(), vec1(0.9)}}) {
    const Mat outer = fisher_metric(family, theta, quad).metric;
    const Mat hess = neg_expected_hessian(family, theta);
    for (int a = 0; a < family.param_dim; ++a)
      for (int b = 0; b < family.param_dim; ++b)
        CHECK(outer(a, b) ==
              doctest::Approx(hess(a, b)).epsilon(1e-4).scale(1.0));
  }
}

TEST_CASE("monte carlo agrees with quadrature within 3 standard errors") {
  const IntegrationScheme quad = IntegrationScheme::quadrature(400000, 1e-10);
  const IntegrationScheme mc = IntegrationScheme::monte_carlo(1000000, 777);
  for (const auto& [family, theta] :
       std::vector<std::pair<DistributionFamily, Vec>>{
           {gaussian_1d(), vec2(0.0, 1.0)},
           {exponential_spacing(), vec1(2.0)},
           {wigner_dyson_spacing(), vec1(1.0)}}) {
    const FisherEstimate q = fisher_metric(family, theta, quad);
    const FisherEstimate m = fisher_metric(family, theta, mc);
    for (int a = 0; a < family.param_dim; ++a)
      for (int b = 0; b < family.param_dim; ++b)
        CHECK(std::abs(q.metric(a, b) - m.metric(a, b)) <=
              3.0 * std::max(m.error_estimate, 1e-12) + q.error_estimate);
  }
}

TEST_CASE("monte carlo fisher is deterministic for a fixed seed") {
  const IntegrationScheme mc = IntegrationScheme::monte_carlo(20000, 99);
  const Mat a = fisher_metric(gaussian_1d(), vec2(0.1, 1.2), mc).metric;
  const Mat b = fisher_metric(gaussian_1d(), vec2(0.1, 1.2), mc).metric;
  CHECK(a == b);
}

TEST_CASE("compose_product: layouts and block structure") {
  // Homogeneous gaussian product groups parameters by position.
  const DistributionFamily gg = compose_product({gaussian_1d(), gaussian_1d()});
  CHECK(gg.param_dim == 4);
  Vec th(4);
  th << 0.0, 0.0, 1.0, 1.0;  // (mu_1, mu_2, sigma_1, sigma_2)
  const Mat m = fisher_metric(gg, th, IntegrationScheme::quadrature()).metric;
  CHECK(m(0, 0) == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(m(1, 1) == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(m(2, 2) == doctest::Approx(2.0).epsilon(1e-7));
  CHECK(m(3, 3) == doctest::Approx(2.0).epsilon(1e-7));
  // Cross-component entries vanish identically.
  CHECK(m(0, 1) == 0.0);
  CHECK(m(0, 3) == 0.0);
  CHECK(m(2, 1) == 0.0);
  CHECK(m(2, 3) == 0.0);

  // Two exponential components at unit means give the identity.
  const DistributionFamily ee =
      compose_product({exponential_spacing(), exponential_spacing()});
  Vec one2(2);
  one2 << 1.0, 1.0;
  CHECK(fisher_metric(ee, one2, IntegrationScheme::quadrature())
            .metric.isApprox(Mat::Identity(2, 2), 1e-7));

  // Mixed product concatenates: (mu_A', mu_B, sigma_B) -> diag(4, 1, 2).
  const DistributionFamily wg =
      compose_product({wigner_dyson_spacing(), gaussian_1d()});
  CHECK(wg.param_dim == 3);
  Vec th3(3);
  th3 << 1.0, 0.0, 1.0;
  const Mat m3 = fisher_metric(wg, th3, IntegrationScheme::quadrature()).metric;
  CHECK(m3(0, 0) == doctest::Approx(4.0).epsilon(1e-6));
  CHECK(m3(1, 1) == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(m3(2, 2) == doctest::Approx(2.0).epsilon(1e-7));
  CHECK(m3(0, 1) == 0.0);
  CHECK(m3(0, 2) == 0.0);

  CHECK_THROWS_AS(compose_product({}), ValidationError);
}

TEST_CASE("product log density sums the component terms") {
  const DistributionFamily wg =
      compose_product({wigner_dyson_spacing(), gaussian_1d()});
  Vec x(2), th(3);
  x << 1.0, 0.0;
  th << 1.0, 0.0, 1.0;
  const double expected = (std::log(M_PI / 2.0) - M_PI / 4.0) +
                          (-0.5 * std::log(2.0 * M_PI));
  CHECK(family_log_density(wg, x, th) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("finite-difference score fallback matches the analytic score") {
  DistributionFamily g = gaussian_1d();
  const Vec theta = vec2(0.4, 1.3);
  const Vec x = vec1(0.9);
  const Vec analytic = family_score(g, x, theta);
  g.score = nullptr;
  const Vec fd = family_score(g, x, theta);
  CHECK((analytic - fd).cwiseAbs().maxCoeff() <= 1e-7);
}

TEST_CASE("non-normalizable densities and tiny budgets are rejected") {
  DistributionFamily broken = exponential_spacing();
  broken.name = "broken";
  // Forgets the 1/mu normalization: integrates to mu, not 1.
  broken.log_density = [](const Vec& x, const Vec& th) {
    return -x[0] / th[0];
  };
  broken.score = nullptr;
  CHECK_THROWS_AS(
      fisher_metric(broken, vec1(2.0), IntegrationScheme::quadrature()),
      NumericalError);

  CHECK_THROWS_AS(
      fisher_metric(gaussian_1d(), vec2(0.0, 1.0),
                    IntegrationScheme{IntegrationScheme::Kind::AdaptiveQuadrature, 8, 1e-9, 0}),
      ValidationError);
}
