#include <doctest.h>

#include <cmath>

#include "igac/manifold.hpp"
#include "igac/rng.hpp"

using namespace igac;

namespace {

ManifoldParams gauss_params(int l) {
  ManifoldParams p;
  p.scalars["l"] = l;
  return p;
}

ManifoldParams iho_params(std::vector<double> omega) {
  ManifoldParams p;
  p.omega = std::move(omega);
  return p;
}

// Deterministic in-domain points: mean-type coordinates in [-2, 2],
// scale-type in [0.4, 2.5].
Vec random_point(const ManifoldSpec& m, const CounterRng& rng, int index) {
  Vec p(m.dim);
  for (int k = 0; k < m.dim; ++k) {
    const double u = rng.uniform(static_cast<uint64_t>(k), static_cast<uint64_t>(index));
    const Interval& ax = m.domain.axis(k);
    p[k] = (ax.lo > -kInf) ? 0.4 + 2.1 * u : -2.0 + 4.0 * u;
  }
  return p;
}

}  // namespace

TEST_CASE("built-in manifold construction and parameter validation") {
  const ManifoldSpec g1 = build_manifold("gaussian", gauss_params(1));
  CHECK(g1.dim == 2);
  CHECK(g1.domain.axis(0).lo == -kInf);
  CHECK(g1.domain.axis(1).lo == 0.0);

  const ManifoldSpec iho = build_manifold("iho", iho_params({1.0, 2.0}));
  CHECK(iho.dim == 2);

  CHECK(build_manifold("integrable", {}).dim == 2);
  CHECK(build_manifold("chaotic", {}).dim == 3);

  CHECK_THROWS_AS(build_manifold("unknown", {}), ValidationError);
  CHECK_THROWS_AS(build_manifold("gaussian", {}), ValidationError);
  CHECK_THROWS_AS(build_manifold("gaussian", gauss_params(-2)), ValidationError);
  CHECK_THROWS_AS(build_manifold("iho", iho_params({1.0, -1.0})), ValidationError);
  CHECK_THROWS_AS(build_manifold("iho", {}), ValidationError);
}

TEST_CASE("metric values match the closed forms") {
  const ManifoldSpec g1 = build_manifold("gaussian", gauss_params(1));
  Vec p(2);
  p << 0.0, 2.0;
  const Mat g = metric_at(g1, p);
  CHECK(g(0, 0) == doctest::Approx(0.25));
  CHECK(g(1, 1) == doctest::Approx(0.5));
  CHECK(g(0, 1) == 0.0);

  const ManifoldSpec integ = build_manifold("integrable", {});
  Vec q(2);
  q << 1.0, 1.0;
  CHECK(metric_at(integ, q).isApprox(Mat::Identity(2, 2), 1e-14));

  const ManifoldSpec chaos = build_manifold("chaotic", {});
  Vec r(3);
  r << 2.0, 0.0, 1.0;
  const Mat gc = metric_at(chaos, r);
  CHECK(gc(0, 0) == doctest::Approx(1.0));
  CHECK(gc(1, 1) == doctest::Approx(1.0));
  CHECK(gc(2, 2) == doctest::Approx(2.0));

  // iho l=2, omega=(1,2) at theta: conformal factor 1 + (th1^2 + 4 th2^2)/2.
  const ManifoldSpec iho = build_manifold("iho", iho_params({1.0, 2.0}));
  Vec t(2);
  t << 1.0, 1.0;
  const Mat gi = metric_at(iho, t);
  CHECK(gi(0, 0) == doctest::Approx(1.0 + 0.5 * (1.0 + 4.0)));
  CHECK(gi(0, 0) == doctest::Approx(gi(1, 1)));
}

TEST_CASE("volume elements") {
  const ManifoldSpec g1 = build_manifold("gaussian", gauss_params(1));
  Vec p(2);
  p << 0.0, 1.0;
  CHECK(volume_element(g1, p) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

  const ManifoldSpec integ = build_manifold("integrable", {});
  Vec q(2);
  q << 2.0, 3.0;
  CHECK(volume_element(integ, q) == doctest::Approx(1.0 / 6.0).epsilon(1e-12));

  const ManifoldSpec chaos = build_manifold("chaotic", {});
  Vec r(3);
  r << 1.0, 0.0, 1.0;
  CHECK(volume_element(chaos, r) ==
        doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("domain errors: out-of-domain and near-boundary points") {
  const ManifoldSpec g1 = build_manifold("gaussian", gauss_params(1));
  Vec bad(2);
  bad << 0.0, -1.0;
  CHECK_THROWS_AS(metric_at(g1, bad), DomainError);
  bad << 0.0, 0.0;
  CHECK_THROWS_AS(metric_at(g1, bad), DomainError);
  bad << 0.0, 5e-13;  // inside the open interval but within the margin
  CHECK_THROWS_AS(metric_at(g1, bad), DomainError);
  Vec wrong_dim(3);
  wrong_dim << 0.0, 1.0, 1.0;
  CHECK_THROWS_AS(metric_at(g1, wrong_dim), DomainError);
}

TEST_CASE("non-positive-definite custom metric is rejected at evaluation") {
  ManifoldSpec m;
  m.name = "custom-indefinite";
  m.dim = 2;
  m.domain = DomainBox::unbounded(2);
  m.metric.value = [](const Vec&) {
    Mat g(2, 2);
    g << 1.0, 0.0, 0.0, -1.0;
    return g;
  };
  Vec p = Vec::Zero(2);
  CHECK_THROWS_AS(metric_at(m, p), NumericalError);

  m.metric.value = [](const Vec&) {
    Mat g(2, 2);
    g << 1.0, 0.5, -0.5, 1.0;  // asymmetric
    return g;
  };
  CHECK_THROWS_AS(metric_at(m, p), NumericalError);
}

TEST_CASE("analytic metric derivatives agree with finite differences") {
  const CounterRng rng(11);
  for (const char* name : {"gaussian", "iho", "integrable", "chaotic"}) {
    ManifoldSpec m;
    if (std::string(name) == "gaussian")
      m = build_manifold(name, gauss_params(2));
    else if (std::string(name) == "iho")
      m = build_manifold(name, iho_params({0.7, 1.3, 2.1}));
    else
      m = build_manifold(name, {});

    ManifoldSpec numeric = m;
    numeric.metric.derivative = nullptr;  // force the finite-difference path

    for (int trial = 0; trial < 50; ++trial) {
      const Vec p = random_point(m, rng, trial);
      const Tensor3 analytic = metric_derivative_at(m, p);
      const Tensor3 fd = metric_derivative_at(numeric, p, 1e-5);
      double max_rel = 0.0;
      for (int k = 0; k < m.dim; ++k)
        for (int i = 0; i < m.dim; ++i)
          for (int j = 0; j < m.dim; ++j) {
            const double scale = std::max(1.0, std::abs(analytic(k, i, j)));
            max_rel = std::max(max_rel,
                               std::abs(analytic(k, i, j) - fd(k, i, j)) / scale);
          }
      CHECK(max_rel <= 1e-7);
    }
  }
}

TEST_CASE("metric symmetry and positive definiteness at random points") {
  const CounterRng rng(13);
  for (const char* name : {"gaussian", "iho", "integrable", "chaotic"}) {
    ManifoldSpec m;
    if (std::string(name) == "gaussian")
      m = build_manifold(name, gauss_params(3));
    else if (std::string(name) == "iho")
      m = build_manifold(name, iho_params({1.0, 2.0}));
    else
      m = build_manifold(name, {});
    for (int trial = 0; trial < 20; ++trial) {
      const Vec p = random_point(m, rng, trial);
      const Mat g = metric_at(m, p);  // throws if asymmetric or not PD
      CHECK((g - g.transpose()).cwiseAbs().maxCoeff() == 0.0);
      CHECK(volume_element(m, p) > 0.0);
    }
  }
}

TEST_CASE("gaussian metric blocks permute with the degrees of freedom") {
  const ManifoldSpec g3 = build_manifold("gaussian", gauss_params(3));
  Vec p(6);
  p << 0.3, -1.0, 0.7, 0.5, 1.5, 2.5;  // (mu_1..3, sigma_1..3)
  const Mat g = metric_at(g3, p);

  // Swap degrees of freedom 1 and 3.
  Vec q(6);
  q << 0.7, -1.0, 0.3, 2.5, 1.5, 0.5;
  const Mat h = metric_at(g3, q);

  CHECK(g(0, 0) == h(2, 2));
  CHECK(g(3, 3) == h(5, 5));
  CHECK(g(1, 1) == h(1, 1));
  // Per-DOF blocks share the functional form diag(1/s^2, 2/s^2).
  for (int k = 0; k < 3; ++k)
    CHECK(g(3 + k, 3 + k) == doctest::Approx(2.0 * g(k, k)).epsilon(1e-14));
}
