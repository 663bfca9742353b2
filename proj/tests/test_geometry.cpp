#include <doctest.h>

#include <cmath>

#include "igac/geometry.hpp"
#include "igac/rng.hpp"

using namespace igac;

namespace {

ManifoldParams gauss_params(int l) {
  ManifoldParams p;
  p.scalars["l"] = l;
  return p;
}

ManifoldSpec by_name(const std::string& name) {
  if (name == "gaussian2") return build_manifold("gaussian", gauss_params(2));
  if (name == "gaussian") return build_manifold("gaussian", gauss_params(1));
  if (name == "iho") {
    ManifoldParams p;
    p.omega = {1.0, 2.0};
    return build_manifold("iho", p);
  }
  return build_manifold(name, {});
}

Vec random_point(const ManifoldSpec& m, const CounterRng& rng, int index) {
  Vec p(m.dim);
  for (int k = 0; k < m.dim; ++k) {
    const double u = rng.uniform(static_cast<uint64_t>(k), static_cast<uint64_t>(index));
    const Interval& ax = m.domain.axis(k);
    p[k] = (ax.lo > -kInf) ? 0.5 + 2.0 * u : -2.0 + 4.0 * u;
  }
  return p;
}

// Independent oracle: Christoffel symbols assembled directly from
// finite-differenced metric values, no shared code with the engine.
Tensor3 christoffel_oracle(const ManifoldSpec& m, const Vec& theta, double h) {
  const int n = m.dim;
  const Mat g = m.metric.value(theta);
  const Mat ginv = g.inverse();
  Tensor3 dg(n);
  for (int k = 0; k < n; ++k) {
    Vec tp = theta, tm = theta;
    tp[k] += h;
    tm[k] -= h;
    const Mat gp = m.metric.value(tp);
    const Mat gm = m.metric.value(tm);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) dg(k, i, j) = (gp(i, j) - gm(i, j)) / (2 * h);
  }
  Tensor3 gamma(n);
  for (int r = 0; r < n; ++r)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int l = 0; l < n; ++l)
          s += ginv(r, l) * (dg(i, l, j) + dg(j, l, i) - dg(l, i, j));
        gamma(r, i, j) = 0.5 * s;
      }
  return gamma;
}

}  // namespace

TEST_CASE("christoffel symbols: gaussian closed form at (0,1)") {
  const ManifoldSpec m = by_name("gaussian");
  Vec p(2);
  p << 0.0, 1.0;
  const Tensor3 gamma = christoffel(m, p);
  // mu = index 0, sigma = index 1.
  CHECK(gamma(0, 0, 1) == doctest::Approx(-1.0).epsilon(1e-10));
  CHECK(gamma(0, 1, 0) == doctest::Approx(-1.0).epsilon(1e-10));
  CHECK(gamma(1, 0, 0) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(gamma(1, 1, 1) == doctest::Approx(-1.0).epsilon(1e-10));
  CHECK(gamma(0, 0, 0) == doctest::Approx(0.0));
  CHECK(gamma(1, 0, 1) == doctest::Approx(0.0));
}

TEST_CASE("christoffel symbols: flat constant metric and integrable case") {
  ManifoldSpec flat;
  flat.name = "euclidean";
  flat.dim = 2;
  flat.domain = DomainBox::unbounded(2);
  flat.metric.value = [](const Vec&) { return Mat(Mat::Identity(2, 2)); };
  Vec p(2);
  p << 0.3, -4.0;
  CHECK(christoffel(flat, p).max_abs() == doctest::Approx(0.0).epsilon(1e-12));

  const ManifoldSpec integ = by_name("integrable");
  Vec q(2);
  q << 1.0, 1.0;
  const Tensor3 gamma = christoffel(integ, q);
  CHECK(gamma(0, 0, 0) == doctest::Approx(-1.0).epsilon(1e-10));
  CHECK(gamma(1, 1, 1) == doctest::Approx(-1.0).epsilon(1e-10));
  CHECK(std::abs(gamma(0, 1, 1)) < 1e-12);
  CHECK(std::abs(gamma(1, 0, 0)) < 1e-12);
}

TEST_CASE("christoffel matches the independent finite-difference oracle") {
  const CounterRng rng(21);
  for (const char* name : {"gaussian2", "iho", "chaotic"}) {
    const ManifoldSpec m = by_name(name);
    for (int trial = 0; trial < 10; ++trial) {
      const Vec p = random_point(m, rng, trial);
      const Tensor3 ours = christoffel(m, p);
      const Tensor3 oracle = christoffel_oracle(m, p, 1e-5);
      for (int r = 0; r < m.dim; ++r)
        for (int i = 0; i < m.dim; ++i)
          for (int j = 0; j < m.dim; ++j)
            CHECK(ours(r, i, j) ==
                  doctest::Approx(oracle(r, i, j)).epsilon(1e-6).scale(1.0));
    }
  }
}

TEST_CASE("scalar curvature of the built-ins") {
  const CounterRng rng(22);
  for (int l : {1, 2, 3}) {
    const ManifoldSpec m = build_manifold("gaussian", gauss_params(l));
    for (int trial = 0; trial < 5; ++trial) {
      const Vec p = random_point(m, rng, trial);
      const CurvatureBundle b = curvature_tensors(m, p);
      CHECK(b.scalar == doctest::Approx(-l).epsilon(0).scale(1.0).epsilon(1e-5));
    }
  }
  const ManifoldSpec integ = by_name("integrable");
  const ManifoldSpec chaos = by_name("chaotic");
  for (int trial = 0; trial < 5; ++trial) {
    CHECK(std::abs(curvature_tensors(integ, random_point(integ, rng, 50 + trial)).scalar) <=
          1e-6);
    CHECK(curvature_tensors(chaos, random_point(chaos, rng, 80 + trial)).scalar ==
          doctest::Approx(-1.0).epsilon(1e-5));
  }
}

TEST_CASE("riemann symmetries and first Bianchi identity at random points") {
  const CounterRng rng(23);
  for (const char* name : {"gaussian2", "iho", "integrable", "chaotic"}) {
    const ManifoldSpec m = by_name(name);
    for (int trial = 0; trial < 20; ++trial) {
      const Vec p = random_point(m, rng, trial);
      const CurvatureBundle b = curvature_tensors(m, p);
      const int n = m.dim;
      double scale = std::max(1.0, b.riemann_lowered.max_abs());
      for (int mu = 0; mu < n; ++mu)
        for (int nu = 0; nu < n; ++nu)
          for (int r = 0; r < n; ++r)
            for (int s = 0; s < n; ++s) {
              const double R = b.riemann_lowered(mu, nu, r, s);
              CHECK(std::abs(R + b.riemann_lowered(nu, mu, r, s)) <= 1e-8 * scale);
              CHECK(std::abs(R + b.riemann_lowered(mu, nu, s, r)) <= 1e-8 * scale);
              CHECK(std::abs(R - b.riemann_lowered(r, s, mu, nu)) <= 1e-8 * scale);
              // First Bianchi: antisymmetrized cyclic sum over the last three.
              const double bianchi = b.riemann_lowered(mu, nu, r, s) +
                                     b.riemann_lowered(mu, r, s, nu) +
                                     b.riemann_lowered(mu, s, nu, r);
              CHECK(std::abs(bianchi) <= 1e-8 * scale);
            }
      // Gamma symmetric in its lower indices, exactly.
      const Tensor3 gamma = christoffel(m, p);
      for (int r = 0; r < n; ++r)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            CHECK(gamma(r, i, j) == gamma(r, j, i));
      // Ricci is the stated trace.
      for (int nu = 0; nu < n; ++nu)
        for (int s = 0; s < n; ++s) {
          double tr = 0.0;
          for (int r = 0; r < n; ++r) tr += b.riemann(r, nu, r, s);
          CHECK(b.ricci(nu, s) == doctest::Approx(tr).epsilon(1e-12));
        }
    }
  }
}

TEST_CASE("sectional curvature: gaussian plane value and invariance") {
  const ManifoldSpec m = by_name("gaussian");
  Vec p(2);
  p << 0.0, 1.0;
  Vec u(2), v(2);
  u << 1.0, 0.0;
  v << 0.0, 1.0;
  CHECK(sectional_curvature(m, p, {u, v}) ==
        doctest::Approx(-0.5).epsilon(1e-6));

  // Re-basing the plane leaves K unchanged.
  Vec u2 = 2.0 * u + 0.3 * v;
  Vec v2 = -0.5 * u + 1.1 * v;
  CHECK(sectional_curvature(m, p, {u2, v2}) ==
        doctest::Approx(-0.5).epsilon(1e-6));

  CHECK_THROWS_AS(sectional_curvature(m, p, {u, 2.0 * u}), ValidationError);
}

TEST_CASE("scalar equals the sum of sectional curvatures over ordered pairs") {
  const CounterRng rng(24);
  for (const char* name : {"gaussian", "gaussian2", "iho", "integrable", "chaotic"}) {
    const ManifoldSpec m = by_name(name);
    for (int trial = 0; trial < 3; ++trial) {
      const Vec p = random_point(m, rng, trial);
      const double sum = sum_sectional_coordinate_planes(m, p);
      const double scalar = curvature_tensors(m, p).scalar;
      CHECK(sum == doctest::Approx(scalar).epsilon(0).scale(1.0).epsilon(1e-6));
    }
  }

  // The l=2 gaussian case: sum = scalar = -2.
  const ManifoldSpec g2 = by_name("gaussian2");
  Vec p(4);
  p << 0.0, 0.0, 1.0, 1.0;
  CHECK(sum_sectional_coordinate_planes(g2, p) ==
        doctest::Approx(-2.0).epsilon(1e-4));
}

TEST_CASE("weyl anisotropy: zero on constant curvature, nonzero for l=2") {
  const ManifoldSpec g1 = by_name("gaussian");
  Vec p(2);
  p << 0.0, 1.0;
  CHECK(weyl_anisotropy(g1, p).max_abs() <= 1e-6);

  const ManifoldSpec integ = by_name("integrable");
  Vec q(2);
  q << 1.0, 1.0;
  CHECK(weyl_anisotropy(integ, q).max_abs() <= 1e-6);

  const ManifoldSpec g2 = by_name("gaussian2");
  Vec r(4);
  r << 0.0, 0.0, 1.0, 1.0;
  CHECK(weyl_anisotropy(g2, r).max_abs() > 0.1);
}

TEST_CASE("finite-difference curvature converges at second order") {
  const ManifoldSpec m = by_name("gaussian");
  Vec p(2);
  p << 0.4, 1.3;

  GeometryOptions coarse;
  coarse.christoffel_step = 2e-2;
  GeometryOptions fine;
  fine.christoffel_step = 1e-2;

  const double err_coarse =
      std::abs(curvature_tensors(m, p, coarse).scalar + 1.0);
  const double err_fine = std::abs(curvature_tensors(m, p, fine).scalar + 1.0);
  CHECK(err_fine * 3.0 <= err_coarse);
}

TEST_CASE("boundary proximity and singular metrics are rejected") {
  const ManifoldSpec g1 = by_name("gaussian");
  Vec near_boundary(2);
  near_boundary << 0.0, 1e-6;  // within 2h of sigma = 0 for h = 1e-4
  CHECK_THROWS_AS(curvature_tensors(g1, near_boundary), DomainError);

  ManifoldSpec singular;
  singular.name = "singular";
  singular.dim = 2;
  singular.domain = DomainBox::unbounded(2);
  singular.metric.value = [](const Vec& t) {
    Mat g(2, 2);
    g << 1.0, 1.0, 1.0, 1.0 + 1e-18 * t[0] * t[0];
    return g;
  };
  Vec p(2);
  p << 1.0, 1.0;
  CHECK_THROWS_AS(christoffel(singular, p), NumericalError);
}
