#include <doctest.h>

#include <cmath>

#include "igac/jacobi.hpp"
#include "igac/rng.hpp"

using namespace igac;

namespace {

ManifoldSpec gaussian1() {
  ManifoldParams p;
  p.scalars["l"] = 1;
  return build_manifold("gaussian", p);
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> g;
  for (int i = 0; i < n; ++i) g.push_back(lo + (hi - lo) * i / (n - 1.0));
  return g;
}

// Unit-speed velocity on the l=1 gaussian block at (mu, sigma).
Vec gauss_unit_velocity(double sigma, double a, double b) {
  Vec v(2);
  v << a * sigma, b * sigma / std::sqrt(2.0);
  return v;
}

GeodesicPath gauss_path(const ManifoldSpec& m, double a, double b,
                        double tau_max) {
  Vec th0(2);
  th0 << 0.0, 1.0;
  StepControl ctrl;
  ctrl.rtol = 1e-11;
  ctrl.atol = 1e-13;
  return integrate_geodesic(m, {0.0, th0, gauss_unit_velocity(1.0, a, b)},
                            tau_max, ctrl, linspace(0.0, tau_max, 320));
}

}  // namespace

TEST_CASE("constant-curvature oracle: intensity sqrt(2) sinh(tau/sqrt(2))") {
  const ManifoldSpec m = gaussian1();
  // Several distinct unit-speed geodesics; K = -1/2 everywhere, so the
  // orthogonal spread solves J'' = J/2 with J(0)=0, |DJ(0)|=1.
  const double pairs[5][2] = {
      {0.0, 1.0}, {1.0, 0.0}, {0.6, -0.8}, {0.28, 0.96}, {-0.8, -0.6}};
  for (const auto& ab : pairs) {
    const GeodesicPath p = gauss_path(m, ab[0], ab[1], 5.0);
    const Vec dj0 = unit_normal_to(m, p.samples.front().theta,
                                   p.samples.front().theta_dot);
    const JacobiField f = integrate_jlc(m, p, Vec::Zero(2), dj0);
    for (const auto& s : f.samples) {
      if (s.tau < 0.2) continue;
      const double oracle = std::sqrt(2.0) * std::sinh(s.tau / std::sqrt(2.0));
      CHECK(std::abs(s.intensity - oracle) / oracle <= 1e-4);
    }
  }
  // The quoted endpoint value at tau = 2.
  const GeodesicPath p = gauss_path(m, 0.0, 1.0, 2.0);
  const Vec dj0 = unit_normal_to(m, p.samples.front().theta,
                                 p.samples.front().theta_dot);
  const JacobiField f = integrate_jlc(m, p, Vec::Zero(2), dj0);
  CHECK(f.samples.back().intensity == doctest::Approx(2.736598).epsilon(1e-4));
}

TEST_CASE("flat manifold: intensity grows exactly linearly") {
  const ManifoldSpec m = build_manifold("integrable", {});
  Vec th0(2), v0(2);
  th0 << 1.0, 1.0;
  v0 << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  StepControl ctrl;
  ctrl.rtol = 1e-11;
  ctrl.atol = 1e-13;
  const GeodesicPath p =
      integrate_geodesic(m, {0.0, th0, v0}, 8.0, ctrl, linspace(0.0, 8.0, 200));
  const Vec dj0 = unit_normal_to(m, th0, v0);
  const JacobiField f = integrate_jlc(m, p, Vec::Zero(2), dj0, ctrl);
  for (const auto& s : f.samples)
    CHECK(std::abs(s.intensity - s.tau) <= 1e-8);
}

TEST_CASE("the velocity field is always a Jacobi field") {
  const ManifoldSpec m = gaussian1();
  const GeodesicPath p = gauss_path(m, 0.6, -0.8, 4.0);
  const GeodesicState s0 = p.samples.front();
  const JacobiField f = integrate_jlc(m, p, s0.theta_dot, Vec::Zero(2));
  for (const auto& s : f.samples) {
    const GeodesicState ref = p.state_at(s.tau);
    CHECK((s.J - ref.theta_dot).cwiseAbs().maxCoeff() <= 1e-6);
  }
}

TEST_CASE("JLC is linear in the initial conditions") {
  const ManifoldSpec m = gaussian1();
  const GeodesicPath p = gauss_path(m, 0.28, 0.96, 3.0);
  const GeodesicState s0 = p.samples.front();
  const Vec n0 = unit_normal_to(m, s0.theta, s0.theta_dot);

  StepControl tight;
  tight.rtol = 1e-12;
  tight.atol = 1e-14;
  const JacobiField f1 = integrate_jlc(m, p, Vec::Zero(2), n0, tight);
  const JacobiField f2 = integrate_jlc(m, p, s0.theta_dot, Vec::Zero(2), tight);
  const double a = 1.7, b = -0.4;
  const JacobiField combo =
      integrate_jlc(m, p, Vec(a * Vec::Zero(2) + b * s0.theta_dot),
                    Vec(a * n0 + b * Vec::Zero(2)), tight);
  for (size_t i = 0; i < combo.samples.size(); ++i) {
    const Vec expected = a * f1.samples[i].J + b * f2.samples[i].J;
    CHECK((combo.samples[i].J - expected).cwiseAbs().maxCoeff() <=
          1e-8 * std::max(1.0, expected.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("divergence exponent: hyperbolic growth fits lambda = 1/sqrt(2)") {
  const ManifoldSpec m = gaussian1();
  const GeodesicPath p = gauss_path(m, 0.6, -0.8, 8.0);
  const GeodesicState s0 = p.samples.front();
  const JacobiField f = integrate_jlc(
      m, p, Vec::Zero(2), unit_normal_to(m, s0.theta, s0.theta_dot));
  const ExponentFit fit = divergence_exponent(f, 3.0, 8.0);
  CHECK(fit.exponential_model);
  CHECK(fit.exponent == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(0.02));
  CHECK(fit.r2 >= 0.99);
}

TEST_CASE("divergence exponent: linear growth rejects the exponential form") {
  // Synthetic flat-space field ||J|| = tau.
  JacobiField f;
  for (double tau = 0.0; tau <= 8.0001; tau += 0.05) {
    JacobiSample s;
    s.tau = tau;
    s.J = Vec::Zero(2);
    s.DJ = Vec::Zero(2);
    s.intensity = tau;
    f.samples.push_back(s);
  }
  const ExponentFit fit = divergence_exponent(f, 3.0, 8.0);
  CHECK_FALSE(fit.exponential_model);
  CHECK(std::abs(fit.exponent) <= 0.02);
}

TEST_CASE("divergence exponent: cosh(2 tau) surrogate gives lambda = 2") {
  JacobiField f;
  for (double tau = 0.0; tau <= 8.0001; tau += 0.05) {
    JacobiSample s;
    s.tau = tau;
    s.J = Vec::Zero(1);
    s.DJ = Vec::Zero(1);
    s.intensity = std::cosh(2.0 * tau);
    f.samples.push_back(s);
  }
  const ExponentFit fit = divergence_exponent(f, 3.0, 8.0);
  CHECK(fit.exponential_model);
  CHECK(fit.exponent == doctest::Approx(2.0).epsilon(0.01));
}

TEST_CASE("divergence exponent error paths") {
  JacobiField f;
  for (double tau = 0.0; tau <= 5.0001; tau += 0.5) {
    JacobiSample s;
    s.tau = tau;
    s.intensity = tau;  // zero at tau = 0
    f.samples.push_back(s);
  }
  CHECK_THROWS_AS(divergence_exponent(f, 0.0, 5.0), NumericalError);
  CHECK_THROWS_AS(divergence_exponent(f, 3.0, 9.0), DomainError);
  CHECK_THROWS_AS(divergence_exponent(f, 3.0, 4.0), ValidationError);  // < 10 pts
}

TEST_CASE("positive exponent on curved built-ins, flat control near zero") {
  // chaotic manifold: generic geodesic sees the negatively curved block.
  const ManifoldSpec chaos = build_manifold("chaotic", {});
  Vec th0(3), v0(3);
  th0 << 1.0, 0.0, 1.0;
  v0 << 0.25, 0.5, -0.5;  // unit speed: 4*(0.0625) + 0.25 + 2*0.25 = 1
  StepControl ctrl;
  ctrl.rtol = 1e-11;
  const GeodesicPath p = integrate_geodesic(chaos, {0.0, th0, v0}, 8.0, ctrl,
                                            linspace(0.0, 8.0, 240));
  const JacobiField f = integrate_jlc(
      chaos, p, Vec::Zero(3), unit_normal_to(chaos, th0, v0), ctrl);
  const ExponentFit fit = divergence_exponent(f, 3.0, 8.0);
  CHECK(fit.exponential_model);
  CHECK(fit.exponent > 0.2);
}

TEST_CASE("sparse paths are rejected") {
  const ManifoldSpec m = gaussian1();
  GeodesicPath sparse;
  sparse.samples.push_back({0.0, Vec::Zero(2), Vec::Zero(2)});
  CHECK_THROWS_AS(integrate_jlc(m, sparse, Vec::Zero(2), Vec::Zero(2)),
                  ValidationError);
}
