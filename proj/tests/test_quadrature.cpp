#include <doctest.h>

#include <cmath>

#include "igac/quadrature.hpp"

using namespace igac;

TEST_CASE("adaptive GK15 on polynomials and peaked integrands") {
  auto poly = [](double x) { return 3.0 * x * x; };
  const QuadratureResult r = integrate_adaptive(poly, 0.0, 2.0, 0.0, 1e-12, 1000);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(8.0).epsilon(1e-13));

  // Steep 1/x^2 near the left end, the shape of scale-type volume elements.
  auto steep = [](double x) { return 1.0 / (x * x); };
  const QuadratureResult s =
      integrate_adaptive(steep, 1e-6, 1.0, 0.0, 1e-9, 200000);
  CHECK(s.converged);
  CHECK(s.value == doctest::Approx(1e6 - 1.0).epsilon(1e-8));
}

TEST_CASE("real-line transform integrates the Gaussian density") {
  auto gauss = [](double x) {
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
  };
  const QuadratureResult r =
      integrate_real_line(gauss, 0.0, 1.0, 1e-12, 1e-10, 100000);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-9));

  // Second moment.
  auto second = [&](double x) { return x * x * gauss(x); };
  const QuadratureResult m2 =
      integrate_real_line(second, 0.0, 1.0, 1e-12, 1e-10, 100000);
  CHECK(m2.value == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("half-line transform handles exponential and Rayleigh tails") {
  auto expdens = [](double x) { return 0.5 * std::exp(-x / 2.0); };
  const QuadratureResult r =
      integrate_half_line(expdens, 0.0, 2.0, 1e-12, 1e-10, 100000);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-9));

  // Rayleigh-type mean: integral of x * (pi x/2) exp(-pi x^2/4) = 1.
  auto wigner_mean = [](double x) {
    return x * (M_PI * x / 2.0) * std::exp(-M_PI * x * x / 4.0);
  };
  const QuadratureResult w =
      integrate_half_line(wigner_mean, 0.0, 1.0, 1e-12, 1e-10, 100000);
  CHECK(w.value == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("budget exhaustion reports the achieved error") {
  auto nasty = [](double x) { return std::sin(1.0 / (x + 1e-8)); };
  CHECK_THROWS_AS(
      integrate_or_throw(nasty, 0.0, 1.0, 0.0, 1e-14, 100, nullptr, nullptr),
      NumericalError);
}
