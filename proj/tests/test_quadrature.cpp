#include <doctest.h>

#include <cmath>
#include <numbers>

#include "sbsfield/quadrature.hpp"

using namespace sbsfield;

TEST_CASE("Gauss-Legendre rules integrate polynomials exactly") {
  // n-point GL is exact up to degree 2n-1: check x^8 with n = 5.
  const auto& rule = quad::gauss_legendre(5);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    sum += rule.weights[i] * std::pow(rule.nodes[i], 8);
  CHECK(sum == doctest::Approx(2.0 / 9.0).epsilon(1e-14));
}

TEST_CASE("adaptive quadrature handles smooth and spiky integrands") {
  CHECK(quad::adaptive([](double x) { return x * x; }, 0.0, 1.0) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  // Narrow Lorentzian spike of width 1e-4 inside a wide interval.
  const double w = 1e-4;
  const double spike = quad::adaptive(
      [w](double x) { return w / (w * w + (x - 0.37) * (x - 0.37)); }, 0.0, 10.0);
  const double exact = std::atan((10.0 - 0.37) / w) + std::atan(0.37 / w);
  CHECK(spike == doctest::Approx(exact).epsilon(1e-10));
  // Integrable corner behavior: sqrt(x).
  CHECK(quad::adaptive([](double x) { return std::sqrt(x); }, 0.0, 1.0) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-10));
}

TEST_CASE("decaying integral reproduces Laplace moments") {
  CHECK(quad::decaying_integral([](double u) { return std::exp(-u); }) ==
        doctest::Approx(1.0).epsilon(1e-11));
  CHECK(quad::decaying_integral([](double u) { return u * u * std::exp(-u); }) ==
        doctest::Approx(2.0).epsilon(1e-11));
}

TEST_CASE("oscillatory 1-cos integral matches the vacuum log closed form") {
  auto h = [](double u) { return std::exp(-u) / u; };
  for (double s : {0.3, 1.0, 8.5, 120.0, 1e4}) {
    const double expected = 0.5 * std::log1p(s * s);
    CHECK(quad::one_minus_cos_integral(h, s) ==
          doctest::Approx(expected).epsilon(1e-10));
  }
}

TEST_CASE("oscillatory integrals are independent of the panel offset") {
  auto h = [](double u) { return std::exp(-u) / u; };
  quad::OscOptions a;
  a.panel_start_periods = 1.0;
  quad::OscOptions b;
  b.panel_start_periods = 2.5;
  for (double s : {20.0, 300.0, 5e3}) {
    const double va = quad::one_minus_cos_integral(h, s, a);
    const double vb = quad::one_minus_cos_integral(h, s, b);
    CHECK(std::abs(va - vb) <= 1e-9 * std::max(1.0, std::abs(va)));
  }
}

TEST_CASE("laplace sine and cosine transforms match closed forms") {
  auto e = [](double u) { return std::exp(-u); };
  auto ue = [](double u) { return u * std::exp(-u); };
  for (double s : {0.5, 3.0, 50.0, 2e3}) {
    CHECK(quad::laplace_sin(e, s) ==
          doctest::Approx(s / (1.0 + s * s)).epsilon(1e-9));
    const double c = (1.0 - s * s) / ((1.0 + s * s) * (1.0 + s * s));
    CHECK(std::abs(quad::laplace_cos(ue, s) - c) <= 1e-10);
  }
}

TEST_CASE("thermal-scale spike: Bose kernel resolved at large theta") {
  // int_0^inf 2/(e^v - 1)/v (1 - cos(v t)) dv = log(sinh(pi t)/(pi t)); the
  // integrand decays at scale 1 after the v = theta*u substitution used by
  // the kernels, so quadrature must resolve the 1/v corner accurately.
  auto h = [](double v) { return 2.0 / (std::expm1(v) * v); };
  const double t = 2.0;
  const double x = std::numbers::pi * t;
  const double expected = x + std::log1p(-std::exp(-2.0 * x)) - std::log(2.0 * x);
  CHECK(quad::one_minus_cos_integral(h, t) ==
        doctest::Approx(expected).epsilon(1e-10));
}
