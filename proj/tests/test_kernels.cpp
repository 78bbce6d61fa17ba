#include <doctest.h>

#include <cmath>
#include <numbers>

#include "sbsfield/kernels.hpp"

using namespace sbsfield;

namespace {

constexpr double kPi = std::numbers::pi;

// Independent series oracle: log(sinh x / x) = sum_n log(1 + x^2/(n pi)^2),
// with an integral tail estimate for the truncated remainder.
double log_sinh_series(double x) {
  const double a = x * x / (kPi * kPi);
  const int n_max = 100000;
  double sum = 0.0;
  for (int n = n_max; n >= 1; --n) sum += std::log1p(a / (double(n) * n));
  return sum + a * (1.0 / n_max - 0.5 / (double(n_max) * n_max));
}

// log(tanh y / y) = sum_n [log(1 + y^2/(pi n)^2) - log(1 + y^2/(pi (n-1/2))^2)];
// terms decay like 1/n^3 so no tail correction is needed at n_max = 1e5.
double log_tanh_series(double y) {
  const double b = y * y / (kPi * kPi);
  const int n_max = 100000;
  double sum = 0.0;
  for (int n = n_max; n >= 1; --n) {
    const double m = n - 0.5;
    sum += std::log1p(b / (double(n) * n)) - std::log1p(b / (m * m));
  }
  return sum;
}

}  // namespace

TEST_CASE("vacuum log kernel values and asymptotics") {
  CHECK(gamma1_vac(0.0).value() == doctest::Approx(0.0));
  CHECK(gamma1_vac(1.0).value() == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-14));
  // Small-s quadratic growth s^2/2.
  const double s = 5e-3;
  CHECK(gamma1_vac(s).value() == doctest::Approx(0.5 * s * s).epsilon(1e-4));
}

TEST_CASE("closed forms agree with their defining quadratures") {
  for (double s : {1e-2, 0.5, 1.0, 12.0, 300.0, 1e4}) {
    for (double theta : {10.0, 25.0, 400.0, 1e4}) {
      const auto g1v = gamma1_vac(s);
      CHECK(g1v.abs_discrepancy <= 1e-8 * std::max(1.0, std::abs(g1v.value())));
      const auto g1t = gamma1_th(s, theta);
      CHECK(g1t.abs_discrepancy <= 1e-8 * std::max(1.0, std::abs(g1t.value())));
      const auto bt = b_th(s, theta, 1.0);
      CHECK(bt.abs_discrepancy <= 1e-8 * std::max(1.0, std::abs(bt.value())));
      const auto i3 = i3_vac(s);
      CHECK(i3.abs_discrepancy <= 1e-8 * std::max(1.0, std::abs(i3.value())));
    }
  }
}

TEST_CASE("thermal log kernel matches an independent product-series oracle") {
  for (double s : {0.3, 3.0, 40.0}) {
    for (double theta : {20.0, 400.0}) {
      const double x = kPi * s / theta;
      CHECK(gamma1_th(s, theta).value() ==
            doctest::Approx(log_sinh_series(x)).epsilon(1e-9));
    }
  }
}

TEST_CASE("fidelity thermal kernel matches the tanh product series") {
  for (double s : {0.3, 3.0, 40.0}) {
    for (double theta : {20.0, 400.0}) {
      for (double nu : {1.0, 0.97}) {
        const double y = 0.5 * kPi * nu * s / theta;
        CHECK(b_th(s, theta, nu).value() ==
              doctest::Approx(log_tanh_series(y)).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("fidelity thermal kernel is nonpositive and saturating") {
  const double theta = 100.0;
  double prev = 0.0;
  for (double s : {0.1, 1.0, 10.0, 100.0, 1000.0}) {
    const double v = b_th(s, theta, 1.0).value();
    CHECK(v <= 0.0);
    CHECK(v <= prev + 1e-15);
    prev = v;
  }
  // Large-x limit: log(tanh(x/2)/(x/2)) -> -log(x/2).
  const double s = 1e6;
  const double x = kPi * s / theta;
  CHECK(b_th(s, theta, 1.0).value() ==
        doctest::Approx(-std::log(0.5 * x)).epsilon(1e-10));
}

TEST_CASE("sine kernels") {
  CHECK(gamma2_vac(1.0).value() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(i3_vac(0.0).value() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(i3_vac(1.0).value()) < 1e-12);
  // Thermal sine kernel: small-s linear slope int e^{-u} u [coth - 1] du.
  const double theta = 50.0;
  auto coth_m1 = [theta](double u) {
    return u * std::exp(-u) * (2.0 / std::expm1(theta * u));
  };
  const double slope = quad::decaying_integral(coth_m1);
  const double s = 1e-3;
  CHECK(gamma2_th(s, theta).quadrature == doctest::Approx(slope * s).epsilon(1e-5));
}

TEST_CASE("damping-exponent sine combination") {
  // x coth(x) - 1/(1+s^2) reconciles s*(gamma2_vac + gamma2_th) up to the
  // O(1/theta) cutoff-damping difference in the thermal part.
  const double theta = 400.0;
  for (double s : {0.5, 5.0, 50.0}) {
    const double combo = gamma2_combination(s, theta);
    const double summed =
        s * (gamma2_vac(s).value() + gamma2_th(s, theta).quadrature);
    CHECK(std::abs(combo - summed) <=
          10.0 / theta * std::max(1.0, std::abs(combo)));
  }
}

TEST_CASE("overflow-safe special-function logs") {
  CHECK(log_sinh_over_x(1e4) == doctest::Approx(1e4 - std::log(2e4)).epsilon(1e-13));
  CHECK(log_tanh_over_x(1e4) == doctest::Approx(-std::log(1e4)).epsilon(1e-13));
  CHECK(x_coth_x(1e-8) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(x_coth_x(700.0) == doctest::Approx(700.0).epsilon(1e-13));
  CHECK(log_sinh_over_x(0.0) == doctest::Approx(0.0));
  CHECK(log_tanh_over_x(0.0) == doctest::Approx(0.0));
}

TEST_CASE("thermal log kernel grows monotonically in time") {
  const double theta = 25.0;
  double prev = -1.0;
  for (double s = 0.0; s <= 64.0; s = (s == 0.0 ? 0.25 : 2.0 * s)) {
    const double v = gamma1_th(s, theta).value();
    CHECK(v >= prev - 1e-15);
    CHECK(v >= 0.0);
    prev = v;
  }
}
