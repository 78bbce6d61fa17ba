#include "sbsfield/kernels.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sbsfield {

namespace {

void check_s(double s) {
  if (!(s >= 0.0)) throw std::invalid_argument("kernel: s must be >= 0");
}

void check_theta(double theta_T) {
  if (!(theta_T > 0.0)) throw std::invalid_argument("kernel: theta_T must be > 0");
}

KernelValue with_closed(double closed, double quadrature) {
  return {closed, quadrature, std::abs(closed - quadrature)};
}

// coth(theta u / 2) - 1 = 2 / (e^{theta u} - 1), full precision via expm1.
double bose(double theta_T, double u) { return 2.0 / std::expm1(theta_T * u); }

}  // namespace

double log_sinh_over_x(double x) {
  if (x < 0.0) throw std::invalid_argument("log_sinh_over_x: x must be >= 0");
  if (x < 1e-4) return x * x / 6.0 - x * x * x * x / 180.0;
  if (x > 30.0) return x - std::log(2.0 * x) + std::log1p(-std::exp(-2.0 * x));
  return std::log(std::sinh(x) / x);
}

double log_tanh_over_x(double x) {
  if (x < 0.0) throw std::invalid_argument("log_tanh_over_x: x must be >= 0");
  if (x < 1e-4) return -x * x / 3.0 + 7.0 * x * x * x * x / 90.0;
  if (x > 30.0) return -std::log(x);
  return std::log(std::tanh(x) / x);
}

double x_coth_x(double x) {
  if (x < 0.0) throw std::invalid_argument("x_coth_x: x must be >= 0");
  if (x < 1e-4) return 1.0 + x * x / 3.0 - x * x * x * x / 45.0;
  return x / std::tanh(x);
}

KernelValue gamma1_vac(double s, quad::OscOptions opt) {
  check_s(s);
  const double closed = 0.5 * std::log1p(s * s);
  auto h = [](double u) { return std::exp(-u) / u; };
  return with_closed(closed, quad::one_minus_cos_integral(h, s, opt));
}

KernelValue gamma1_th(double s, double theta_T, quad::OscOptions opt) {
  check_s(s);
  check_theta(theta_T);
  const double x = std::numbers::pi * s / theta_T;
  const double closed = log_sinh_over_x(x);
  // Substituting v = theta_T * u makes the Bose decay scale O(1) regardless
  // of theta_T; the oscillation frequency becomes s / theta_T.
  auto h = [](double v) { return 2.0 / (std::expm1(v) * v); };
  return with_closed(closed, quad::one_minus_cos_integral(h, s / theta_T, opt));
}

KernelValue gamma2_vac(double s, quad::OscOptions opt) {
  check_s(s);
  const double closed = s / (1.0 + s * s);
  auto h = [](double u) { return std::exp(-u); };
  return with_closed(closed, quad::laplace_sin(h, s, opt));
}

KernelValue gamma2_th(double s, double theta_T, quad::OscOptions opt) {
  check_s(s);
  check_theta(theta_T);
  auto h = [theta_T](double u) { return std::exp(-u) * bose(theta_T, u); };
  return {std::nullopt, quad::laplace_sin(h, s, opt), 0.0};
}

double gamma2_combination(double s, double theta_T) {
  check_s(s);
  check_theta(theta_T);
  const double x = std::numbers::pi * s / theta_T;
  return x_coth_x(x) - 1.0 / (1.0 + s * s);
}

KernelValue b_th(double s, double theta_T, double nu, quad::OscOptions opt) {
  check_s(s);
  check_theta(theta_T);
  if (!(nu > 0.0 && nu < 2.0)) throw std::invalid_argument("b_th: nu must be in (0, 2)");
  // Exact transform of the defining integral: the alternating (fermionic)
  // series sums to log[tanh(x/2)/(x/2)] with x = pi nu s / theta_T, i.e. the
  // fermionic thermal time is twice the bosonic one.
  const double x = std::numbers::pi * nu * s / theta_T;
  const double closed = log_tanh_over_x(0.5 * x);
  auto h = [](double v) { return -2.0 / ((std::exp(v) + 1.0) * v); };
  return with_closed(closed, quad::one_minus_cos_integral(h, nu * s / theta_T, opt));
}

KernelValue i3_vac(double s, quad::OscOptions opt) {
  check_s(s);
  const double d = 1.0 + s * s;
  const double closed = (1.0 - s * s) / (d * d);
  auto h = [](double u) { return u * std::exp(-u); };
  return with_closed(closed, quad::laplace_cos(h, s, opt));
}

KernelValue i3_th(double s, double theta_T, quad::OscOptions opt) {
  check_s(s);
  check_theta(theta_T);
  auto h = [theta_T](double u) { return u * std::exp(-u) * bose(theta_T, u); };
  return {std::nullopt, quad::laplace_cos(h, s, opt), 0.0};
}

}  // namespace sbsfield
