#pragma once

#include <optional>

#include "sbsfield/quadrature.hpp"

namespace sbsfield {

/// One frequency-integral evaluation: closed form (when the kernel has one),
/// the adaptive-quadrature value, and their absolute discrepancy.
struct KernelValue {
  std::optional<double> closed_form;
  double quadrature = 0.0;
  double abs_discrepancy = 0.0;

  /// Authoritative value: closed form when present, quadrature otherwise.
  double value() const { return closed_form ? *closed_form : quadrature; }
};

// Overflow-safe special-function logs (asymptotic branches for large x).
double log_sinh_over_x(double x);  // log(sinh x / x), >= 0
double log_tanh_over_x(double x);  // log(tanh x / x), <= 0
double x_coth_x(double x);         // x coth x, >= 1

/// Vacuum log kernel: int du/u e^{-u} (1 - cos(u s)) = (1/2) log(1 + s^2).
KernelValue gamma1_vac(double s, quad::OscOptions opt = {});

/// Thermal log kernel: int du/u [coth(theta u/2) - 1](1 - cos(u s)).
/// Closed form log[sinh(x)/x], x = pi s / theta. The Bose factor supplies
/// the decay at scale 1/theta, so no extra cutoff damping enters here; the
/// damped variant differs at O(1/theta) and is covered by the unexpanded
/// 2D decoherence oracle.
KernelValue gamma1_th(double s, double theta_T, quad::OscOptions opt = {});

/// Bare sine kernel: int du e^{-u} sin(u s) = s / (1 + s^2).
KernelValue gamma2_vac(double s, quad::OscOptions opt = {});

/// Thermal sine kernel: int du e^{-u} [coth(theta u/2) - 1] sin(u s).
/// Quadrature-authoritative (no trusted printed closed form).
KernelValue gamma2_th(double s, double theta_T, quad::OscOptions opt = {});

/// The t-multiplied sine combination entering the damping exponent:
/// x coth(x) - 1/(1 + s^2) with x = pi s / theta_T.
double gamma2_combination(double s, double theta_T);

/// Thermal fidelity kernel: int du/u [tanh(theta u/2) - 1](1 - cos(nu u s)).
/// Closed form log[tanh(x/2)/(x/2)], x = pi nu s / theta (always <= 0): the
/// alternating series of the fermionic factor halves the effective argument
/// relative to the bosonic sinh kernel.
KernelValue b_th(double s, double theta_T, double nu, quad::OscOptions opt = {});

/// int du e^{-u} u cos(u s) = (1 - s^2) / (1 + s^2)^2.
KernelValue i3_vac(double s, quad::OscOptions opt = {});

/// int du e^{-u} [coth(theta u/2) - 1] u cos(u s); quadrature only.
KernelValue i3_th(double s, double theta_T, quad::OscOptions opt = {});

}  // namespace sbsfield
