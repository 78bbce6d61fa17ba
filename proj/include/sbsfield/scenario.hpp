#pragma once

#include <complex>

#include <Eigen/Dense>

#include "sbsfield/errors.hpp"

namespace sbsfield {

/// Momentum 3-vector in units of m0*c. Frame: v0 is along +z.
using MomentumVector = Eigen::Vector3d;

/// Dimensionless time s = cutoff * t.
struct TimePoint {
  double s = 0.0;

  TimePoint() = default;
  explicit TimePoint(double s_) : s(s_) {
    if (!(s >= 0.0)) throw std::invalid_argument("TimePoint: s must be >= 0");
  }
};

/// How the high-frequency cutoff enters the frequency integrals.
enum class CutoffRegularization {
  ExponentialDamping,  // e^{-omega/cutoff} under every integral
};

/// Dimensionless parameter groups defining one physical run.
///
/// All quantities are expressed in cutoff units: times as s = cutoff*t,
/// frequencies as omega/cutoff, momenta in m0*c. The box volume and all
/// dimensionful constants cancel in these groups.
struct PhysicalScenario {
  double coupling_alpha = 0.0;       // alpha >= 0, "fine-structure-like" coupling
  double cutoff_over_thermal = 0.0;  // theta_T = hbar*cutoff/(kB*T) > 0
  double velocity_beta = 0.0;        // v0/c in [0,1), direction +z
  double momentum_spread = 0.0;      // delta p0 / (m0 c) in (0,1)
  CutoffRegularization cutoff_regularization = CutoffRegularization::ExponentialDamping;

  void validate() const {
    if (!(coupling_alpha >= 0.0))
      throw std::invalid_argument("scenario: coupling_alpha must be >= 0");
    if (!(cutoff_over_thermal > 0.0))
      throw std::invalid_argument("scenario: cutoff_over_thermal must be > 0");
    if (!(velocity_beta >= 0.0 && velocity_beta < 1.0))
      throw std::invalid_argument("scenario: velocity_beta must be in [0,1)");
    if (!(momentum_spread > 0.0 && momentum_spread < 1.0))
      throw std::invalid_argument("scenario: momentum_spread must be in (0,1)");
  }

  /// The thermal closed forms assume theta_T >> 1; warn below 10.
  bool low_thermal_warning() const { return cutoff_over_thermal < 10.0; }

  /// Thermal crossover time in cutoff units: cutoff * tau_F = theta_T / pi.
  double tau_f_over_cutoff() const;
};

/// tau_F in cutoff units, cutoff*tau_F = theta_T/pi (tau_F = hbar/(pi kB T)).
double tau_f_over_cutoff(const PhysicalScenario& scenario);

/// Per-mode displacement amplitude alpha_k(t) in cutoff units, up to the
/// constant phase set by the initial packet position:
///
///   (1 - e^{i (omega - k.v0) t}) / (omega - k.v0)
///
/// with omega - k.v0 = u * nu, u = omega/cutoff, nu = 1 - (khat.zhat)*beta.
/// Throws DopplerSingularity when u*nu vanishes within machine tolerance.
std::complex<double> displacement_amplitude(TimePoint s, const Eigen::Vector3d& khat,
                                            double omega_over_cutoff,
                                            const PhysicalScenario& scenario);

}  // namespace sbsfield
