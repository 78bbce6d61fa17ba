#pragma once

#include "sbsfield/geometry.hpp"
#include "sbsfield/kernels.hpp"
#include "sbsfield/scenario.hpp"

namespace sbsfield {

enum class RegimeLabel { SubCutoff, VacuumLog, ThermalLinear, Exact };

const char* regime_label_name(RegimeLabel label);

struct DecoherenceResult {
  double gamma = 0.0;    // damping exponent, >= 0
  double modulus = 1.0;  // exp(-gamma)
  RegimeLabel regime_label = RegimeLabel::Exact;
  bool regime_boundary_warning = false;
};

/// Angular moments of a region, precomputed once so that momentum-pair sweeps
/// reduce to quadratic forms.
struct AngularMoments {
  Eigen::Matrix3d one;        // weight 1
  Eigen::Matrix3d cos_theta;  // weight cos(theta)
  Eigen::Matrix3d cos2_theta; // weight cos^2(theta)

  static AngularMoments compute(const SolidAngleRegion& region, double rel_tol = 1e-10);

  double f0(const MomentumVector& dp) const { return dp.dot(one * dp); }
  double f1(const MomentumVector& dp) const { return 2.0 * dp.dot(cos_theta * dp); }
  double f2(const MomentumVector& dp) const { return dp.dot(cos2_theta * dp); }
};

/// Damping exponent from the angular-moment x frequency-kernel factorization,
/// first order in v0/c:
///   Gamma = (alpha/pi) { (F0 + beta F1)(Gamma1_vac + Gamma1_th)
///                        - (beta/2) F1 [x coth x - 1/(1+s^2)] }.
DecoherenceResult gamma_exact(TimePoint s, const MomentumVector& p,
                              const MomentumVector& p_prime,
                              const SolidAngleRegion& unobserved,
                              const PhysicalScenario& scenario);

/// Fast path with precomputed moments.
DecoherenceResult gamma_exact(TimePoint s, const MomentumVector& p,
                              const MomentumVector& p_prime, const AngularMoments& moments,
                              const PhysicalScenario& scenario);

/// Three-regime approximation rows; regime boundaries at s = 1 and
/// s = cutoff*tau_F, with a warning flag near either boundary.
DecoherenceResult gamma_regime(TimePoint s, const MomentumVector& p,
                               const MomentumVector& p_prime,
                               const SolidAngleRegion& unobserved,
                               const PhysicalScenario& scenario);

DecoherenceResult gamma_regime(TimePoint s, const MomentumVector& p,
                               const MomentumVector& p_prime, const AngularMoments& moments,
                               const PhysicalScenario& scenario);

/// First relativistic correction Gamma^(2) - Gamma^(1): the (m0 c)^{-4}
/// cross term plus the (v0/c)^2 block with the cos^2(theta) moment.
double gamma_relativistic_correction(TimePoint s, const MomentumVector& p,
                                     const MomentumVector& p_prime,
                                     const SolidAngleRegion& unobserved,
                                     const PhysicalScenario& scenario);

/// Oracle path: direct 2D quadrature (frequency x solid angle) of the
/// unexpanded damping integral, no v0/c series and no closed forms.
double gamma_unexpanded_quadrature(TimePoint s, const MomentumVector& p,
                                   const MomentumVector& p_prime,
                                   const SolidAngleRegion& unobserved,
                                   const PhysicalScenario& scenario,
                                   double angular_rel_tol = 1e-7);

/// Moving-dipole validity horizon in cutoff units: cutoff*tau_dip =
/// 1 / momentum_spread. Reported, never enforced.
double dipole_validity_time(const PhysicalScenario& scenario);

}  // namespace sbsfield
