#pragma once

#include "sbsfield/decoherence.hpp"
#include "sbsfield/geometry.hpp"
#include "sbsfield/scenario.hpp"

namespace sbsfield {

/// A small observed patch with fixed polarization acting as one detector.
struct Macrofraction {
  UnitDirection center;      // khat_0
  double solid_angle;        // in (0, 4 pi)
  int polarization_index;    // 1 or 2

  void validate() const;
  /// The small-patch closed form is trusted only up to 10% of the sphere.
  bool small_patch_warning() const { return solid_angle / (4.0 * EIGEN_PI) > 0.1; }
  /// Doppler factor along the patch center, nu = 1 - khat0.z * beta.
  double doppler_factor(const PhysicalScenario& scenario) const {
    return 1.0 - center.v.z() * scenario.velocity_beta;
  }
  /// Polarization vector epsilon_{k0,j} of this macrofraction.
  Eigen::Vector3d polarization_vector() const;
};

struct FidelityResult {
  double log_b = 0.0;  // <= 0
  double b = 1.0;      // exp(log_b)
  RegimeLabel regime_label = RegimeLabel::Exact;
  bool regime_boundary_warning = false;
};

/// Single-mode log-fidelity:
///   -mode_weight * (eps.dp)^2 * |alpha~(t)|^2 * tanh(theta_T u / 2),
/// with mode_weight the dimensionless coupling/mode-density surrogate
/// (1/V cancels against it in the continuum limit).
double log_b_mode(const UnitDirection& khat, double omega_over_cutoff,
                  int polarization_index, TimePoint s, const MomentumVector& p,
                  const MomentumVector& p_prime, const PhysicalScenario& scenario,
                  double mode_weight);

/// Frequency-kernel evaluation mode for the exact macrofraction integral.
enum class FrequencyEval {
  Quadrature,  // nested quadrature, oracle path
  ClosedForm,  // vacuum log + thermal tanh closed forms (fast sweeps)
};

/// Exact patch integral:
///   log B = -(alpha/pi) int du/u e^{-u} tanh(theta u/2)
///             int_patch dOmega/4pi (eps_j.dp)^2 (1 - cos(u s nu))/nu^2,
/// angle outer, frequency inner.
FidelityResult log_b_macrofraction_exact(const Macrofraction& mac, TimePoint s,
                                         const MomentumVector& p,
                                         const MomentumVector& p_prime,
                                         const PhysicalScenario& scenario,
                                         FrequencyEval mode = FrequencyEval::Quadrature,
                                         double angular_rel_tol = 1e-8);

/// Small-patch closed form:
///   log B = -f/nu^2 * log[ sqrt(1 + nu^2 s^2) tanh(x/2)/(x/2) ],
/// x = pi nu s/theta, f = alpha dOmega0 (eps.dp)^2 / (4 pi^2). The half
/// argument is the exact transform of the fermionic thermal factor (b_th).
FidelityResult log_b_small_patch(const Macrofraction& mac, TimePoint s,
                                 const MomentumVector& p, const MomentumVector& p_prime,
                                 const PhysicalScenario& scenario);

/// Saturation floor: the s -> infinity limit of the small-patch form,
///   B_inf = (2*cutoff*tau_F)^{-f/nu^2}, with the geometric prefactor kept.
double b_floor(const Macrofraction& mac, const MomentumVector& p,
               const MomentumVector& p_prime, const PhysicalScenario& scenario);

/// Geometric prefactor of the small-patch rows:
///   f = alpha * dOmega0 * (eps.dp)^2 / (4 pi^2).
double patch_prefactor(const Macrofraction& mac, const MomentumVector& dp,
                       const PhysicalScenario& scenario);

/// Three-row approximation of -log B: f s^2/2, (f/nu^2) log(nu s),
/// (f/nu^2) log(2*cutoff*tau_F).
FidelityResult fidelity_regime(const Macrofraction& mac, TimePoint s,
                               const MomentumVector& p, const MomentumVector& p_prime,
                               const PhysicalScenario& scenario);

}  // namespace sbsfield
