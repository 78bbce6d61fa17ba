#include "sbsfield/fidelity.hpp"

#include <cmath>
#include <numbers>

#include "sbsfield/kernels.hpp"
#include "sbsfield/quadrature.hpp"

namespace sbsfield {

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

FidelityResult make_result(double minus_log_b, RegimeLabel label, bool warn = false) {
  const double log_b = -std::max(0.0, minus_log_b);
  return {log_b, std::exp(log_b), label, warn};
}

}  // namespace

double patch_prefactor(const Macrofraction& mac, const MomentumVector& dp,
                       const PhysicalScenario& scenario) {
  const double proj = mac.polarization_vector().dot(dp);
  return scenario.coupling_alpha * mac.solid_angle * proj * proj /
         (4.0 * std::numbers::pi * std::numbers::pi);
}

void Macrofraction::validate() const {
  if (!(solid_angle > 0.0 && solid_angle < kFourPi))
    throw std::invalid_argument("Macrofraction: solid_angle must be in (0, 4 pi)");
  if (polarization_index != 1 && polarization_index != 2)
    throw std::invalid_argument("Macrofraction: polarization_index must be 1 or 2");
}

Eigen::Vector3d Macrofraction::polarization_vector() const {
  const PolarizationBasis basis = polarization_basis(center);
  return polarization_index == 1 ? basis.e1 : basis.e2;
}

double log_b_mode(const UnitDirection& khat, double omega_over_cutoff,
                  int polarization_index, TimePoint s, const MomentumVector& p,
                  const MomentumVector& p_prime, const PhysicalScenario& scenario,
                  double mode_weight) {
  const PolarizationBasis basis = polarization_basis(khat);
  const Eigen::Vector3d eps = polarization_index == 1 ? basis.e1 : basis.e2;
  const double proj = eps.dot(p - p_prime);
  if (proj == 0.0 || mode_weight == 0.0) return 0.0;
  const double amp2 =
      std::norm(displacement_amplitude(s, khat.v, omega_over_cutoff, scenario));
  const double thermal =
      std::tanh(0.5 * scenario.cutoff_over_thermal * omega_over_cutoff);
  return -mode_weight * proj * proj * amp2 * thermal;
}

FidelityResult log_b_macrofraction_exact(const Macrofraction& mac, TimePoint s,
                                         const MomentumVector& p,
                                         const MomentumVector& p_prime,
                                         const PhysicalScenario& scenario,
                                         FrequencyEval mode, double angular_rel_tol) {
  mac.validate();
  const MomentumVector dp = p - p_prime;
  if (dp.squaredNorm() == 0.0 || s.s == 0.0)
    return make_result(0.0, RegimeLabel::Exact);
  const double theta = scenario.cutoff_over_thermal;
  const double beta = scenario.velocity_beta;

  auto frequency_kernel = [&](double y) {
    if (mode == FrequencyEval::ClosedForm)
      return 0.5 * std::log1p(y * y) +
             log_tanh_over_x(0.5 * std::numbers::pi * y / theta);
    auto h = [theta](double u) {
      return std::exp(-u) * std::tanh(0.5 * theta * u) / u;
    };
    return quad::one_minus_cos_integral(h, y);
  };

  const SolidAngleRegion patch =
      SolidAngleRegion::patch_around(mac.center, mac.solid_angle);
  auto angular = [&](const Eigen::Vector3d& khat) {
    const PolarizationBasis basis = polarization_basis(UnitDirection::normalized(khat));
    const Eigen::Vector3d eps = mac.polarization_index == 1 ? basis.e1 : basis.e2;
    const double proj = eps.dot(dp);
    const double nu = 1.0 - beta * khat.z();
    return proj * proj / (nu * nu) * frequency_kernel(s.s * nu);
  };
  const double integral = integrate_region(patch, angular, angular_rel_tol);
  return make_result(scenario.coupling_alpha / std::numbers::pi * integral,
                     RegimeLabel::Exact);
}

FidelityResult log_b_small_patch(const Macrofraction& mac, TimePoint s,
                                 const MomentumVector& p, const MomentumVector& p_prime,
                                 const PhysicalScenario& scenario) {
  mac.validate();
  const double nu = mac.doppler_factor(scenario);
  const double f = patch_prefactor(mac, p - p_prime, scenario);
  const double y = nu * s.s;
  // Half argument: the fermionic thermal time is 2 tau_F (see b_th).
  const double x = 0.5 * std::numbers::pi * y / scenario.cutoff_over_thermal;
  const double bracket = 0.5 * std::log1p(y * y) + log_tanh_over_x(x);
  return make_result(f / (nu * nu) * bracket, RegimeLabel::Exact);
}

double b_floor(const Macrofraction& mac, const MomentumVector& p,
               const MomentumVector& p_prime, const PhysicalScenario& scenario) {
  mac.validate();
  const double nu = mac.doppler_factor(scenario);
  const double f = patch_prefactor(mac, p - p_prime, scenario);
  // s -> infinity limit of the small-patch form: log(nu s) from the vacuum
  // part cancels against -log(x/2) from the saturated tanh, leaving
  // log(2 * cutoff * tau_F).
  return std::exp(-f / (nu * nu) * std::log(2.0 * scenario.tau_f_over_cutoff()));
}

FidelityResult fidelity_regime(const Macrofraction& mac, TimePoint s,
                               const MomentumVector& p, const MomentumVector& p_prime,
                               const PhysicalScenario& scenario) {
  mac.validate();
  const double nu = mac.doppler_factor(scenario);
  const double f = patch_prefactor(mac, p - p_prime, scenario);
  const double tau = scenario.tau_f_over_cutoff();

  RegimeLabel label;
  if (s.s < 1.0) {
    label = RegimeLabel::SubCutoff;
  } else if (s.s < tau) {
    label = RegimeLabel::VacuumLog;
  } else {
    label = RegimeLabel::ThermalLinear;
  }
  const bool warn = (s.s >= 0.1 && s.s <= 10.0) || (s.s >= 0.1 * tau && s.s <= 10.0 * tau);

  double minus_log_b = 0.0;
  switch (label) {
    case RegimeLabel::SubCutoff:
      minus_log_b = f * 0.5 * s.s * s.s;
      break;
    case RegimeLabel::VacuumLog:
      minus_log_b = f / (nu * nu) * std::log(nu * s.s);
      break;
    case RegimeLabel::ThermalLinear:
      minus_log_b = f / (nu * nu) * std::log(2.0 * tau);
      break;
    default:
      break;
  }
  return make_result(minus_log_b, label, warn);
}

}  // namespace sbsfield
