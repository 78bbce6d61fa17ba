#include "sbsfield/decoherence.hpp"

#include <cmath>
#include <numbers>

namespace sbsfield {

const char* regime_label_name(RegimeLabel label) {
  switch (label) {
    case RegimeLabel::SubCutoff: return "sub_cutoff";
    case RegimeLabel::VacuumLog: return "vacuum_log";
    case RegimeLabel::ThermalLinear: return "thermal_linear";
    case RegimeLabel::Exact: return "exact";
  }
  return "?";
}

AngularMoments AngularMoments::compute(const SolidAngleRegion& region, double rel_tol) {
  return {angular_moment_matrix(region, AngularWeight::One, rel_tol),
          angular_moment_matrix(region, AngularWeight::CosTheta, rel_tol),
          angular_moment_matrix(region, AngularWeight::Cos2Theta, rel_tol)};
}

namespace {

DecoherenceResult make_result(double gamma, RegimeLabel label, bool warn = false) {
  gamma = std::max(0.0, gamma);
  return {gamma, std::exp(-gamma), label, warn};
}

}  // namespace

DecoherenceResult gamma_exact(TimePoint s, const MomentumVector& p,
                              const MomentumVector& p_prime, const AngularMoments& moments,
                              const PhysicalScenario& scenario) {
  const MomentumVector dp = p - p_prime;
  const double f0 = moments.f0(dp);
  const double f1 = moments.f1(dp);
  const double beta = scenario.velocity_beta;
  const double theta = scenario.cutoff_over_thermal;
  const double log_kernel =
      0.5 * std::log1p(s.s * s.s) + log_sinh_over_x(std::numbers::pi * s.s / theta);
  double gamma = (f0 + beta * f1) * log_kernel;
  if (s.s > 0.0) gamma -= 0.5 * beta * f1 * gamma2_combination(s.s, theta);
  return make_result(scenario.coupling_alpha / std::numbers::pi * gamma, RegimeLabel::Exact);
}

DecoherenceResult gamma_exact(TimePoint s, const MomentumVector& p,
                              const MomentumVector& p_prime,
                              const SolidAngleRegion& unobserved,
                              const PhysicalScenario& scenario) {
  return gamma_exact(s, p, p_prime, AngularMoments::compute(unobserved), scenario);
}

DecoherenceResult gamma_regime(TimePoint s, const MomentumVector& p,
                               const MomentumVector& p_prime, const AngularMoments& moments,
                               const PhysicalScenario& scenario) {
  const MomentumVector dp = p - p_prime;
  const double f0 = moments.f0(dp);
  const double f1 = moments.f1(dp);
  const double beta = scenario.velocity_beta;
  const double tau = scenario.tau_f_over_cutoff();
  const double pref = scenario.coupling_alpha / std::numbers::pi;

  RegimeLabel label;
  if (s.s < 1.0) {
    label = RegimeLabel::SubCutoff;
  } else if (s.s < tau) {
    label = RegimeLabel::VacuumLog;
  } else {
    label = RegimeLabel::ThermalLinear;
  }
  // Interior bands: s < 0.1; 10 < s < 0.1 tau; s > 10 tau. Within a factor
  // 10 of either boundary the nearest row is still returned but flagged.
  const bool warn = (s.s >= 0.1 && s.s <= 10.0) || (s.s >= 0.1 * tau && s.s <= 10.0 * tau);

  double gamma = 0.0;
  switch (label) {
    case RegimeLabel::SubCutoff:
      gamma = f0 * 0.5 * s.s * s.s;
      break;
    case RegimeLabel::VacuumLog:
      gamma = (f0 + beta * f1) * std::log(s.s) - 0.5 * beta * f1;
      break;
    case RegimeLabel::ThermalLinear:
      gamma = (f0 + 0.5 * beta * f1) * s.s / tau + (f0 + beta * f1) * std::log(tau);
      break;
    default:
      break;
  }
  return make_result(pref * gamma, label, warn);
}

DecoherenceResult gamma_regime(TimePoint s, const MomentumVector& p,
                               const MomentumVector& p_prime,
                               const SolidAngleRegion& unobserved,
                               const PhysicalScenario& scenario) {
  return gamma_regime(s, p, p_prime, AngularMoments::compute(unobserved), scenario);
}

double gamma_relativistic_correction(TimePoint s, const MomentumVector& p,
                                     const MomentumVector& p_prime,
                                     const SolidAngleRegion& unobserved,
                                     const PhysicalScenario& scenario) {
  const MomentumVector dp = p - p_prime;
  const MomentumVector q = p.squaredNorm() * p - p_prime.squaredNorm() * p_prime;
  const double theta = scenario.cutoff_over_thermal;
  const double beta = scenario.velocity_beta;

  const double cross = angular_moment_bilinear(unobserved, dp, q, AngularWeight::One);
  const double f2 = angular_moment(unobserved, dp, AngularWeight::Cos2Theta);

  const double i1 = gamma1_vac(s.s).value() + gamma1_th(s.s, theta).value();
  double velocity_block = 0.0;
  if (beta != 0.0 && f2 != 0.0) {
    const double i2 = gamma2_vac(s.s).value() + gamma2_th(s.s, theta).quadrature;
    const double i3 = i3_vac(s.s).value() + i3_th(s.s, theta).quadrature;
    velocity_block = beta * beta * (2.0 * i1 - 2.0 * s.s * i2 + s.s * s.s * i3) * f2;
  }
  return scenario.coupling_alpha / std::numbers::pi * (i1 * cross + velocity_block);
}

double gamma_unexpanded_quadrature(TimePoint s, const MomentumVector& p,
                                   const MomentumVector& p_prime,
                                   const SolidAngleRegion& unobserved,
                                   const PhysicalScenario& scenario,
                                   double angular_rel_tol) {
  const MomentumVector dp = p - p_prime;
  if (dp.squaredNorm() == 0.0 || s.s == 0.0) return 0.0;
  const double theta = scenario.cutoff_over_thermal;
  const double beta = scenario.velocity_beta;

  auto frequency_kernel = [theta](double y) {
    auto h = [theta](double u) {
      return std::exp(-u) * (1.0 + 2.0 / std::expm1(theta * u)) / u;
    };
    return quad::one_minus_cos_integral(h, y);
  };

  auto angular = [&](const Eigen::Vector3d& khat) {
    const double along = dp.dot(khat);
    const double perp2 = dp.squaredNorm() - along * along;
    const double nu = 1.0 - beta * khat.z();
    return perp2 / (nu * nu) * frequency_kernel(s.s * nu);
  };
  const double integral = integrate_region(unobserved, angular, angular_rel_tol);
  return scenario.coupling_alpha / std::numbers::pi * integral;
}

double dipole_validity_time(const PhysicalScenario& scenario) {
  if (!(scenario.momentum_spread > 0.0))
    throw std::invalid_argument("dipole_validity_time: momentum_spread must be > 0");
  return 1.0 / scenario.momentum_spread;
}

}  // namespace sbsfield
