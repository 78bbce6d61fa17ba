#include "sbsfield/scenario.hpp"

#include <cmath>
#include <numbers>

namespace sbsfield {

double tau_f_over_cutoff(const PhysicalScenario& scenario) {
  if (!(scenario.cutoff_over_thermal > 0.0))
    throw std::invalid_argument("tau_f_over_cutoff: theta_T must be > 0");
  return scenario.cutoff_over_thermal / std::numbers::pi;
}

double PhysicalScenario::tau_f_over_cutoff() const {
  return sbsfield::tau_f_over_cutoff(*this);
}

std::complex<double> displacement_amplitude(TimePoint s, const Eigen::Vector3d& khat,
                                            double omega_over_cutoff,
                                            const PhysicalScenario& scenario) {
  const double u = omega_over_cutoff;
  if (!(u > 0.0))
    throw std::invalid_argument("displacement_amplitude: omega_over_cutoff must be > 0");
  const double nu = 1.0 - khat.z() * scenario.velocity_beta;
  const double x = u * nu;  // Doppler-shifted frequency in cutoff units
  if (!(x > 1e-14 * u))
    throw DopplerSingularity("displacement_amplitude: omega - k.v0 vanishes");
  // 1 - e^{i x s} = 2 sin^2(xs/2) - i sin(xs), stable for small arguments.
  const double half = 0.5 * x * s.s;
  const double sh = std::sin(half);
  return std::complex<double>(2.0 * sh * sh, -std::sin(x * s.s)) / x;
}

}  // namespace sbsfield
