#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "sbsfield/fidelity.hpp"
#include "sbsfield/oracle.hpp"

using namespace sbsfield;

namespace {

constexpr double kPi = std::numbers::pi;

PhysicalScenario make_scenario(double beta = 0.02, double theta_t = 400.0) {
  return {1e5, theta_t, beta, 0.05};
}

Macrofraction make_mac(double fraction = 0.05) {
  return {UnitDirection(Eigen::Vector3d::UnitX()), fraction * 4.0 * kPi, 1};
}

const MomentumVector kP(0.0, 0.0, 0.05);
const MomentumVector kZero = MomentumVector::Zero();

}  // namespace

TEST_CASE("fidelity is 1 at t = 0 and for equal momenta") {
  const auto scenario = make_scenario();
  const auto mac = make_mac();
  CHECK(log_b_macrofraction_exact(mac, TimePoint(0.0), kP, kZero, scenario).b ==
        doctest::Approx(1.0));
  CHECK(log_b_macrofraction_exact(mac, TimePoint(5.0), kP, kP, scenario).b ==
        doctest::Approx(1.0));
  CHECK(log_b_small_patch(mac, TimePoint(0.0), kP, kZero, scenario).log_b ==
        doctest::Approx(0.0));
  CHECK(fidelity_regime(mac, TimePoint(0.5), kP, kP, scenario).b ==
        doctest::Approx(1.0));
}

TEST_CASE("fidelity is symmetric under momentum exchange") {
  const auto scenario = make_scenario();
  const auto mac = make_mac();
  const MomentumVector q(0.01, -0.02, 0.03);
  const double ab = log_b_small_patch(mac, TimePoint(7.0), kP, q, scenario).log_b;
  const double ba = log_b_small_patch(mac, TimePoint(7.0), q, kP, scenario).log_b;
  CHECK(ab == doctest::Approx(ba).epsilon(1e-14));
}

TEST_CASE("geometric prefactor formula") {
  const auto scenario = make_scenario();
  const auto mac = make_mac();
  const double proj = mac.polarization_vector().dot(kP);
  const double expected = scenario.coupling_alpha * mac.solid_angle * proj * proj /
                          (4.0 * kPi * kPi);
  CHECK(patch_prefactor(mac, kP, scenario) == doctest::Approx(expected).epsilon(1e-14));
  // epsilon_1(x-hat) = (0,0,-1): projection is -0.05.
  CHECK(proj == doctest::Approx(-0.05).epsilon(1e-14));
}

TEST_CASE("single-mode log-fidelity matches the truncated Fock-space oracle") {
  // Displaced thermal states with nbar set by tanh(theta u/2) = 1/(2 nbar + 1).
  PhysicalScenario scenario{1e5, 2.0, 0.0, 0.05};
  const UnitDirection khat(Eigen::Vector3d::UnitZ());
  const MomentumVector p(0.4, 0.3, 0.0);  // transverse so eps.dp != 0
  const double u = 1.0;
  const double w = 0.5;
  const TimePoint s(2.0);

  const double tanh_factor = std::tanh(0.5 * scenario.cutoff_over_thermal * u);
  const double nbar = 0.5 * (1.0 / tanh_factor - 1.0);
  const auto amp = displacement_amplitude(s, khat.v, u, scenario);
  const auto basis = polarization_basis(khat);
  const double g = std::sqrt(2.0 * w);
  const std::complex<double> beta1 = g * basis.e1.dot(p) * amp;

  const int n = 60;
  const auto rho = oracle::thermal_state(nbar, n);
  const auto d1 = oracle::displacement(beta1, n);
  oracle::FockOperator displaced{
      d1.entries * rho.entries * d1.entries.adjoint(), false};
  const double fid = oracle::uhlmann_fidelity(displaced, rho);

  const double expected = log_b_mode(khat, u, 1, s, p, kZero, scenario, w);
  CHECK(std::log(fid) == doctest::Approx(expected).epsilon(1e-6));
}

TEST_CASE("small-patch closed form tracks the exact patch integral") {
  const auto scenario = make_scenario();
  const MomentumVector p = kP;
  for (double fraction : {0.01, 0.005}) {
    const auto mac = make_mac(fraction);
    const TimePoint s(10.0);
    const double exact = log_b_macrofraction_exact(mac, s, p, kZero, scenario,
                                                   FrequencyEval::ClosedForm)
                             .log_b;
    const double small = log_b_small_patch(mac, s, p, kZero, scenario).log_b;
    // Deviation is first order in the patch fraction, coefficient ~1.
    CHECK(std::abs(small - exact) <= 1.5 * fraction * std::abs(exact));
  }
}

TEST_CASE("nested-quadrature and closed-form frequency kernels agree") {
  const auto scenario = make_scenario();
  const auto mac = make_mac(0.01);
  for (double s : {1.0, 25.0}) {
    const double q = log_b_macrofraction_exact(mac, TimePoint(s), kP, kZero, scenario,
                                               FrequencyEval::Quadrature)
                         .log_b;
    const double c = log_b_macrofraction_exact(mac, TimePoint(s), kP, kZero, scenario,
                                               FrequencyEval::ClosedForm)
                         .log_b;
    // Differ only by the O(1/theta) cutoff damping of the thermal part.
    CHECK(std::abs(q - c) <=
          (1e-6 + 1.0 / scenario.cutoff_over_thermal) * std::abs(c));
  }
}

TEST_CASE("fidelity saturates at the floor estimate") {
  const auto scenario = make_scenario(0.02, 25.0);  // tau ~ 7.96
  const auto mac = make_mac();
  const double tau = scenario.tau_f_over_cutoff();
  const double at_10tau =
      -log_b_small_patch(mac, TimePoint(10.0 * tau), kP, kZero, scenario).log_b;
  const double at_20tau =
      -log_b_small_patch(mac, TimePoint(20.0 * tau), kP, kZero, scenario).log_b;
  CHECK(std::abs(at_20tau - at_10tau) <= 0.01 * at_10tau);
  const double floor = b_floor(mac, kP, kZero, scenario);
  const double far = log_b_small_patch(mac, TimePoint(1e7), kP, kZero, scenario).b;
  CHECK(far == doctest::Approx(floor).epsilon(1e-4));
}

TEST_CASE("regime rows approximate the small-patch form in band interiors") {
  const auto scenario = make_scenario(0.02, 1e4);
  const auto mac = make_mac();
  const double tau = scenario.tau_f_over_cutoff();
  auto check_at = [&](double s, RegimeLabel label) {
    const auto row = fidelity_regime(mac, TimePoint(s), kP, kZero, scenario);
    const auto exact = log_b_small_patch(mac, TimePoint(s), kP, kZero, scenario);
    CHECK(row.regime_label == label);
    CHECK_FALSE(row.regime_boundary_warning);
    CHECK(row.log_b == doctest::Approx(exact.log_b).epsilon(0.05));
  };
  check_at(1e-2, RegimeLabel::SubCutoff);
  check_at(std::sqrt(tau), RegimeLabel::VacuumLog);
  check_at(100.0 * tau, RegimeLabel::ThermalLinear);
  CHECK(fidelity_regime(mac, TimePoint(2.0), kP, kZero, scenario)
            .regime_boundary_warning);
}

TEST_CASE("distinguishability rate matches the decoherence rate shape") {
  // In the vacuum window both -log B and Gamma grow like log s, so their
  // ratio is time independent.
  const auto scenario = make_scenario(0.02, 1e4);
  const auto mac = make_mac();
  const auto unobserved = SolidAngleRegion::polar_cap(0.0, kPi / 4.0);
  auto ratio_at = [&](double s) {
    const double mlb = -log_b_small_patch(mac, TimePoint(s), kP, kZero, scenario).log_b;
    const double g = gamma_exact(TimePoint(s), kP, kZero, unobserved, scenario).gamma;
    return mlb / g;
  };
  CHECK(ratio_at(30.0) == doctest::Approx(ratio_at(300.0)).epsilon(0.05));
}

TEST_CASE("log-fidelity scales quadratically and decreases with time") {
  const auto scenario = make_scenario(0.0);
  const auto mac = make_mac();
  const double base = log_b_small_patch(mac, TimePoint(8.0), kP, kZero, scenario).log_b;
  const double scaled =
      log_b_small_patch(mac, TimePoint(8.0), MomentumVector(3.0 * kP), kZero, scenario)
          .log_b;
  CHECK(scaled == doctest::Approx(9.0 * base).epsilon(1e-12));
  double prev = 1.0;
  for (double s = 0.1; s < 1e5; s *= 10.0) {
    const double b = log_b_small_patch(mac, TimePoint(s), kP, kZero, scenario).b;
    CHECK(b <= prev + 1e-15);
    prev = b;
  }
}

TEST_CASE("macrofraction validation and the large-patch warning") {
  CHECK_THROWS_AS(
      (Macrofraction{UnitDirection(Eigen::Vector3d::UnitX()), 0.0, 1}.validate()),
      std::invalid_argument);
  CHECK_THROWS_AS(
      (Macrofraction{UnitDirection(Eigen::Vector3d::UnitX()), 1.0, 3}.validate()),
      std::invalid_argument);
  CHECK(make_mac(0.2).small_patch_warning());
  CHECK_FALSE(make_mac(0.05).small_patch_warning());
}
