#include <doctest.h>

#include <cmath>
#include <numbers>

#include "sbsfield/decoherence.hpp"

using namespace sbsfield;

namespace {

constexpr double kPi = std::numbers::pi;

PhysicalScenario make_scenario(double beta = 0.02, double theta_t = 400.0) {
  return {1e5, theta_t, beta, 0.05};
}

SolidAngleRegion unobserved_cap() { return SolidAngleRegion::polar_cap(0.0, kPi / 4.0); }

const MomentumVector kP(0.0, 0.0, 0.05);
const MomentumVector kZero = MomentumVector::Zero();

}  // namespace

TEST_CASE("no damping at t = 0 or for equal momenta") {
  const auto scenario = make_scenario();
  const auto cap = unobserved_cap();
  const auto at_zero = gamma_exact(TimePoint(0.0), kP, kZero, cap, scenario);
  CHECK(at_zero.gamma == doctest::Approx(0.0));
  CHECK(at_zero.modulus == doctest::Approx(1.0));
  const auto equal = gamma_exact(TimePoint(10.0), kP, kP, cap, scenario);
  CHECK(equal.gamma == doctest::Approx(0.0));
  CHECK(gamma_unexpanded_quadrature(TimePoint(10.0), kP, kP, cap, scenario) ==
        doctest::Approx(0.0));
}

TEST_CASE("factorized exponent matches the unexpanded 2D quadrature") {
  const auto cap = unobserved_cap();
  for (double beta : {0.0, 0.02}) {
    const auto scenario = make_scenario(beta);
    for (double s : {0.5, 10.0, 200.0}) {
      const double exact = gamma_exact(TimePoint(s), kP, kZero, cap, scenario).gamma;
      const double oracle =
          gamma_unexpanded_quadrature(TimePoint(s), kP, kZero, cap, scenario);
      CHECK(exact == doctest::Approx(oracle).epsilon(5e-3));
    }
  }
}

TEST_CASE("exponent is additive over disjoint unobserved regions") {
  const auto scenario = make_scenario();
  const auto r1 = SolidAngleRegion::polar_cap(0.0, 0.6);
  const auto r2 = SolidAngleRegion::polar_cap(1.0, 1.4, 0.0, 2.0);
  const auto both = SolidAngleRegion::union_of({r1, r2});
  const TimePoint s(30.0);
  const double sum = gamma_exact(s, kP, kZero, r1, scenario).gamma +
                     gamma_exact(s, kP, kZero, r2, scenario).gamma;
  const double joint = gamma_exact(s, kP, kZero, both, scenario).gamma;
  CHECK(std::abs(joint - sum) <= 1e-9 * std::max(1.0, joint));
}

TEST_CASE("exponent scales quadratically with the momentum difference") {
  const auto scenario = make_scenario();
  const auto cap = unobserved_cap();
  const TimePoint s(15.0);
  const double base = gamma_exact(s, kP, kZero, cap, scenario).gamma;
  const double scaled = gamma_exact(s, MomentumVector(2.0 * kP), kZero, cap, scenario).gamma;
  CHECK(scaled == doctest::Approx(4.0 * base).epsilon(1e-12));
}

TEST_CASE("full-sphere first angular moment vanishes: no velocity dependence") {
  const auto full = SolidAngleRegion::full_sphere();
  const auto moments = AngularMoments::compute(full);
  CHECK(std::abs(moments.f1(kP)) < 1e-12);
  const TimePoint s(20.0);
  const double still = gamma_exact(s, kP, kZero, moments, make_scenario(0.0)).gamma;
  const double moving = gamma_exact(s, kP, kZero, moments, make_scenario(0.05)).gamma;
  CHECK(moving == doctest::Approx(still).epsilon(1e-10));
}

TEST_CASE("regime rows approximate the exact exponent deep inside each regime") {
  const auto scenario = make_scenario(0.02, 1e4);  // tau ~ 3183
  const auto cap = unobserved_cap();
  const double tau = scenario.tau_f_over_cutoff();

  auto check_at = [&](double s, RegimeLabel label, bool warn) {
    const auto approx = gamma_regime(TimePoint(s), kP, kZero, cap, scenario);
    const auto exact = gamma_exact(TimePoint(s), kP, kZero, cap, scenario);
    CHECK(approx.regime_label == label);
    CHECK(approx.regime_boundary_warning == warn);
    // Accuracy is only promised in the band interiors.
    if (!warn) CHECK(approx.gamma == doctest::Approx(exact.gamma).epsilon(0.05));
  };
  check_at(1e-2, RegimeLabel::SubCutoff, false);
  check_at(std::sqrt(tau), RegimeLabel::VacuumLog, false);
  check_at(100.0 * tau, RegimeLabel::ThermalLinear, false);
  // Near the boundaries the nearest row is returned but flagged.
  check_at(2.0, RegimeLabel::VacuumLog, true);
  const auto near_tau = gamma_regime(TimePoint(tau * 1.5), kP, kZero, cap, scenario);
  CHECK(near_tau.regime_label == RegimeLabel::ThermalLinear);
  CHECK(near_tau.regime_boundary_warning);
}

TEST_CASE("moving-dipole validity horizon") {
  CHECK(dipole_validity_time(make_scenario()) == doctest::Approx(20.0));
  CHECK(dipole_validity_time(PhysicalScenario{1.0, 400.0, 0.0, 1e-3}) ==
        doctest::Approx(1000.0));
  CHECK(dipole_validity_time(PhysicalScenario{1.0, 400.0, 0.0, 0.5}) ==
        doctest::Approx(2.0));
}

TEST_CASE("relativistic correction vanishes for equal momenta and stays fourth order") {
  const auto scenario = make_scenario();
  const auto cap = unobserved_cap();
  CHECK(gamma_relativistic_correction(TimePoint(10.0), kP, kP, cap, scenario) ==
        doctest::Approx(0.0));
  for (double s : {0.1, 1.0, 10.0, 100.0}) {
    const double corr =
        gamma_relativistic_correction(TimePoint(s), kP, kZero, cap, scenario);
    const double gamma = gamma_exact(TimePoint(s), kP, kZero, cap, scenario).gamma;
    CHECK(std::abs(corr) <= 10.0 * 0.05 * 0.05 * gamma);
  }
}

TEST_CASE("exponent grows monotonically for a static charge") {
  const auto scenario = make_scenario(0.0);
  const auto moments = AngularMoments::compute(unobserved_cap());
  double prev = -1.0;
  for (double s = 0.01; s < 1e4; s *= 3.0) {
    const double g = gamma_exact(TimePoint(s), kP, kZero, moments, scenario).gamma;
    CHECK(g >= prev);
    prev = g;
  }
}
