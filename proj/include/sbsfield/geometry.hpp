#pragma once

#include <functional>
#include <memory>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "sbsfield/errors.hpp"
#include "sbsfield/scenario.hpp"

namespace sbsfield {

/// Direction on the unit sphere; norm must be 1 within 1e-12.
struct UnitDirection {
  Eigen::Vector3d v;

  explicit UnitDirection(const Eigen::Vector3d& x) : v(x) {
    if (std::abs(x.norm() - 1.0) > 1e-12)
      throw std::invalid_argument("UnitDirection: input is not unit norm");
  }
  static UnitDirection normalized(const Eigen::Vector3d& x) {
    const double n = x.norm();
    if (!(n > 0.0)) throw std::invalid_argument("UnitDirection: zero vector");
    return UnitDirection(Eigen::Vector3d(x / n));
  }
};

/// Orthonormal pair (e1, e2) transverse to khat; (e1, e2, khat) right-handed.
struct PolarizationBasis {
  Eigen::Vector3d e1;
  Eigen::Vector3d e2;
};

/// Deterministic transverse gauge: spherical (e_theta, e_phi) away from the
/// poles; (x, +/-y) at the poles (within 1e-8 of +/-z).
PolarizationBasis polarization_basis(const UnitDirection& khat);

/// |dp|^2 - (dp.khat)^2, the squared transverse norm, in [0, |dp|^2].
double transversal_norm2(const MomentumVector& dp, const UnitDirection& khat);

struct SolidAngleRegion;

/// theta in [theta_min, theta_max], phi in [phi_min, phi_max] (global frame).
struct PolarCap {
  double theta_min, theta_max;
  double phi_min, phi_max;
};

/// Polar cap of the given solid angle, rotated so its axis is `center`.
struct PatchAround {
  UnitDirection center;
  double solid_angle;  // in (0, 4*pi]
};

struct FullSphereTag {};

struct ComplementOf {
  std::shared_ptr<const SolidAngleRegion> of;
};

struct UnionOf {
  std::vector<SolidAngleRegion> parts;  // assumed pairwise disjoint
};

/// Measurable subset of the direction sphere, closed under complement/union.
struct SolidAngleRegion {
  std::variant<FullSphereTag, PolarCap, PatchAround, ComplementOf, UnionOf> node;

  static SolidAngleRegion full_sphere();
  static SolidAngleRegion polar_cap(double theta_min, double theta_max,
                                    double phi_min = 0.0,
                                    double phi_max = 2.0 * EIGEN_PI);
  static SolidAngleRegion patch_around(const UnitDirection& center, double solid_angle);
  static SolidAngleRegion complement(SolidAngleRegion region);
  static SolidAngleRegion union_of(std::vector<SolidAngleRegion> regions);

  /// Total solid angle in steradians, in [0, 4*pi].
  double measure() const;
};

/// Membership test (boundaries inclusive).
bool region_contains(const SolidAngleRegion& region, const Eigen::Vector3d& khat);

/// integral over the region of f(khat) dOmega/(4 pi), by product
/// Gauss-Legendre (cos theta) x periodic trapezoid / Gauss-Legendre (phi)
/// with order doubling until the relative change drops below rel_tol.
double integrate_region(const SolidAngleRegion& region,
                        const std::function<double(const Eigen::Vector3d&)>& f,
                        double rel_tol = 1e-10);

enum class AngularWeight { One, CosTheta, Cos2Theta };

/// 3x3 matrix M with a^T M b = integral over region of
/// w(theta) [a.b - (a.khat)(b.khat)] dOmega/(4 pi).
Eigen::Matrix3d angular_moment_matrix(const SolidAngleRegion& region, AngularWeight weight,
                                      double rel_tol = 1e-10);

/// integral over region of w(theta) * dp_perp^2(khat) dOmega/(4 pi).
/// F0 = this with weight One; F1 = 2x this with weight CosTheta;
/// F2 = this with weight Cos2Theta.
double angular_moment(const SolidAngleRegion& region, const MomentumVector& dp,
                      AngularWeight weight, double rel_tol = 1e-10);

/// Bilinear form behind angular_moment: a != b allowed.
double angular_moment_bilinear(const SolidAngleRegion& region, const MomentumVector& a,
                               const MomentumVector& b, AngularWeight weight,
                               double rel_tol = 1e-10);

}  // namespace sbsfield
