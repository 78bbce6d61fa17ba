#include "sbsfield/geometry.hpp"

#include <cmath>
#include <numbers>

#include "sbsfield/quadrature.hpp"

namespace sbsfield {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kFourPi = 4.0 * std::numbers::pi;

Eigen::Matrix3d rotation_to(const Eigen::Vector3d& target) {
  return Eigen::Quaterniond::FromTwoVectors(Eigen::Vector3d::UnitZ(), target)
      .toRotationMatrix();
}

// One primitive patch: a (theta, phi) box in a rotated frame.
struct Primitive {
  double cos_lo, cos_hi;   // cos(theta) range, cos_lo < cos_hi
  double phi_lo, phi_hi;
  Eigen::Matrix3d rot;     // local -> global
};

void collect(const SolidAngleRegion& region, double sign,
             std::vector<std::pair<Primitive, double>>& out) {
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, FullSphereTag>) {
          out.push_back({{-1.0, 1.0, 0.0, kTwoPi, Eigen::Matrix3d::Identity()}, sign});
        } else if constexpr (std::is_same_v<T, PolarCap>) {
          out.push_back({{std::cos(node.theta_max), std::cos(node.theta_min),
                          node.phi_min, node.phi_max, Eigen::Matrix3d::Identity()},
                         sign});
        } else if constexpr (std::is_same_v<T, PatchAround>) {
          out.push_back({{1.0 - node.solid_angle / kTwoPi, 1.0, 0.0, kTwoPi,
                          rotation_to(node.center.v)},
                         sign});
        } else if constexpr (std::is_same_v<T, ComplementOf>) {
          out.push_back({{-1.0, 1.0, 0.0, kTwoPi, Eigen::Matrix3d::Identity()}, sign});
          collect(*node.of, -sign, out);
        } else {  // UnionOf
          for (const auto& part : node.parts) collect(part, sign, out);
        }
      },
      region.node);
}

double integrate_primitive(const Primitive& prim,
                           const std::function<double(const Eigen::Vector3d&)>& f,
                           int n) {
  const bool full_phi = std::abs(prim.phi_hi - prim.phi_lo - kTwoPi) < 1e-12;
  const auto& mu_rule = quad::gauss_legendre(n);
  const int m = 2 * n;
  const double mu_c = 0.5 * (prim.cos_lo + prim.cos_hi);
  const double mu_h = 0.5 * (prim.cos_hi - prim.cos_lo);
  const double phi_span = prim.phi_hi - prim.phi_lo;
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double mu = mu_c + mu_h * mu_rule.nodes[i];
    const double st = std::sqrt(std::max(0.0, 1.0 - mu * mu));
    double inner = 0.0;
    if (full_phi) {
      for (int j = 0; j < m; ++j) {
        const double phi = prim.phi_lo + phi_span * j / m;
        Eigen::Vector3d khat(st * std::cos(phi), st * std::sin(phi), mu);
        inner += f(prim.rot * khat);
      }
      inner *= phi_span / m;
    } else {
      const auto& phi_rule = quad::gauss_legendre(m);
      const double phi_c = 0.5 * (prim.phi_lo + prim.phi_hi);
      const double phi_h = 0.5 * phi_span;
      for (int j = 0; j < m; ++j) {
        const double phi = phi_c + phi_h * phi_rule.nodes[j];
        Eigen::Vector3d khat(st * std::cos(phi), st * std::sin(phi), mu);
        inner += phi_rule.weights[j] * f(prim.rot * khat);
      }
      inner *= phi_h;
    }
    acc += mu_rule.weights[i] * mu_h * inner;
  }
  return acc / kFourPi;
}

}  // namespace

PolarizationBasis polarization_basis(const UnitDirection& khat) {
  const Eigen::Vector3d& k = khat.v;
  if ((k - Eigen::Vector3d::UnitZ()).norm() < 1e-8)
    return {Eigen::Vector3d::UnitX(), Eigen::Vector3d::UnitY()};
  if ((k + Eigen::Vector3d::UnitZ()).norm() < 1e-8)
    return {Eigen::Vector3d::UnitX(), -Eigen::Vector3d::UnitY()};
  const double st = std::hypot(k.x(), k.y());
  const double cp = k.x() / st;
  const double sp = k.y() / st;
  const double ct = k.z();
  Eigen::Vector3d e_theta(ct * cp, ct * sp, -st);
  Eigen::Vector3d e_phi(-sp, cp, 0.0);
  return {e_theta, e_phi};
}

double transversal_norm2(const MomentumVector& dp, const UnitDirection& khat) {
  const double along = dp.dot(khat.v);
  return std::max(0.0, dp.squaredNorm() - along * along);
}

SolidAngleRegion SolidAngleRegion::full_sphere() { return {FullSphereTag{}}; }

SolidAngleRegion SolidAngleRegion::polar_cap(double theta_min, double theta_max,
                                             double phi_min, double phi_max) {
  if (!(0.0 <= theta_min && theta_min < theta_max && theta_max <= std::numbers::pi + 1e-12))
    throw std::invalid_argument("polar_cap: need 0 <= theta_min < theta_max <= pi");
  if (!(phi_min < phi_max && phi_max - phi_min <= kTwoPi + 1e-12))
    throw std::invalid_argument("polar_cap: need phi_min < phi_max, span <= 2 pi");
  return {PolarCap{theta_min, theta_max, phi_min, phi_max}};
}

SolidAngleRegion SolidAngleRegion::patch_around(const UnitDirection& center,
                                                double solid_angle) {
  if (!(solid_angle > 0.0 && solid_angle <= kFourPi))
    throw std::invalid_argument("patch_around: solid_angle must be in (0, 4 pi]");
  return {PatchAround{center, solid_angle}};
}

SolidAngleRegion SolidAngleRegion::complement(SolidAngleRegion region) {
  return {ComplementOf{std::make_shared<SolidAngleRegion>(std::move(region))}};
}

SolidAngleRegion SolidAngleRegion::union_of(std::vector<SolidAngleRegion> regions) {
  return {UnionOf{std::move(regions)}};
}

double SolidAngleRegion::measure() const {
  return std::visit(
      [](const auto& node) -> double {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, FullSphereTag>) {
          return kFourPi;
        } else if constexpr (std::is_same_v<T, PolarCap>) {
          return (node.phi_max - node.phi_min) *
                 (std::cos(node.theta_min) - std::cos(node.theta_max));
        } else if constexpr (std::is_same_v<T, PatchAround>) {
          return node.solid_angle;
        } else if constexpr (std::is_same_v<T, ComplementOf>) {
          return kFourPi - node.of->measure();
        } else {
          double m = 0.0;
          for (const auto& part : node.parts) m += part.measure();
          return m;
        }
      },
      node);
}

bool region_contains(const SolidAngleRegion& region, const Eigen::Vector3d& khat) {
  return std::visit(
      [&](const auto& node) -> bool {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, FullSphereTag>) {
          return true;
        } else if constexpr (std::is_same_v<T, PolarCap>) {
          const double theta = std::acos(std::clamp(khat.z(), -1.0, 1.0));
          double phi = std::atan2(khat.y(), khat.x());
          if (phi < 0.0) phi += kTwoPi;
          if (theta < node.theta_min || theta > node.theta_max) return false;
          if (phi >= node.phi_min && phi <= node.phi_max) return true;
          // phi window may be stated past 2 pi
          return phi + kTwoPi <= node.phi_max && phi + kTwoPi >= node.phi_min;
        } else if constexpr (std::is_same_v<T, PatchAround>) {
          return khat.dot(node.center.v) >= 1.0 - node.solid_angle / kTwoPi;
        } else if constexpr (std::is_same_v<T, ComplementOf>) {
          return !region_contains(*node.of, khat);
        } else {
          for (const auto& part : node.parts)
            if (region_contains(part, khat)) return true;
          return false;
        }
      },
      region.node);
}

double integrate_region(const SolidAngleRegion& region,
                        const std::function<double(const Eigen::Vector3d&)>& f,
                        double rel_tol) {
  std::vector<std::pair<Primitive, double>> prims;
  collect(region, 1.0, prims);
  double total = 0.0;
  for (const auto& [prim, sign] : prims) {
    double prev = integrate_primitive(prim, f, 8);
    double cur = prev;
    bool converged = false;
    for (int n = 16; n <= 512; n *= 2) {
      cur = integrate_primitive(prim, f, n);
      if (std::abs(cur - prev) <= rel_tol * std::max(std::abs(cur), 1e-14) + 1e-15) {
        converged = true;
        break;
      }
      prev = cur;
    }
    if (!converged)
      throw QuadratureFailure("integrate_region: order doubling did not converge");
    total += sign * cur;
  }
  return total;
}

namespace {

double weight_factor(AngularWeight weight, double cos_theta) {
  switch (weight) {
    case AngularWeight::One: return 1.0;
    case AngularWeight::CosTheta: return cos_theta;
    case AngularWeight::Cos2Theta: return cos_theta * cos_theta;
  }
  return 0.0;
}

}  // namespace

Eigen::Matrix3d angular_moment_matrix(const SolidAngleRegion& region, AngularWeight weight,
                                      double rel_tol) {
  // Integrate the 6 independent components of w(theta) (I - khat khat^T).
  Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
  for (int r = 0; r < 3; ++r) {
    for (int c = r; c < 3; ++c) {
      auto f = [&](const Eigen::Vector3d& khat) {
        const double w = weight_factor(weight, khat.z());
        const double delta = (r == c) ? 1.0 : 0.0;
        return w * (delta - khat[r] * khat[c]);
      };
      m(r, c) = integrate_region(region, f, rel_tol);
      m(c, r) = m(r, c);
    }
  }
  return m;
}

double angular_moment(const SolidAngleRegion& region, const MomentumVector& dp,
                      AngularWeight weight, double rel_tol) {
  return angular_moment_bilinear(region, dp, dp, weight, rel_tol);
}

double angular_moment_bilinear(const SolidAngleRegion& region, const MomentumVector& a,
                               const MomentumVector& b, AngularWeight weight,
                               double rel_tol) {
  auto f = [&](const Eigen::Vector3d& khat) {
    return weight_factor(weight, khat.z()) *
           (a.dot(b) - a.dot(khat) * b.dot(khat));
  };
  return integrate_region(region, f, rel_tol);
}

}  // namespace sbsfield
