#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sbsfield/sbs.hpp"

namespace sbsfield {

/// One detector patch as configured (solid angle given as a fraction of 4 pi).
struct MacrofractionSpec {
  Eigen::Vector3d center = Eigen::Vector3d::UnitX();
  double solid_angle_fraction = 0.05;  // dOmega0 / (4 pi), in (0, 1)
  int polarization = 1;                // 1 or 2

  Macrofraction to_macrofraction() const;
};

/// Either a uniform lattice tiling of the observed directions or an explicit
/// patch list.
struct TilingSpec {
  std::optional<int> uniform_count;  // directions before filtering
  std::vector<MacrofractionSpec> patches;
};

/// Log-spaced time grid in s = cutoff * t.
struct TimeGridSpec {
  double s_min = 1e-2;
  double s_max = 1e3;
  int points = 200;

  std::vector<double> values() const;
};

/// Momentum grid for the SBS report (cubic, +-4 spreads around the mean).
struct MomentumGridSpec {
  Eigen::Vector3d mean = Eigen::Vector3d::Zero();
  int cells_per_axis = 2;
};

/// A complete, serializable run description (JSON, schema_version 1).
struct RunConfig {
  PhysicalScenario scenario;
  SolidAngleRegion unobserved = SolidAngleRegion::full_sphere();
  MacrofractionSpec macrofraction;
  Eigen::Vector3d p = Eigen::Vector3d::Zero();
  Eigen::Vector3d p_prime = Eigen::Vector3d::Zero();
  std::optional<MomentumGridSpec> momentum_grid;
  std::optional<TilingSpec> tiling;
  TimeGridSpec time_grid;
  int oracle_truncation = 60;
  SbsThresholds thresholds;

  void validate() const;

  /// s_max past the moving-dipole horizon cutoff*tau_dip = 1/momentum_spread.
  bool validity_warning() const;

  /// Materialize the tiling: uniform lattice directions outside the
  /// unobserved region (both polarizations, equal-area patches), or the
  /// explicit patch list.
  Tiling make_tiling() const;
};

/// Parse a schema_version-1 JSON document. Unknown keys anywhere in the
/// document raise ConfigError (fail-fast reproducibility).
RunConfig parse_config(const std::string& json_text);

/// Inverse of parse_config: parse(serialize(c)) == c.
std::string serialize_config(const RunConfig& config);

/// Named built-in configurations: "fig2-a" (theta_T = 400) and
/// "fig2-b" (theta_T = 25).
RunConfig preset_config(const std::string& name);

}  // namespace sbsfield
