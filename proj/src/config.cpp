#include "sbsfield/config.hpp"

#include <cmath>
#include <numbers>
#include <set>

#include <json.hpp>

#include "sbsfield/decoherence.hpp"

namespace sbsfield {

namespace {

using json = nlohmann::ordered_json;

constexpr double kFourPi = 4.0 * std::numbers::pi;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ConfigError("config." + where + ": " + what);
}

void check_keys(const json& obj, const std::string& where,
                const std::set<std::string>& allowed) {
  if (!obj.is_object()) fail(where, "expected a JSON object");
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key())) fail(where, "unknown key '" + item.key() + "'");
  }
}

double get_number(const json& obj, const std::string& where, const std::string& key) {
  if (!obj.contains(key)) fail(where, "missing key '" + key + "'");
  if (!obj[key].is_number()) fail(where + "." + key, "expected a number");
  return obj[key].get<double>();
}

int get_int(const json& obj, const std::string& where, const std::string& key) {
  if (!obj.contains(key)) fail(where, "missing key '" + key + "'");
  if (!obj[key].is_number_integer()) fail(where + "." + key, "expected an integer");
  return obj[key].get<int>();
}

Eigen::Vector3d get_vec3(const json& obj, const std::string& where,
                         const std::string& key) {
  if (!obj.contains(key)) fail(where, "missing key '" + key + "'");
  const json& arr = obj[key];
  if (!arr.is_array() || arr.size() != 3) fail(where + "." + key, "expected [x, y, z]");
  for (const auto& v : arr)
    if (!v.is_number()) fail(where + "." + key, "expected numeric components");
  return {arr[0].get<double>(), arr[1].get<double>(), arr[2].get<double>()};
}

json vec3_json(const Eigen::Vector3d& v) { return json::array({v.x(), v.y(), v.z()}); }

SolidAngleRegion parse_region(const json& obj, const std::string& where) {
  if (!obj.is_object() || !obj.contains("type") || !obj["type"].is_string())
    fail(where, "expected an object with a string 'type'");
  const std::string type = obj["type"].get<std::string>();
  if (type == "full_sphere") {
    check_keys(obj, where, {"type"});
    return SolidAngleRegion::full_sphere();
  }
  if (type == "polar_cap") {
    check_keys(obj, where, {"type", "theta_min", "theta_max", "phi_min", "phi_max"});
    const double theta_min = get_number(obj, where, "theta_min");
    const double theta_max = get_number(obj, where, "theta_max");
    const double phi_min =
        obj.contains("phi_min") ? get_number(obj, where, "phi_min") : 0.0;
    const double phi_max = obj.contains("phi_max") ? get_number(obj, where, "phi_max")
                                                   : 2.0 * std::numbers::pi;
    try {
      return SolidAngleRegion::polar_cap(theta_min, theta_max, phi_min, phi_max);
    } catch (const std::invalid_argument& e) {
      fail(where, e.what());
    }
  }
  if (type == "patch") {
    check_keys(obj, where, {"type", "center", "solid_angle_fraction"});
    const Eigen::Vector3d center = get_vec3(obj, where, "center");
    const double fraction = get_number(obj, where, "solid_angle_fraction");
    if (!(fraction > 0.0 && fraction <= 1.0))
      fail(where + ".solid_angle_fraction", "must be in (0, 1]");
    try {
      return SolidAngleRegion::patch_around(UnitDirection::normalized(center),
                                            fraction * kFourPi);
    } catch (const std::invalid_argument& e) {
      fail(where, e.what());
    }
  }
  if (type == "complement") {
    check_keys(obj, where, {"type", "of"});
    if (!obj.contains("of")) fail(where, "missing key 'of'");
    return SolidAngleRegion::complement(parse_region(obj["of"], where + ".of"));
  }
  if (type == "union") {
    check_keys(obj, where, {"type", "parts"});
    if (!obj.contains("parts") || !obj["parts"].is_array())
      fail(where, "missing array 'parts'");
    std::vector<SolidAngleRegion> parts;
    size_t i = 0;
    for (const auto& part : obj["parts"])
      parts.push_back(parse_region(part, where + ".parts[" + std::to_string(i++) + "]"));
    return SolidAngleRegion::union_of(std::move(parts));
  }
  fail(where + ".type", "unknown region type '" + type + "'");
}

json region_json(const SolidAngleRegion& region) {
  return std::visit(
      [](const auto& node) -> json {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, FullSphereTag>) {
          return {{"type", "full_sphere"}};
        } else if constexpr (std::is_same_v<T, PolarCap>) {
          return {{"type", "polar_cap"},
                  {"theta_min", node.theta_min},
                  {"theta_max", node.theta_max},
                  {"phi_min", node.phi_min},
                  {"phi_max", node.phi_max}};
        } else if constexpr (std::is_same_v<T, PatchAround>) {
          return {{"type", "patch"},
                  {"center", vec3_json(node.center.v)},
                  {"solid_angle_fraction", node.solid_angle / kFourPi}};
        } else if constexpr (std::is_same_v<T, ComplementOf>) {
          return {{"type", "complement"}, {"of", region_json(*node.of)}};
        } else {
          json parts = json::array();
          for (const auto& part : node.parts) parts.push_back(region_json(part));
          return {{"type", "union"}, {"parts", std::move(parts)}};
        }
      },
      region.node);
}

MacrofractionSpec parse_macrofraction(const json& obj, const std::string& where) {
  check_keys(obj, where, {"center", "solid_angle_fraction", "polarization"});
  MacrofractionSpec spec;
  spec.center = get_vec3(obj, where, "center");
  spec.solid_angle_fraction = get_number(obj, where, "solid_angle_fraction");
  spec.polarization = get_int(obj, where, "polarization");
  if (!(spec.solid_angle_fraction > 0.0 && spec.solid_angle_fraction < 1.0))
    fail(where + ".solid_angle_fraction", "must be in (0, 1)");
  if (spec.polarization != 1 && spec.polarization != 2)
    fail(where + ".polarization", "must be 1 or 2");
  return spec;
}

json macrofraction_json(const MacrofractionSpec& spec) {
  return {{"center", vec3_json(spec.center)},
          {"solid_angle_fraction", spec.solid_angle_fraction},
          {"polarization", spec.polarization}};
}

}  // namespace

Macrofraction MacrofractionSpec::to_macrofraction() const {
  return {UnitDirection::normalized(center), solid_angle_fraction * kFourPi,
          polarization};
}

std::vector<double> TimeGridSpec::values() const {
  std::vector<double> out(points);
  const double log_min = std::log(s_min);
  const double log_max = std::log(s_max);
  for (int i = 0; i < points; ++i)
    out[i] = std::exp(log_min + (log_max - log_min) * i / (points - 1));
  out.front() = s_min;
  out.back() = s_max;
  return out;
}

void RunConfig::validate() const {
  try {
    scenario.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config.scenario: ") + e.what());
  }
  if (!(time_grid.s_min > 0.0) || !(time_grid.s_max > time_grid.s_min))
    throw ConfigError("config.time_grid: need 0 < s_min < s_max");
  if (time_grid.points < 2)
    throw ConfigError("config.time_grid: points must be >= 2");
  if (oracle_truncation < 1)
    throw ConfigError("config.oracle_truncation: must be >= 1");
  if (!(thresholds.max_offdiag > 0.0 && thresholds.max_fidelity > 0.0))
    throw ConfigError("config.thresholds: must be positive");
  if (momentum_grid && momentum_grid->cells_per_axis < 2)
    throw ConfigError("config.momentum_grid.cells_per_axis: must be >= 2");
  if (tiling) {
    if (tiling->uniform_count && !tiling->patches.empty())
      throw ConfigError("config.tiling: give uniform_count or patches, not both");
    if (!tiling->uniform_count && tiling->patches.empty())
      throw ConfigError("config.tiling: give uniform_count or patches");
    if (tiling->uniform_count && *tiling->uniform_count < 1)
      throw ConfigError("config.tiling.uniform_count: must be >= 1");
  }
  macrofraction.to_macrofraction().validate();
}

bool RunConfig::validity_warning() const {
  return time_grid.s_max > dipole_validity_time(scenario);
}

Tiling RunConfig::make_tiling() const {
  if (!tiling) throw ConfigError("config.tiling: required for this command");
  Tiling out{{}, unobserved};
  if (!tiling->patches.empty()) {
    for (const MacrofractionSpec& spec : tiling->patches)
      out.macrofractions.push_back(spec.to_macrofraction());
    return out;
  }
  // Fibonacci lattice on the sphere, keeping observed directions only.
  const int n = *tiling->uniform_count;
  const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
  std::vector<UnitDirection> kept;
  for (int i = 0; i < n; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / n;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden_angle * i;
    Eigen::Vector3d dir(r * std::cos(phi), r * std::sin(phi), z);
    if (!region_contains(unobserved, dir)) kept.push_back(UnitDirection::normalized(dir));
  }
  if (kept.empty())
    throw ConfigError("config.tiling: no lattice directions outside the unobserved region");
  const double observed = kFourPi - unobserved.measure();
  const double per_patch = observed / static_cast<double>(kept.size());
  for (const UnitDirection& dir : kept) {
    out.macrofractions.push_back({dir, per_patch, 1});
    out.macrofractions.push_back({dir, per_patch, 2});
  }
  return out;
}

RunConfig parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: JSON parse error: ") + e.what());
  }
  check_keys(doc, "<root>",
             {"schema_version", "scenario", "unobserved", "macrofraction",
              "momentum_pair", "momentum_grid", "tiling", "time_grid",
              "oracle_truncation", "thresholds"});
  if (get_int(doc, "<root>", "schema_version") != 1)
    throw ConfigError("config.schema_version: only version 1 is supported");

  RunConfig config;

  if (!doc.contains("scenario")) fail("<root>", "missing key 'scenario'");
  const json& sc = doc["scenario"];
  check_keys(sc, "scenario",
             {"coupling_alpha", "cutoff_over_thermal", "velocity_beta",
              "momentum_spread"});
  config.scenario.coupling_alpha = get_number(sc, "scenario", "coupling_alpha");
  config.scenario.cutoff_over_thermal = get_number(sc, "scenario", "cutoff_over_thermal");
  config.scenario.velocity_beta = get_number(sc, "scenario", "velocity_beta");
  config.scenario.momentum_spread = get_number(sc, "scenario", "momentum_spread");

  if (!doc.contains("unobserved")) fail("<root>", "missing key 'unobserved'");
  config.unobserved = parse_region(doc["unobserved"], "unobserved");

  if (!doc.contains("macrofraction")) fail("<root>", "missing key 'macrofraction'");
  config.macrofraction = parse_macrofraction(doc["macrofraction"], "macrofraction");

  if (!doc.contains("momentum_pair")) fail("<root>", "missing key 'momentum_pair'");
  const json& mp = doc["momentum_pair"];
  check_keys(mp, "momentum_pair", {"p", "p_prime"});
  config.p = get_vec3(mp, "momentum_pair", "p");
  config.p_prime = get_vec3(mp, "momentum_pair", "p_prime");

  if (doc.contains("momentum_grid")) {
    const json& mg = doc["momentum_grid"];
    check_keys(mg, "momentum_grid", {"mean", "cells_per_axis"});
    MomentumGridSpec grid;
    grid.mean = get_vec3(mg, "momentum_grid", "mean");
    grid.cells_per_axis = get_int(mg, "momentum_grid", "cells_per_axis");
    config.momentum_grid = grid;
  }

  if (doc.contains("tiling")) {
    const json& tl = doc["tiling"];
    check_keys(tl, "tiling", {"uniform_count", "patches"});
    TilingSpec spec;
    if (tl.contains("uniform_count"))
      spec.uniform_count = get_int(tl, "tiling", "uniform_count");
    if (tl.contains("patches")) {
      if (!tl["patches"].is_array()) fail("tiling.patches", "expected an array");
      size_t i = 0;
      for (const auto& patch : tl["patches"])
        spec.patches.push_back(
            parse_macrofraction(patch, "tiling.patches[" + std::to_string(i++) + "]"));
    }
    config.tiling = std::move(spec);
  }

  if (!doc.contains("time_grid")) fail("<root>", "missing key 'time_grid'");
  const json& tg = doc["time_grid"];
  check_keys(tg, "time_grid", {"s_min", "s_max", "points"});
  config.time_grid.s_min = get_number(tg, "time_grid", "s_min");
  config.time_grid.s_max = get_number(tg, "time_grid", "s_max");
  config.time_grid.points = get_int(tg, "time_grid", "points");

  if (doc.contains("oracle_truncation"))
    config.oracle_truncation = get_int(doc, "<root>", "oracle_truncation");

  if (doc.contains("thresholds")) {
    const json& th = doc["thresholds"];
    check_keys(th, "thresholds", {"max_offdiag", "max_fidelity"});
    if (th.contains("max_offdiag"))
      config.thresholds.max_offdiag = get_number(th, "thresholds", "max_offdiag");
    if (th.contains("max_fidelity"))
      config.thresholds.max_fidelity = get_number(th, "thresholds", "max_fidelity");
  }

  config.validate();
  return config;
}

std::string serialize_config(const RunConfig& config) {
  json doc;
  doc["schema_version"] = 1;
  doc["scenario"] = {{"coupling_alpha", config.scenario.coupling_alpha},
                     {"cutoff_over_thermal", config.scenario.cutoff_over_thermal},
                     {"velocity_beta", config.scenario.velocity_beta},
                     {"momentum_spread", config.scenario.momentum_spread}};
  doc["unobserved"] = region_json(config.unobserved);
  doc["macrofraction"] = macrofraction_json(config.macrofraction);
  doc["momentum_pair"] = {{"p", vec3_json(config.p)},
                          {"p_prime", vec3_json(config.p_prime)}};
  if (config.momentum_grid) {
    doc["momentum_grid"] = {{"mean", vec3_json(config.momentum_grid->mean)},
                            {"cells_per_axis", config.momentum_grid->cells_per_axis}};
  }
  if (config.tiling) {
    json tl = json::object();
    if (config.tiling->uniform_count) tl["uniform_count"] = *config.tiling->uniform_count;
    if (!config.tiling->patches.empty()) {
      json patches = json::array();
      for (const MacrofractionSpec& spec : config.tiling->patches)
        patches.push_back(macrofraction_json(spec));
      tl["patches"] = std::move(patches);
    }
    doc["tiling"] = std::move(tl);
  }
  doc["time_grid"] = {{"s_min", config.time_grid.s_min},
                      {"s_max", config.time_grid.s_max},
                      {"points", config.time_grid.points}};
  doc["oracle_truncation"] = config.oracle_truncation;
  doc["thresholds"] = {{"max_offdiag", config.thresholds.max_offdiag},
                       {"max_fidelity", config.thresholds.max_fidelity}};
  return doc.dump(2) + "\n";
}

RunConfig preset_config(const std::string& name) {
  double theta_t = 0.0;
  if (name == "fig2-a") {
    theta_t = 400.0;
  } else if (name == "fig2-b") {
    theta_t = 25.0;
  } else {
    throw ConfigError("unknown preset '" + name + "' (expected fig2-a or fig2-b)");
  }
  RunConfig config;
  config.scenario.coupling_alpha = 1e5;
  config.scenario.cutoff_over_thermal = theta_t;
  config.scenario.velocity_beta = 0.02;
  config.scenario.momentum_spread = 0.05;
  config.unobserved = SolidAngleRegion::polar_cap(0.0, std::numbers::pi / 4.0);
  config.macrofraction = {Eigen::Vector3d::UnitX(), 0.05, 1};
  config.p = Eigen::Vector3d(0.0, 0.0, 0.05);
  config.p_prime = Eigen::Vector3d::Zero();
  config.momentum_grid = MomentumGridSpec{Eigen::Vector3d(0.0, 0.0, 0.05), 2};
  TilingSpec tiling;
  tiling.uniform_count = 32;
  config.tiling = std::move(tiling);
  config.time_grid = {1e-2, 1e3, 200};
  config.oracle_truncation = 60;
  config.validate();
  return config;
}

}  // namespace sbsfield
