#pragma once

#include <string>

#include "sbsfield/config.hpp"

namespace sbsfield {

struct EngineOptions {
  int threads = 1;              // worker threads for sweep rows
  double tolerance_scale = 1.0; // multiplies every oracle-check tolerance
};

/// One CSV row per time point: s, exact and regime-row damping exponents,
/// exact / small-patch / regime-row -log B, and the saturation floor.
/// Deterministic: identical config yields byte-identical output.
std::string run_sweep_csv(const RunConfig& config, const EngineOptions& opt = {});

/// The three-regime summary table with the config's numerical prefactors
/// substituted; text rendering and JSON document.
std::string run_regime_table_text(const RunConfig& config);
std::string run_regime_table_json(const RunConfig& config);

struct OracleCheckResult {
  bool passed = false;
  std::string report;  // one line per check: PASS/FAIL, max discrepancy, tolerance
};

/// Full self-check suite: kernel closed forms vs quadrature, Fock-space
/// tanh/coth duality, the unexpanded 2D damping integral vs the factorized
/// form, and small-patch vs exact-patch fidelity. corrupt_tanh_to_coth is a
/// test fixture that must make the Fock fidelity check fail.
OracleCheckResult run_oracle_check(const RunConfig& config,
                                   const EngineOptions& opt = {},
                                   bool corrupt_tanh_to_coth = false);

/// JSON time series of SbsReport over the momentum grid and tiling, plus
/// redundancy_triples, dipole_validity_time and validity_warning.
std::string run_sbs_report_json(const RunConfig& config);

}  // namespace sbsfield
