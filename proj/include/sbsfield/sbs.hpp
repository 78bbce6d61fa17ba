#pragma once

#include <vector>

#include "sbsfield/fidelity.hpp"

namespace sbsfield {

/// Discretized momentum distribution |<p|psi_0>|^2 on a cubic grid.
struct MomentumGrid {
  std::vector<MomentumVector> cells;  // cell centers, units of m0 c
  std::vector<double> weights;        // nonnegative, sum to 1
};

/// Macrofractions covering (a subset of) the observed directions.
struct Tiling {
  std::vector<Macrofraction> macrofractions;
  SolidAngleRegion unobserved;
};

struct SbsThresholds {
  double max_offdiag = 1e-3;
  double max_fidelity = 1e-2;
};

struct SbsReport {
  double max_offdiag_modulus = 1.0;  // worst exp(-Gamma) over distinct cell pairs
  double max_fidelity = 1.0;         // worst B over macrofractions x cell pairs
  double floor_estimate = 1.0;       // worst saturation floor over the same
  long redundancy_triples = 0;
  bool sbs_proximity = false;        // both maxima below thresholds, fidelity near floor
};

/// Isotropic Gaussian weights on a cubic grid spanning +-4 spreads around
/// mean_p, renormalized to sum 1.
MomentumGrid pointer_probabilities(const MomentumVector& mean_p, double spread,
                                   int cells_per_axis);

SbsReport sbs_report(const MomentumGrid& grid, const Tiling& tiling, TimePoint s,
                     const PhysicalScenario& scenario, SbsThresholds thresholds = {});

/// Recover p from projections eps_r.p = value_r by the dual-basis
/// (least-squares for > 3 components) solve. Throws DegenerateFrame when the
/// frame determinant is <= 1e-10.
MomentumVector reconstruct_momentum(
    const std::vector<std::pair<UnitDirection, double>>& components);

/// Number of disjoint macrofraction triples with linearly independent
/// polarization vectors (greedy, deterministic index order).
long redundancy_count(const Tiling& tiling);

}  // namespace sbsfield
