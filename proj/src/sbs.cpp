#include "sbsfield/sbs.hpp"

#include <cmath>

namespace sbsfield {

MomentumGrid pointer_probabilities(const MomentumVector& mean_p, double spread,
                                   int cells_per_axis) {
  if (cells_per_axis < 2)
    throw std::invalid_argument("pointer_probabilities: cells_per_axis must be >= 2");
  if (!(spread > 0.0))
    throw std::invalid_argument("pointer_probabilities: spread must be > 0");
  const int n = cells_per_axis;
  const double span = 8.0 * spread;  // +-4 spreads
  const double step = span / n;
  std::vector<double> axis(n);
  for (int i = 0; i < n; ++i) axis[i] = -0.5 * span + (i + 0.5) * step;

  MomentumGrid grid;
  grid.cells.reserve(static_cast<size_t>(n) * n * n);
  grid.weights.reserve(grid.cells.capacity());
  double total = 0.0;
  for (int ix = 0; ix < n; ++ix) {
    for (int iy = 0; iy < n; ++iy) {
      for (int iz = 0; iz < n; ++iz) {
        const Eigen::Vector3d offset(axis[ix], axis[iy], axis[iz]);
        const double w = std::exp(-0.5 * offset.squaredNorm() / (spread * spread));
        grid.cells.push_back(mean_p + offset);
        grid.weights.push_back(w);
        total += w;
      }
    }
  }
  for (double& w : grid.weights) w /= total;
  return grid;
}

SbsReport sbs_report(const MomentumGrid& grid, const Tiling& tiling, TimePoint s,
                     const PhysicalScenario& scenario, SbsThresholds thresholds) {
  if (grid.cells.size() < 2)
    throw std::invalid_argument("sbs_report: need at least two momentum cells");
  const AngularMoments moments = AngularMoments::compute(tiling.unobserved);

  double max_offdiag = 0.0;
  double max_fid = 0.0;
  double floor_est = 0.0;
  for (size_t i = 0; i < grid.cells.size(); ++i) {
    for (size_t j = i + 1; j < grid.cells.size(); ++j) {
      const MomentumVector& p = grid.cells[i];
      const MomentumVector& pp = grid.cells[j];
      max_offdiag = std::max(max_offdiag,
                             gamma_exact(s, p, pp, moments, scenario).modulus);
      for (const Macrofraction& mac : tiling.macrofractions) {
        max_fid = std::max(max_fid, log_b_small_patch(mac, s, p, pp, scenario).b);
        floor_est = std::max(floor_est, b_floor(mac, p, pp, scenario));
      }
    }
  }

  SbsReport report;
  report.max_offdiag_modulus = max_offdiag;
  report.max_fidelity = max_fid;
  report.floor_estimate = floor_est;
  report.redundancy_triples = redundancy_count(tiling);
  report.sbs_proximity = max_offdiag < thresholds.max_offdiag &&
                         max_fid < thresholds.max_fidelity &&
                         max_fid <= 2.0 * floor_est;
  return report;
}

MomentumVector reconstruct_momentum(
    const std::vector<std::pair<UnitDirection, double>>& components) {
  if (components.size() < 3)
    throw DegenerateFrame("reconstruct_momentum: need at least 3 components");
  Eigen::Matrix3d frame = Eigen::Matrix3d::Zero();
  Eigen::Vector3d rhs = Eigen::Vector3d::Zero();
  for (const auto& [eps, value] : components) {
    frame += eps.v * eps.v.transpose();
    rhs += value * eps.v;
  }
  if (frame.determinant() <= 1e-10)
    throw DegenerateFrame("reconstruct_momentum: polarization frame is rank deficient");
  return frame.ldlt().solve(rhs);
}

long redundancy_count(const Tiling& tiling) {
  const auto& macs = tiling.macrofractions;
  std::vector<Eigen::Vector3d> eps;
  eps.reserve(macs.size());
  for (const Macrofraction& mac : macs) eps.push_back(mac.polarization_vector());

  std::vector<bool> used(macs.size(), false);
  long count = 0;
  for (size_t i = 0; i < macs.size(); ++i) {
    if (used[i]) continue;
    for (size_t j = i + 1; j < macs.size() && !used[i]; ++j) {
      if (used[j]) continue;
      for (size_t k = j + 1; k < macs.size(); ++k) {
        if (used[k]) continue;
        Eigen::Matrix3d m;
        m.col(0) = eps[i];
        m.col(1) = eps[j];
        m.col(2) = eps[k];
        const Eigen::Matrix3d gram = m.transpose() * m;
        if (gram.determinant() > 1e-10) {
          used[i] = used[j] = used[k] = true;
          ++count;
          break;
        }
      }
    }
  }
  return count;
}

}  // namespace sbsfield
