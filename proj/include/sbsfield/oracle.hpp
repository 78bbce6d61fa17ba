#pragma once

#include <complex>

#include <Eigen/Dense>

#include "sbsfield/errors.hpp"

namespace sbsfield::oracle {

using ComplexMatrix = Eigen::MatrixXcd;

/// Dense truncated Fock-basis operator (dimension = truncation N + 1).
struct FockOperator {
  ComplexMatrix entries;
  bool truncation_warning = false;  // geometric tail above 1e-12 before renorm

  int dimension() const { return static_cast<int>(entries.rows()); }
};

/// Thermal state with mean occupation nbar, renormalized after truncation.
FockOperator thermal_state(double nbar, int truncation);

/// Displacement operator exp(beta a^dag - beta^* a) on the truncated space.
/// Requires |beta|^2 <= N/4 (accuracy guard), else TruncationTooSmall.
FockOperator displacement(std::complex<double> beta, int truncation);

/// Uhlmann fidelity tr sqrt(sqrt(rho) sigma sqrt(rho)) via Hermitian
/// eigendecompositions with PSD clamping at -1e-10.
double uhlmann_fidelity(const FockOperator& rho, const FockOperator& sigma);

/// tr[ D(beta1) rho_th(nbar) D(beta2)^dag ]; modulus reproduces the
/// coth structure exp(-|b1-b2|^2 coth(theta/2)/2), coth(theta/2) = 2 nbar + 1.
std::complex<double> displacement_overlap_trace(double nbar, std::complex<double> beta1,
                                                std::complex<double> beta2, int truncation);

}  // namespace sbsfield::oracle
