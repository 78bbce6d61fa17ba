#include "sbsfield/oracle.hpp"

#include <cmath>

namespace sbsfield::oracle {

namespace {

constexpr double kClampFloor = -1e-10;

// Hermitian square root with PSD clamping; throws below the clamp floor.
ComplexMatrix psd_sqrt(const ComplexMatrix& m, const char* who) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m);
  Eigen::VectorXd vals = es.eigenvalues();
  for (int i = 0; i < vals.size(); ++i) {
    if (vals[i] < kClampFloor)
      throw NumericalIndefiniteness(std::string(who) + ": eigenvalue below -1e-10");
    vals[i] = std::sqrt(std::max(0.0, vals[i]));
  }
  return es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

FockOperator thermal_state(double nbar, int truncation) {
  if (truncation < 1) throw TruncationTooSmall("thermal_state: truncation must be >= 1");
  if (!(nbar >= 0.0)) throw std::invalid_argument("thermal_state: nbar must be >= 0");
  const int dim = truncation + 1;
  FockOperator op;
  op.entries = ComplexMatrix::Zero(dim, dim);
  if (nbar == 0.0) {
    op.entries(0, 0) = 1.0;
    return op;
  }
  const double ratio = nbar / (1.0 + nbar);
  op.truncation_warning = std::pow(ratio, dim) >= 1e-12;
  double norm = 0.0;
  double w = 1.0;
  for (int n = 0; n < dim; ++n, w *= ratio) {
    op.entries(n, n) = w;
    norm += w;
  }
  op.entries /= norm;
  return op;
}

FockOperator displacement(std::complex<double> beta, int truncation) {
  if (truncation < 1) throw TruncationTooSmall("displacement: truncation must be >= 1");
  const int dim = truncation + 1;
  if (std::norm(beta) > 0.25 * truncation)
    throw TruncationTooSmall("displacement: |beta|^2 exceeds N/4");
  // exp(beta a^dag - beta^* a) = exp(-iH) with H = i(beta a^dag - beta^* a)
  // Hermitian; evaluate through its eigendecomposition.
  ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
  const std::complex<double> i_unit(0.0, 1.0);
  for (int n = 0; n < dim - 1; ++n) {
    const double ladder = std::sqrt(static_cast<double>(n + 1));
    h(n + 1, n) = i_unit * beta * ladder;         // i beta a^dag
    h(n, n + 1) = -i_unit * std::conj(beta) * ladder;  // -i beta^* a
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  Eigen::VectorXcd phases(dim);
  for (int n = 0; n < dim; ++n)
    phases[n] = std::exp(std::complex<double>(0.0, -es.eigenvalues()[n]));
  FockOperator op;
  op.entries = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
  return op;
}

double uhlmann_fidelity(const FockOperator& rho, const FockOperator& sigma) {
  if (rho.dimension() != sigma.dimension())
    throw std::invalid_argument("uhlmann_fidelity: dimension mismatch");
  const ComplexMatrix root = psd_sqrt(rho.entries, "uhlmann_fidelity(rho)");
  const ComplexMatrix inner = root * sigma.entries * root;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(inner);
  double fid = 0.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    const double v = es.eigenvalues()[i];
    if (v < kClampFloor)
      throw NumericalIndefiniteness("uhlmann_fidelity: indefinite inner matrix");
    fid += std::sqrt(std::max(0.0, v));
  }
  return std::min(fid, 1.0 + 1e-12);
}

std::complex<double> displacement_overlap_trace(double nbar, std::complex<double> beta1,
                                                std::complex<double> beta2,
                                                int truncation) {
  const FockOperator rho = thermal_state(nbar, truncation);
  const FockOperator d1 = displacement(beta1, truncation);
  const FockOperator d2 = displacement(beta2, truncation);
  return (d1.entries * rho.entries * d2.entries.adjoint()).trace();
}

}  // namespace sbsfield::oracle
