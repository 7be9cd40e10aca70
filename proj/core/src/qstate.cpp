#include "qfilter/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qfilter/error.hpp"

namespace qfilter {

namespace {

constexpr double kNegativeEigenFloor = -1e-10;

// Eigenvalues below this are indistinguishable from round-off of a zero
// eigenvalue for a matrix of the given size and scale.
double roundoff_floor(std::size_t dim, double scale) {
  const double eps = std::numeric_limits<double>::epsilon();
  return std::max(1e-14, 4.0 * static_cast<double>(dim) * eps) * std::max(scale, 1.0);
}

// sqrt of a PSD matrix given its eigendecomposition, with round-off
// eigenvalues set to zero.
CMatrix psd_sqrt(const HermitianEigen& eig) {
  const auto n = eig.values.size();
  const double floor = roundoff_floor(static_cast<std::size_t>(n), eig.values.maxCoeff());
  RVector roots(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    roots(i) = eig.values(i) > floor ? std::sqrt(eig.values(i)) : 0.0;
  }
  return eig.vectors * roots.asDiagonal() * eig.vectors.adjoint();
}

void require_unit_trace(const DensityMatrix& m, const char* which) {
  if (std::abs(m.trace() - 1.0) > tol::kInput) {
    throw Error(ErrorKind::InvalidDensity,
                std::string("fidelity: ") + which + " does not have unit trace (trace = " +
                    std::to_string(m.trace()) + ")");
  }
}

}  // namespace

PureState PureState::normalize(CVector raw) {
  if (raw.size() < 2) {
    throw Error(ErrorKind::BadDimension, "pure state needs at least two amplitudes");
  }
  const double norm = raw.norm();
  if (!std::isfinite(norm)) {
    throw Error(ErrorKind::DegenerateState, "pure state has non-finite amplitudes");
  }
  if (norm == 0.0) {
    throw Error(ErrorKind::DegenerateState, "pure state amplitudes are all zero");
  }
  const bool renormalized = std::abs(norm - 1.0) > tol::kInput;
  raw /= norm;
  return PureState(std::move(raw), renormalized);
}

PureState make_pure(CVector raw) { return PureState::normalize(std::move(raw)); }

PureState basis_state(std::size_t dim, std::size_t index) {
  if (index >= dim) {
    throw Error(ErrorKind::BadDimension, "basis index " + std::to_string(index) +
                                             " out of range for dimension " + std::to_string(dim));
  }
  CVector v = CVector::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return make_pure(std::move(v));
}

PureState uniform_state(std::size_t dim) {
  if (dim < 2) throw Error(ErrorKind::BadDimension, "uniform state needs dimension >= 2");
  return make_pure(CVector::Constant(static_cast<Eigen::Index>(dim),
                                     1.0 / std::sqrt(static_cast<double>(dim))));
}

HermitianEigen hermitian_eigen(const CMatrix& m) {
  const CMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::InvalidDensity, "Hermitian eigendecomposition did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

DensityMatrix DensityMatrix::from_matrix(const CMatrix& m, double tolerance) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw Error(ErrorKind::BadDimension, "density matrix must be square and nonempty");
  }
  if (!m.allFinite()) throw Error(ErrorKind::InvalidDensity, "density matrix has non-finite entries");
  const double skew = max_abs_diff(m, m.adjoint());
  if (skew > tolerance) {
    throw Error(ErrorKind::InvalidDensity,
                "density matrix is not Hermitian (deviation " + std::to_string(skew) + ")");
  }
  const Complex tr = m.trace();
  if (std::abs(tr.imag()) > tolerance || tr.real() < -tolerance || tr.real() > 1.0 + tolerance) {
    throw Error(ErrorKind::InvalidDensity, "density matrix trace outside [0, 1]");
  }
  DensityMatrix out = trusted(m);
  const double lowest = out.min_eigenvalue();
  if (lowest < -tolerance) {
    throw Error(ErrorKind::InvalidDensity,
                "density matrix is not positive semidefinite (eigenvalue " +
                    std::to_string(lowest) + ")");
  }
  return out;
}

DensityMatrix DensityMatrix::trusted(const CMatrix& m) {
  return DensityMatrix(0.5 * (m + m.adjoint()));
}

DensityMatrix DensityMatrix::zero(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return DensityMatrix(CMatrix::Zero(n, n));
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return DensityMatrix(CMatrix::Identity(n, n) / static_cast<double>(dim));
}

bool DensityMatrix::is_normalized(double tolerance) const noexcept {
  return std::abs(trace() - 1.0) <= tolerance;
}

double DensityMatrix::min_eigenvalue() const {
  return hermitian_eigen(matrix_).values.minCoeff();
}

DensityMatrix DensityMatrix::normalized() const {
  const double tr = trace();
  if (tr < tol::kPostselect) {
    throw Error(ErrorKind::ImpossiblePostselection,
                "cannot normalize a matrix with trace " + std::to_string(tr));
  }
  return DensityMatrix(matrix_ / tr);
}

DensityMatrix density_from_pure(const PureState& phi) {
  const CVector& a = phi.amplitudes();
  return DensityMatrix::trusted(a * a.adjoint());
}

DensityMatrix apply_operator(const CMatrix& op, const DensityMatrix& rho) {
  if (op.rows() != op.cols() || static_cast<std::size_t>(op.rows()) != rho.dim()) {
    throw Error(ErrorKind::BadDimension, "operator is " + std::to_string(op.rows()) + "x" +
                                             std::to_string(op.cols()) + ", state dimension is " +
                                             std::to_string(rho.dim()));
  }
  return DensityMatrix::trusted(op * rho.matrix() * op.adjoint());
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw Error(ErrorKind::BadDimension, "fidelity of states with different dimensions");
  }
  require_unit_trace(rho, "first argument");
  require_unit_trace(sigma, "second argument");

  const HermitianEigen er = hermitian_eigen(rho.matrix());
  const HermitianEigen es = hermitian_eigen(sigma.matrix());
  if (er.values.minCoeff() < kNegativeEigenFloor || es.values.minCoeff() < kNegativeEigenFloor) {
    throw Error(ErrorKind::InvalidDensity, "fidelity argument is not positive semidefinite");
  }

  const CMatrix product = psd_sqrt(er) * psd_sqrt(es);
  Eigen::JacobiSVD<CMatrix> svd(product);
  const double f = svd.singularValues().sum();
  return std::clamp(f, 0.0, 1.0);
}

double fidelity_with_pure(const DensityMatrix& rho, const PureState& phi) {
  if (rho.dim() != phi.dim()) {
    throw Error(ErrorKind::BadDimension, "fidelity of states with different dimensions");
  }
  const CVector& a = phi.amplitudes();
  const double overlap = a.dot(rho.matrix() * a).real();
  return std::clamp(std::sqrt(std::max(overlap, 0.0)), 0.0, 1.0);
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::BadDimension, "max_abs_diff of differently shaped matrices");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace qfilter
