#pragma once

// Dense complex state primitives: normalized pure states, density matrices,
// operator conjugation and the square-root fidelity.

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace qfilter {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

namespace tol {
/// Equality assertions on computed quantities.
inline constexpr double kEquality = 1e-10;
/// Validation of caller-supplied inputs.
inline constexpr double kInput = 1e-8;
/// Post-selection probabilities below this are treated as zero.
inline constexpr double kPostselect = 1e-12;
}  // namespace tol

/// A unit-norm amplitude vector over dim >= 2 basis labels.
class PureState {
 public:
  /// Scales `raw` to unit norm. Throws DegenerateState for a zero (or
  /// non-finite) vector and BadDimension for fewer than two labels.
  static PureState normalize(CVector raw);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(amplitudes_.size()); }
  const CVector& amplitudes() const noexcept { return amplitudes_; }
  Complex operator[](std::size_t k) const { return amplitudes_(static_cast<Eigen::Index>(k)); }

  /// True when the input norm differed from 1 by more than the input tolerance.
  bool renormalized() const noexcept { return renormalized_; }

 private:
  PureState(CVector amplitudes, bool renormalized)
      : amplitudes_(std::move(amplitudes)), renormalized_(renormalized) {}

  CVector amplitudes_;
  bool renormalized_ = false;
};

PureState make_pure(CVector raw);

/// Basis state e_index in `dim` labels.
PureState basis_state(std::size_t dim, std::size_t index);

/// Equal-amplitude state (1/sqrt(dim)) sum_k |k>.
PureState uniform_state(std::size_t dim);

struct HermitianEigen {
  RVector values;   // ascending
  CMatrix vectors;  // columns are eigenvectors
};

/// Eigendecomposition of the Hermitian part of `m`.
HermitianEigen hermitian_eigen(const CMatrix& m);

/// Hermitian, positive semidefinite matrix with real trace in [0, 1].
/// Channel outputs are subnormalized, so unit trace is a property rather
/// than an invariant of the type.
class DensityMatrix {
 public:
  /// Validates Hermiticity, positivity and trace against `tolerance`.
  /// Throws InvalidDensity on failure.
  static DensityMatrix from_matrix(const CMatrix& m, double tolerance = tol::kInput);

  /// Wraps a matrix produced by a trusted construction. Only the
  /// Hermitian part is kept; no spectral check is made.
  static DensityMatrix trusted(const CMatrix& m);

  static DensityMatrix zero(std::size_t dim);
  static DensityMatrix maximally_mixed(std::size_t dim);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }
  const CMatrix& matrix() const noexcept { return matrix_; }
  Complex operator()(std::size_t r, std::size_t c) const {
    return matrix_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  }

  double trace() const noexcept { return matrix_.trace().real(); }
  bool is_normalized(double tolerance = tol::kEquality) const noexcept;
  double min_eigenvalue() const;

  /// Copy rescaled to unit trace. Throws ImpossiblePostselection when the
  /// trace is below the post-selection threshold.
  DensityMatrix normalized() const;

 private:
  explicit DensityMatrix(CMatrix m) : matrix_(std::move(m)) {}

  CMatrix matrix_;
};

/// |phi><phi|.
DensityMatrix density_from_pure(const PureState& phi);

/// A rho A^dagger. The trace follows A; nothing is renormalized.
DensityMatrix apply_operator(const CMatrix& op, const DensityMatrix& rho);

/// Square-root fidelity F = tr sqrt(sqrt(rho) sigma sqrt(rho)).
///
/// Both arguments must have unit trace within 1e-8. It is evaluated as the
/// trace norm of sqrt(rho) sqrt(sigma), which avoids the square root of a
/// numerically rank-deficient product. Eigenvalues within round-off of
/// zero (and negative ones down to -1e-10) are clipped before the square
/// root. Throws InvalidDensity for inputs further from positivity.
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// sqrt(<phi|rho|phi>), the closed form of fidelity() against a pure state.
double fidelity_with_pure(const DensityMatrix& rho, const PureState& phi);

/// Largest entrywise |a - b|.
double max_abs_diff(const CMatrix& a, const CMatrix& b);

}  // namespace qfilter
