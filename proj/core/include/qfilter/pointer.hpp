#pragma once

// Continuous pointer on a uniform lattice: Gaussian wavefunctions, the
// translation produced by a von Neumann coupling exp(-i A P), narrow
// Gaussians standing in for discrete labels, and the binary-weighted
// operator whose eigenvalues supply the integer shifts.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qfilter/qstate.hpp"

namespace qfilter {

/// Grid extent requested by callers. Both ends are snapped to integer
/// multiples of `step`.
struct LatticeSpec {
  double grid_min = 0.0;
  double grid_max = 0.0;
  double step = 0.0;
};

/// Samples psi(x_m) at x_m = (first_index + m) * step. Indexing the points
/// by integers keeps translations by multiples of the step exact and makes
/// symmetric grids exactly symmetric.
class PointerLattice {
 public:
  PointerLattice(std::int64_t first_index, double step, CVector samples);

  /// An all-zero lattice covering `spec`.
  static PointerLattice zeros(const LatticeSpec& spec);

  double step() const noexcept { return step_; }
  std::int64_t first_index() const noexcept { return first_index_; }
  double grid_min() const noexcept { return static_cast<double>(first_index_) * step_; }
  double grid_max() const noexcept {
    return static_cast<double>(first_index_ + samples_.size() - 1) * step_;
  }
  std::size_t size() const noexcept { return static_cast<std::size_t>(samples_.size()); }
  double x(std::size_t m) const noexcept {
    return static_cast<double>(first_index_ + static_cast<std::int64_t>(m)) * step_;
  }
  const CVector& samples() const noexcept { return samples_; }

  /// Riemann norm sum |psi(x_m)|^2 step.
  double norm_squared() const noexcept { return samples_.squaredNorm() * step_; }

  /// Riemann inner product sum conj(this) other step. Lattices must share
  /// the step and extent.
  Complex inner(const PointerLattice& other) const;

 private:
  std::int64_t first_index_;
  double step_;
  CVector samples_;
};

/// eta(x) = (1 / 2 pi sigma^2)^(1/4) exp(-(x - center)^2 / 4 sigma^2)
double gaussian_amplitude(double x, double center, double sigma);

/// Gaussian pointer centered at 0, rescaled to unit Riemann norm.
/// Throws LatticeTooCoarse when step > sigma / 10 and InvalidArgument when
/// the grid does not cover +-6 sigma.
PointerLattice gaussian_pointer(double sigma, const LatticeSpec& spec);

/// Translates the wavefunction: eta(x) -> eta(x - shift). `shift` must be a
/// multiple of the step. Throws ShiftOutOfRange when samples with
/// amplitude above 1e-12 would leave the grid.
PointerLattice couple_and_shift(const PointerLattice& pointer, double shift);

/// Narrow Gaussian of width `width` centered on `center`, approximating a
/// discrete label.
struct SharpKet {
  double center = 0.0;
  double width = 0.0;

  SharpKet(double center, double width);

  /// width <= 0.1 * separation.
  bool sharp_for_separation(double separation) const noexcept;
};

/// Closed form <k1|k2> = exp(-(k1 - k2)^2 / 8 eps^2). Widths must agree.
double sharp_overlap(const SharpKet& a, const SharpKet& b);

/// The same overlap as a Riemann sum on a lattice of step <= eps / 20.
double sharp_overlap_on_lattice(const SharpKet& a, const SharpKet& b);

/// Samples sum_i coeffs[i] |center_i> (width `width`) on the grid of `spec`.
PointerLattice sample_sharp_superposition(const LatticeSpec& spec, const std::vector<double>& centers,
                                          const std::vector<Complex>& coeffs, double width);

/// Diagonal of A = sum_{l=1..n} 2^(l-1) ((1 - sigma_z) / 2)^(l) on 2^n
/// labels, qubit l being bit l-1 of the label. Requires 1 <= n <= 20.
RVector binary_decomposition_operator(std::size_t n_qubits);

struct CouplingReport {
  std::size_t n_qubits = 0;
  double width = 0.0;
  std::size_t guard_margin = 0;
  /// Largest |lattice - exact| over the joint signal/pointer amplitudes.
  double joint_deviation = 0.0;
  /// Largest |lattice - exact| over the autocorrelation lag amplitudes
  /// <S_j phi|phi> / sqrt(N).
  double lag_deviation = 0.0;
  double max_deviation = 0.0;
  bool passed = false;
};

inline constexpr double kCouplingTolerance = 1e-6;
/// Deviations below this are double-precision round-off.
inline constexpr double kCouplingRoundoffFloor = 1e-14;

/// Realizes the controlled shift on a continuous signal line and compares
/// it with shift_entangle().
///
/// Label k of the signal becomes a sharp ket at x = k. For each pointer
/// label j the coupling translates the signal by -a_j, with a_j taken from
/// binary_decomposition_operator(). The shift is linear, so positions
/// k - j in [-(N-1), N-1] are folded back onto labels mod N when read out.
/// The grid covers that range plus `guard_margin` label spacings on each
/// side; BoundaryArtifact is thrown when the margin cannot hold the
/// Gaussian tails (margin < 6 eps). Requires N = 2^n <= 16.
CouplingReport verify_discrete_coupling(std::size_t n_qubits, const PureState& phi, double width,
                                        std::size_t guard_margin = 2);

}  // namespace qfilter
