#pragma once

// Cyclic lags, the lag-averaged correlation coefficient and the
// post-selected correlation channel built from a controlled shift.
//
// Direction convention: the controlled shift maps |k>|j> to |k - j mod N>|j>
// (signal register first, pointer register second). After projecting the
// signal register onto a reference phi0, the pointer amplitude for lag j is
// proportional to <S_j phi0|phi>, where (S_j phi)(m) = phi(m - j mod N).

#include <cstddef>
#include <optional>
#include <vector>

#include "qfilter/qstate.hpp"

namespace qfilter {

class NoiseModel;

/// (S_lag phi)(m) = phi(m - lag mod N). Negative lags are reduced mod N.
PureState cyclic_shift(const PureState& phi, long long lag);

/// <S_lag reference | state> for every lag 0..N-1.
std::vector<Complex> lag_overlaps(const PureState& reference, const PureState& state);

/// C(reference, state) = (1/N) sum_j |<S_j reference | state>|^2, in [0, 1].
double correlation_coefficient(const PureState& reference, const PureState& state);

/// C(reference, E phi) with E phi left unnormalized. Zero when E phi = 0.
double correlation_coefficient_general(const PureState& reference, const CMatrix& op,
                                       const PureState& phi);

/// Signal (dimension N) tensor pointer (dimension N), amplitudes indexed
/// k * N + j for |k>_signal |j>_pointer.
class JointState {
 public:
  JointState(std::size_t signal_dim, CVector amplitudes);

  std::size_t signal_dim() const noexcept { return signal_dim_; }
  std::size_t pointer_dim() const noexcept { return signal_dim_; }
  const CVector& amplitudes() const noexcept { return amplitudes_; }
  Complex amplitude(std::size_t signal, std::size_t pointer) const {
    return amplitudes_(static_cast<Eigen::Index>(signal * signal_dim_ + pointer));
  }

 private:
  std::size_t signal_dim_;
  CVector amplitudes_;
};

/// Controlled shift applied to phi tensor the uniform pointer:
/// (1/sqrt N) sum_{j,k} phi(k) |k - j mod N> |j>.
JointState shift_entangle(const PureState& phi);

inline constexpr std::size_t kMaxOracleDim = 16;

/// The controlled shift U = sum_j S_{-j} (x) |j><j| as an explicit N^2 x N^2
/// permutation matrix. Throws OracleScaleExceeded for N > 16.
CMatrix build_full_unitary(std::size_t dim);

/// Unnormalized pointer-register output of the correlation channel.
struct FilterOutput {
  DensityMatrix raw;
  /// tr(raw), the probability that the reference is post-selected.
  double postselect_prob = 0.0;
  /// raw / postselect_prob; absent when the probability is below 1e-12.
  std::optional<DensityMatrix> normalized;
};

/// Lag amplitudes c_j = <S_j reference|phi> / sqrt(N) left on the pointer
/// after post-selecting a pure input.
CVector pointer_amplitudes(const PureState& phi, const PureState& reference);

/// Post-selected correlation channel applied to a signal-register density.
/// Mixed inputs are eigendecomposed and processed branch by branch; for a
/// pure input the output trace is C(reference, phi).
FilterOutput postselect_filter(const DensityMatrix& rho, const PureState& reference);

/// Splits the normalized filter output of p S + (1-p) N into its filtered
/// signal and filtered noise components.
struct FilterDecomposition {
  double signal_weight = 0.0;
  double noise_weight = 0.0;
  /// tr E(S) = C(reference, phi).
  double signal_trace = 0.0;
  /// tr E(N) for the unit-trace noise branch.
  double noise_trace = 0.0;
  /// tr E(rho) = p * signal_trace + (1 - p) * noise_trace.
  double total_trace = 0.0;
  std::optional<DensityMatrix> signal_component;
  std::optional<DensityMatrix> noise_component;
  DensityMatrix filtered_mixture;  // normalized E(rho)
};

/// Throws InvalidArgument for p outside [0, 1] and ImpossiblePostselection
/// when tr E(rho) < 1e-12.
FilterDecomposition filter_decomposition(double p, const PureState& phi, const NoiseModel& noise,
                                         const PureState& reference);

}  // namespace qfilter
