#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qfilter/qstate.hpp"

namespace qfilter {

enum class NoiseKind { SingleOperator, KrausSet };

/// One operator E, or a Kraus set {E_i}, acting as S -> sum_i E_i S E_i^dagger.
///
/// Operators need not be trace preserving. The collective phase flip used
/// in the worked example is a contraction for n >= 2, so apply_noise()
/// rescales the noise branch to unit trace and reports the raw trace.
class NoiseModel {
 public:
  static NoiseModel single(CMatrix op, std::string label);

  /// With `strict`, a set whose sum E_i^dagger E_i differs from the
  /// identity by more than 1e-8 is rejected with NotTracePreserving.
  static NoiseModel kraus(std::vector<CMatrix> ops, std::string label, bool strict = false);

  static NoiseModel identity(std::size_t dim);

  NoiseKind kind() const noexcept { return kind_; }
  const std::vector<CMatrix>& operators() const noexcept { return operators_; }
  const std::string& label() const noexcept { return label_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(operators_.front().rows()); }
  bool trace_preserving() const noexcept { return trace_preserving_; }

 private:
  NoiseModel(NoiseKind kind, std::vector<CMatrix> ops, std::string label);

  NoiseKind kind_;
  std::vector<CMatrix> operators_;
  std::string label_;
  bool trace_preserving_ = false;
};

/// E = (1/n) sum_i Z^(i) on 2^n labels: diagonal with entry
/// (n - 2 popcount(b)) / n for label b.
NoiseModel collective_phase_flip(std::size_t n_qubits);

/// Pauli Z on qubit `qubit` (0 = least significant bit) of an n-qubit register.
CMatrix pauli_z_on(std::size_t n_qubits, std::size_t qubit);

struct NoisyState {
  DensityMatrix state;  // unit trace
  double raw_trace = 0.0;
  bool renormalized = false;
};

/// sum_i E_i S E_i^dagger rescaled to unit trace. Throws
/// NoiseAnnihilatesState when the raw trace is below 1e-12.
NoisyState apply_noise(const NoiseModel& model, const DensityMatrix& signal);

/// rho = p S + (1 - p) N with N the unit-trace noise branch.
DensityMatrix mix_signal_noise(double p, const DensityMatrix& signal, const NoiseModel& model);

}  // namespace qfilter
