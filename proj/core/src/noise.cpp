#include "qfilter/noise.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "qfilter/error.hpp"

namespace qfilter {

namespace {

constexpr std::size_t kMaxQubits = 10;

bool is_identity(const CMatrix& m, double tolerance) {
  return max_abs_diff(m, CMatrix::Identity(m.rows(), m.cols())) <= tolerance;
}

}  // namespace

NoiseModel::NoiseModel(NoiseKind kind, std::vector<CMatrix> ops, std::string label)
    : kind_(kind), operators_(std::move(ops)), label_(std::move(label)) {
  if (operators_.empty()) throw Error(ErrorKind::InvalidArgument, "noise model has no operators");
  const auto n = operators_.front().rows();
  if (n < 1) throw Error(ErrorKind::BadDimension, "noise operator is empty");
  CMatrix completeness = CMatrix::Zero(n, n);
  for (const CMatrix& op : operators_) {
    if (op.rows() != op.cols() || op.rows() != n) {
      throw Error(ErrorKind::BadDimension, "noise operators must be square with equal dimensions");
    }
    if (!op.allFinite()) throw Error(ErrorKind::InvalidArgument, "noise operator has non-finite entries");
    completeness += op.adjoint() * op;
  }
  trace_preserving_ = is_identity(completeness, tol::kInput);
}

NoiseModel NoiseModel::single(CMatrix op, std::string label) {
  return NoiseModel(NoiseKind::SingleOperator, {std::move(op)}, std::move(label));
}

NoiseModel NoiseModel::kraus(std::vector<CMatrix> ops, std::string label, bool strict) {
  NoiseModel model(NoiseKind::KrausSet, std::move(ops), std::move(label));
  if (strict && !model.trace_preserving()) {
    throw Error(ErrorKind::NotTracePreserving,
                "Kraus set '" + model.label() + "' does not satisfy sum E^dagger E = 1");
  }
  return model;
}

NoiseModel NoiseModel::identity(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return single(CMatrix::Identity(n, n), "identity");
}

CMatrix pauli_z_on(std::size_t n_qubits, std::size_t qubit) {
  if (n_qubits == 0 || n_qubits > kMaxQubits || qubit >= n_qubits) {
    throw Error(ErrorKind::BadDimension, "pauli_z_on: qubit index out of range");
  }
  const std::size_t dim = std::size_t{1} << n_qubits;
  CMatrix z = CMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t b = 0; b < dim; ++b) {
    const auto i = static_cast<Eigen::Index>(b);
    z(i, i) = ((b >> qubit) & 1u) ? -1.0 : 1.0;
  }
  return z;
}

NoiseModel collective_phase_flip(std::size_t n_qubits) {
  if (n_qubits == 0 || n_qubits > kMaxQubits) {
    throw Error(ErrorKind::BadDimension,
                "collective phase flip needs 1 <= n <= " + std::to_string(kMaxQubits) + " qubits");
  }
  const std::size_t dim = std::size_t{1} << n_qubits;
  const double n = static_cast<double>(n_qubits);
  CMatrix e = CMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t b = 0; b < dim; ++b) {
    const auto i = static_cast<Eigen::Index>(b);
    e(i, i) = (n - 2.0 * static_cast<double>(std::popcount(b))) / n;
  }
  return NoiseModel::single(std::move(e), "collective-phase-flip(n=" + std::to_string(n_qubits) + ")");
}

NoisyState apply_noise(const NoiseModel& model, const DensityMatrix& signal) {
  if (model.dim() != signal.dim()) {
    throw Error(ErrorKind::BadDimension, "noise model dimension " + std::to_string(model.dim()) +
                                             " does not match state dimension " +
                                             std::to_string(signal.dim()));
  }
  const auto n = static_cast<Eigen::Index>(signal.dim());
  CMatrix out = CMatrix::Zero(n, n);
  for (const CMatrix& op : model.operators()) {
    out += op * signal.matrix() * op.adjoint();
  }
  const double raw_trace = out.trace().real();
  if (!(raw_trace >= tol::kPostselect)) {
    throw Error(ErrorKind::NoiseAnnihilatesState,
                "noise '" + model.label() + "' maps the state to trace " + std::to_string(raw_trace));
  }
  return {DensityMatrix::trusted(out / raw_trace), raw_trace,
          std::abs(raw_trace - 1.0) > tol::kInput};
}

DensityMatrix mix_signal_noise(double p, const DensityMatrix& signal, const NoiseModel& model) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "mixing probability must lie in [0, 1]");
  }
  if (!signal.is_normalized(tol::kInput)) {
    throw Error(ErrorKind::InvalidDensity, "signal must have unit trace");
  }
  const NoisyState noisy = apply_noise(model, signal);
  return DensityMatrix::trusted(p * signal.matrix() + (1.0 - p) * noisy.state.matrix());
}

}  // namespace qfilter
