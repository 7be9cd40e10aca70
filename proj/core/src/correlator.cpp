#include "qfilter/correlator.hpp"

#include <cmath>
#include <string>

#include "qfilter/error.hpp"
#include "qfilter/noise.hpp"

namespace qfilter {

namespace {

std::size_t reduce_lag(long long lag, std::size_t n) {
  const auto m = static_cast<long long>(n);
  return static_cast<std::size_t>(((lag % m) + m) % m);
}

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw Error(ErrorKind::BadDimension, std::string(what) + ": dimensions " + std::to_string(a) +
                                             " and " + std::to_string(b) + " differ");
  }
}

// <S_j ref | v> for an arbitrary (possibly unnormalized) vector v.
Complex shifted_overlap(const CVector& ref, const CVector& v, std::size_t lag) {
  const auto n = static_cast<std::size_t>(ref.size());
  Complex sum = 0.0;
  for (std::size_t m = 0; m < n; ++m) {
    // (S_j ref)(m) = ref(m - j)
    sum += std::conj(ref(static_cast<Eigen::Index>((m + n - lag) % n))) *
           v(static_cast<Eigen::Index>(m));
  }
  return sum;
}

double lag_average(const CVector& ref, const CVector& v) {
  const auto n = static_cast<std::size_t>(ref.size());
  double total = 0.0;
  for (std::size_t j = 0; j < n; ++j) total += std::norm(shifted_overlap(ref, v, j));
  return total / static_cast<double>(n);
}

CVector lag_amplitudes(const CVector& v, const CVector& ref) {
  const auto n = static_cast<std::size_t>(ref.size());
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  CVector c(static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j) c(static_cast<Eigen::Index>(j)) = scale * shifted_overlap(ref, v, j);
  return c;
}

FilterOutput make_output(const CMatrix& raw_matrix) {
  FilterOutput out{DensityMatrix::trusted(raw_matrix), 0.0, std::nullopt};
  out.postselect_prob = out.raw.trace();
  if (out.postselect_prob >= tol::kPostselect) out.normalized = out.raw.normalized();
  return out;
}

}  // namespace

PureState cyclic_shift(const PureState& phi, long long lag) {
  const std::size_t n = phi.dim();
  const std::size_t j = reduce_lag(lag, n);
  CVector out(static_cast<Eigen::Index>(n));
  for (std::size_t m = 0; m < n; ++m) {
    out(static_cast<Eigen::Index>(m)) = phi[(m + n - j) % n];
  }
  return make_pure(std::move(out));
}

std::vector<Complex> lag_overlaps(const PureState& reference, const PureState& state) {
  require_same_dim(reference.dim(), state.dim(), "lag_overlaps");
  std::vector<Complex> out(reference.dim());
  for (std::size_t j = 0; j < out.size(); ++j) {
    out[j] = shifted_overlap(reference.amplitudes(), state.amplitudes(), j);
  }
  return out;
}

double correlation_coefficient(const PureState& reference, const PureState& state) {
  require_same_dim(reference.dim(), state.dim(), "correlation_coefficient");
  return lag_average(reference.amplitudes(), state.amplitudes());
}

double correlation_coefficient_general(const PureState& reference, const CMatrix& op,
                                       const PureState& phi) {
  require_same_dim(reference.dim(), phi.dim(), "correlation_coefficient_general");
  if (op.rows() != op.cols() || static_cast<std::size_t>(op.rows()) != phi.dim()) {
    throw Error(ErrorKind::BadDimension, "correlation_coefficient_general: operator shape mismatch");
  }
  const CVector image = op * phi.amplitudes();
  if (image.norm() == 0.0) return 0.0;
  return lag_average(reference.amplitudes(), image);
}

JointState::JointState(std::size_t signal_dim, CVector amplitudes)
    : signal_dim_(signal_dim), amplitudes_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amplitudes_.size()) != signal_dim_ * signal_dim_) {
    throw Error(ErrorKind::BadDimension, "joint state needs N^2 amplitudes");
  }
  if (std::abs(amplitudes_.norm() - 1.0) > tol::kEquality) {
    throw Error(ErrorKind::DegenerateState, "joint state is not normalized");
  }
}

JointState shift_entangle(const PureState& phi) {
  const std::size_t n = phi.dim();
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  CVector amps = CVector::Zero(static_cast<Eigen::Index>(n * n));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t target = (k + n - j) % n;
      amps(static_cast<Eigen::Index>(target * n + j)) += scale * phi[k];
    }
  }
  return JointState(n, std::move(amps));
}

CMatrix build_full_unitary(std::size_t dim) {
  if (dim > kMaxOracleDim) {
    throw Error(ErrorKind::OracleScaleExceeded,
                "explicit controlled shift limited to N <= " + std::to_string(kMaxOracleDim));
  }
  if (dim < 2) throw Error(ErrorKind::BadDimension, "controlled shift needs N >= 2");
  const auto size = static_cast<Eigen::Index>(dim * dim);
  CMatrix u = CMatrix::Zero(size, size);
  for (std::size_t k = 0; k < dim; ++k) {
    for (std::size_t j = 0; j < dim; ++j) {
      const std::size_t from = k * dim + j;
      const std::size_t to = ((k + dim - j) % dim) * dim + j;
      u(static_cast<Eigen::Index>(to), static_cast<Eigen::Index>(from)) = 1.0;
    }
  }
  return u;
}

CVector pointer_amplitudes(const PureState& phi, const PureState& reference) {
  require_same_dim(reference.dim(), phi.dim(), "pointer_amplitudes");
  return lag_amplitudes(phi.amplitudes(), reference.amplitudes());
}

FilterOutput postselect_filter(const DensityMatrix& rho, const PureState& reference) {
  require_same_dim(reference.dim(), rho.dim(), "postselect_filter");
  if (!rho.is_normalized(tol::kInput)) {
    throw Error(ErrorKind::InvalidDensity, "postselect_filter: input must have unit trace");
  }
  const auto n = static_cast<Eigen::Index>(rho.dim());
  const HermitianEigen eig = hermitian_eigen(rho.matrix());
  CMatrix raw = CMatrix::Zero(n, n);
  for (Eigen::Index b = 0; b < n; ++b) {
    const double weight = eig.values(b);
    if (weight == 0.0) continue;
    const CVector c = lag_amplitudes(eig.vectors.col(b), reference.amplitudes());
    raw += weight * (c * c.adjoint());
  }
  return make_output(raw);
}

FilterDecomposition filter_decomposition(double p, const PureState& phi, const NoiseModel& noise,
                                         const PureState& reference) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "filter_decomposition: p must lie in [0, 1]");
  }
  const DensityMatrix signal = density_from_pure(phi);
  const NoisyState noisy = apply_noise(noise, signal);
  const DensityMatrix rho =
      DensityMatrix::trusted(p * signal.matrix() + (1.0 - p) * noisy.state.matrix());

  const FilterOutput signal_out = postselect_filter(signal, reference);
  const FilterOutput noise_out = postselect_filter(noisy.state, reference);
  const FilterOutput mixture_out = postselect_filter(rho, reference);
  if (mixture_out.postselect_prob < tol::kPostselect || !mixture_out.normalized) {
    throw Error(ErrorKind::ImpossiblePostselection,
                "reference is never post-selected (probability " +
                    std::to_string(mixture_out.postselect_prob) + ")");
  }

  FilterDecomposition d{.signal_component = signal_out.normalized,
                        .noise_component = noise_out.normalized,
                        .filtered_mixture = *mixture_out.normalized};
  d.signal_trace = signal_out.postselect_prob;
  d.noise_trace = noise_out.postselect_prob;
  d.total_trace = mixture_out.postselect_prob;
  d.signal_weight = p * d.signal_trace / d.total_trace;
  d.noise_weight = (1.0 - p) * d.noise_trace / d.total_trace;
  return d;
}

}  // namespace qfilter
