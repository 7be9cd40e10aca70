#include "qfilter/experiment.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "qfilter/correlator.hpp"
#include "qfilter/random.hpp"

namespace qfilter {

namespace {

// Keeps a random reference independent of a random signal drawn from the
// same seed.
constexpr std::uint64_t kReferenceSeedOffset = 0x9E3779B97F4A7C15ULL;

}  // namespace

std::size_t qubits_for_dim(std::size_t dim) {
  if (dim < 2 || !std::has_single_bit(dim)) {
    throw Error(ErrorKind::BadDimension,
                "dimension " + std::to_string(dim) + " is not a power of two >= 2");
  }
  return static_cast<std::size_t>(std::countr_zero(dim));
}

PureState resolve_signal(const SignalSource& source, std::size_t dim, std::uint64_t seed) {
  switch (source.kind) {
    case SignalSource::Kind::Uniform:
      return uniform_state(dim);
    case SignalSource::Kind::Basis:
      return basis_state(dim, source.basis_index);
    case SignalSource::Kind::Random: {
      if (dim < 2) throw Error(ErrorKind::BadDimension, "random state needs dimension >= 2");
      Rng rng(seed);
      return haar_state(dim, rng);
    }
    case SignalSource::Kind::Explicit:
      if (!source.state) throw Error(ErrorKind::InvalidArgument, "explicit signal source has no state");
      if (source.state->dim() != dim) {
        throw Error(ErrorKind::BadDimension, "state '" + source.description + "' has dimension " +
                                                 std::to_string(source.state->dim()) + ", expected " +
                                                 std::to_string(dim));
      }
      return *source.state;
  }
  throw Error(ErrorKind::InvalidArgument, "unknown signal source");
}

PureState resolve_reference(const ExperimentConfig& config, const PureState& signal) {
  if (!config.reference) return signal;
  return resolve_signal(*config.reference, config.dim, config.seed + kReferenceSeedOffset);
}

NoiseModel resolve_noise(const NoiseSpec& spec, std::size_t dim) {
  switch (spec.kind) {
    case NoiseSpec::Kind::Identity:
      return NoiseModel::identity(dim);
    case NoiseSpec::Kind::CollectivePhaseFlip: {
      const std::size_t n = spec.n_qubits == 0 ? qubits_for_dim(dim) : spec.n_qubits;
      if (n >= 64 || (std::size_t{1} << n) != dim) {
        throw Error(ErrorKind::BadDimension, "phase flip on " + std::to_string(n) +
                                                 " qubits does not act on dimension " +
                                                 std::to_string(dim));
      }
      return collective_phase_flip(n);
    }
    case NoiseSpec::Kind::Kraus: {
      NoiseModel model = NoiseModel::kraus(spec.operators, spec.description);
      if (model.dim() != dim) {
        throw Error(ErrorKind::BadDimension, "Kraus operators have dimension " +
                                                 std::to_string(model.dim()) + ", expected " +
                                                 std::to_string(dim));
      }
      return model;
    }
  }
  throw Error(ErrorKind::InvalidArgument, "unknown noise kind");
}

ExperimentReport run_filter(const ExperimentConfig& config) {
  if (!(config.p >= 0.0 && config.p <= 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "p must lie in [0, 1]");
  }
  if (!(config.tolerance > 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");

  const PureState signal = resolve_signal(config.signal, config.dim, config.seed);
  const PureState reference = resolve_reference(config, signal);
  const NoiseModel noise = resolve_noise(config.noise, config.dim);

  const FilterDecomposition parts = filter_decomposition(config.p, signal, noise, reference);
  if (!parts.signal_component) {
    throw Error(ErrorKind::ImpossiblePostselection,
                "reference is uncorrelated with the signal at every lag");
  }

  const DensityMatrix s = density_from_pure(signal);
  const DensityMatrix rho = mix_signal_noise(config.p, s, noise);

  ExperimentReport r;
  r.C_signal = parts.signal_trace;
  r.C_noise = parts.noise_trace;
  r.postselect_prob = parts.total_trace;
  r.F_before = fidelity(rho, s);
  if (r.F_before < tol::kPostselect) {
    throw Error(ErrorKind::ImpossiblePostselection, "the noisy input holds no overlap with the signal");
  }
  r.F_after = fidelity(parts.filtered_mixture, *parts.signal_component);
  r.fidelity_gain = r.F_after / r.F_before;
  r.bound_rhs = std::sqrt(config.p * r.C_signal / r.postselect_prob);
  r.expected_trials = 1.0 / r.postselect_prob;
  return r;
}

ExperimentReport run_phase_flip_demo(std::size_t n_qubits, double p) {
  if (n_qubits < 1 || n_qubits > 8) {
    throw Error(ErrorKind::BadDimension, "phase flip demo needs 1 <= n <= 8");
  }
  if (p == 0.0) {
    throw Error(ErrorKind::ImpossiblePostselection,
                "p = 0: no signal, and the reference is uncorrelated with the noise");
  }
  if (!(p > 0.0 && p <= 1.0)) throw Error(ErrorKind::InvalidArgument, "p must lie in (0, 1]");

  ExperimentConfig config;
  config.dim = std::size_t{1} << n_qubits;
  config.noise.n_qubits = n_qubits;
  config.p = p;
  return run_filter(config);
}

std::string_view to_string(SweepAxis axis) noexcept {
  switch (axis) {
    case SweepAxis::P: return "p";
    case SweepAxis::NQubits: return "n";
    case SweepAxis::Epsilon: return "epsilon";
  }
  return "unknown";
}

namespace {

SweepRow run_row(const ExperimentConfig& base, SweepAxis axis, double value) {
  SweepRow row;
  row.axis = axis;
  row.value = value;
  try {
    ExperimentConfig config = base;
    switch (axis) {
      case SweepAxis::P:
        config.p = value;
        row.report = run_filter(config);
        break;
      case SweepAxis::NQubits: {
        if (!(value >= 1.0 && value <= 10.0) || value != std::floor(value)) {
          throw Error(ErrorKind::InvalidArgument, "qubit count must be an integer in [1, 10]");
        }
        const auto n = static_cast<std::size_t>(value);
        config.dim = std::size_t{1} << n;
        if (config.noise.kind == NoiseSpec::Kind::CollectivePhaseFlip) config.noise.n_qubits = n;
        row.report = run_filter(config);
        break;
      }
      case SweepAxis::Epsilon: {
        const PureState phi = resolve_signal(config.signal, config.dim, config.seed);
        row.coupling = verify_discrete_coupling(qubits_for_dim(config.dim), phi, value);
        break;
      }
    }
  } catch (const Error& e) {
    row.report.reset();
    row.coupling.reset();
    row.error = e.kind();
    row.error_message = e.what();
  }
  return row;
}

}  // namespace

std::vector<SweepRow> run_sweep(const ExperimentConfig& config, SweepAxis axis,
                                const std::vector<double>& values) {
  if (values.empty()) throw Error(ErrorKind::InvalidArgument, "sweep needs at least one value");
  std::vector<SweepRow> rows;
  rows.reserve(values.size());
  for (double v : values) rows.push_back(run_row(config, axis, v));
  return rows;
}

}  // namespace qfilter
