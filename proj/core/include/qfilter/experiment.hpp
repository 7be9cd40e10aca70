#pragma once

// End-to-end filtering experiments: build a signal, a reference and a
// noise model, mix, filter, and report fidelities before and after.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qfilter/error.hpp"
#include "qfilter/noise.hpp"
#include "qfilter/pointer.hpp"
#include "qfilter/qstate.hpp"

namespace qfilter {

struct SignalSource {
  enum class Kind { Uniform, Basis, Random, Explicit };
  Kind kind = Kind::Uniform;
  std::size_t basis_index = 0;      // Kind::Basis
  std::optional<PureState> state;  // Kind::Explicit (loaded from a file)
  std::string description = "uniform";
};

struct NoiseSpec {
  enum class Kind { Identity, CollectivePhaseFlip, Kraus };
  Kind kind = Kind::CollectivePhaseFlip;
  /// Qubit count for the phase flip; 0 derives it from the dimension.
  std::size_t n_qubits = 0;
  std::vector<CMatrix> operators;  // Kind::Kraus
  std::string description = "collective-phase-flip";
};

enum class ReportFormat { Table, Json, Csv };

struct ExperimentConfig {
  std::size_t dim = 4;
  SignalSource signal;
  /// Defaults to the signal.
  std::optional<SignalSource> reference;
  NoiseSpec noise;
  double p = 0.5;
  std::uint64_t seed = 0;
  double tolerance = 1e-9;
  ReportFormat format = ReportFormat::Table;
};

struct ExperimentReport {
  double C_signal = 0.0;         // C(reference, signal)
  double C_noise = 0.0;          // tr E(N) for the unit-trace noise branch
  double postselect_prob = 0.0;  // tr E(rho)
  double F_before = 0.0;         // F(rho, S)
  double F_after = 0.0;          // F(E~(rho), E~(S))
  double fidelity_gain = 0.0;    // F_after / F_before
  double bound_rhs = 0.0;        // sqrt(p C_signal / postselect_prob)
  double expected_trials = 0.0;  // 1 / postselect_prob

  bool bound_holds(double tolerance) const noexcept { return F_after >= bound_rhs - tolerance; }
};

/// Resolves a signal source to a state of dimension `dim`. Random states
/// are drawn from `seed`.
PureState resolve_signal(const SignalSource& source, std::size_t dim, std::uint64_t seed);

/// The configured reference, or `signal` when none is set. A random
/// reference uses a seed stream independent of the signal's.
PureState resolve_reference(const ExperimentConfig& config, const PureState& signal);

NoiseModel resolve_noise(const NoiseSpec& spec, std::size_t dim);

/// log2(dim), or BadDimension when dim is not a power of two.
std::size_t qubits_for_dim(std::size_t dim);

/// Deterministic for a given config. Throws InvalidArgument for p outside
/// [0, 1] or a non-positive tolerance, and ImpossiblePostselection when
/// the reference is never post-selected or the mixture holds no signal.
ExperimentReport run_filter(const ExperimentConfig& config);

/// Uniform signal as its own reference under collective phase flip noise.
/// Requires 1 <= n <= 8 and 0 < p <= 1; p = 0 is ImpossiblePostselection.
ExperimentReport run_phase_flip_demo(std::size_t n_qubits, double p);

enum class SweepAxis { P, NQubits, Epsilon };

std::string_view to_string(SweepAxis axis) noexcept;

struct SweepRow {
  SweepAxis axis = SweepAxis::P;
  double value = 0.0;
  std::optional<ExperimentReport> report;    // p and n axes
  std::optional<CouplingReport> coupling;    // epsilon axis
  std::optional<ErrorKind> error;
  std::string error_message;

  bool ok() const noexcept { return !error.has_value(); }
};

/// One row per value, in input order. A failing value is recorded in its
/// row and the sweep continues. Throws InvalidArgument for an empty list.
std::vector<SweepRow> run_sweep(const ExperimentConfig& config, SweepAxis axis,
                                const std::vector<double>& values);

}  // namespace qfilter
