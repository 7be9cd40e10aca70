#include "qfilter/pointer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qfilter/correlator.hpp"
#include "qfilter/error.hpp"

namespace qfilter {

namespace {

constexpr double kLostAmplitude = 1e-12;
constexpr double kTailWidths = 6.0;

std::int64_t snap_to_index(double value, double step, const char* what) {
  const double ratio = value / step;
  const double rounded = std::round(ratio);
  if (std::abs(ratio - rounded) > 1e-6 * std::max(1.0, std::abs(ratio))) {
    throw Error(ErrorKind::InvalidArgument,
                std::string(what) + " " + std::to_string(value) + " is not a multiple of the step");
  }
  return static_cast<std::int64_t>(rounded);
}

void check_spec(const LatticeSpec& spec) {
  if (!(spec.step > 0.0) || !std::isfinite(spec.step)) {
    throw Error(ErrorKind::InvalidArgument, "lattice step must be positive");
  }
  if (!(spec.grid_max > spec.grid_min)) {
    throw Error(ErrorKind::InvalidArgument, "lattice needs grid_max > grid_min");
  }
}

// Steps per unit length chosen so integer positions are lattice points.
std::int64_t steps_per_unit(double width, double points_per_width) {
  return static_cast<std::int64_t>(std::ceil(points_per_width / width));
}

}  // namespace

PointerLattice::PointerLattice(std::int64_t first_index, double step, CVector samples)
    : first_index_(first_index), step_(step), samples_(std::move(samples)) {
  if (!(step_ > 0.0)) throw Error(ErrorKind::InvalidArgument, "lattice step must be positive");
  if (samples_.size() < 2) throw Error(ErrorKind::InvalidArgument, "lattice needs at least two points");
}

PointerLattice PointerLattice::zeros(const LatticeSpec& spec) {
  check_spec(spec);
  const std::int64_t lo = snap_to_index(spec.grid_min, spec.step, "grid_min");
  const std::int64_t hi = snap_to_index(spec.grid_max, spec.step, "grid_max");
  return PointerLattice(lo, spec.step, CVector::Zero(static_cast<Eigen::Index>(hi - lo + 1)));
}

Complex PointerLattice::inner(const PointerLattice& other) const {
  if (other.first_index_ != first_index_ || other.samples_.size() != samples_.size() ||
      other.step_ != step_) {
    throw Error(ErrorKind::BadDimension, "inner product of lattices with different grids");
  }
  return samples_.dot(other.samples_) * step_;
}

double gaussian_amplitude(double x, double center, double sigma) {
  const double d = x - center;
  return std::pow(1.0 / (2.0 * std::numbers::pi * sigma * sigma), 0.25) *
         std::exp(-d * d / (4.0 * sigma * sigma));
}

PointerLattice gaussian_pointer(double sigma, const LatticeSpec& spec) {
  if (!(sigma > 0.0)) throw Error(ErrorKind::InvalidArgument, "pointer width must be positive");
  check_spec(spec);
  if (spec.step > sigma / 10.0 * (1.0 + 1e-12)) {
    throw Error(ErrorKind::LatticeTooCoarse, "lattice step " + std::to_string(spec.step) +
                                                 " exceeds sigma/10 = " + std::to_string(sigma / 10.0));
  }
  PointerLattice out = PointerLattice::zeros(spec);
  if (out.grid_min() > -kTailWidths * sigma || out.grid_max() < kTailWidths * sigma) {
    throw Error(ErrorKind::InvalidArgument, "grid does not cover +-6 sigma around the pointer");
  }
  CVector samples(static_cast<Eigen::Index>(out.size()));
  for (std::size_t m = 0; m < out.size(); ++m) {
    samples(static_cast<Eigen::Index>(m)) = gaussian_amplitude(out.x(m), 0.0, sigma);
  }
  samples /= std::sqrt(samples.squaredNorm() * spec.step);
  return PointerLattice(out.first_index(), spec.step, std::move(samples));
}

PointerLattice couple_and_shift(const PointerLattice& pointer, double shift) {
  const double ratio = shift / pointer.step();
  const double rounded = std::round(ratio);
  if (std::abs(ratio - rounded) > 1e-9 * std::max(1.0, std::abs(ratio))) {
    throw Error(ErrorKind::InvalidArgument, "shift " + std::to_string(shift) +
                                                " is not a multiple of the lattice step");
  }
  const auto offset = static_cast<std::int64_t>(rounded);
  const auto size = static_cast<std::int64_t>(pointer.size());
  const CVector& in = pointer.samples();
  CVector out = CVector::Zero(in.size());
  for (std::int64_t i = 0; i < size; ++i) {
    const std::int64_t target = i + offset;
    if (target < 0 || target >= size) {
      if (std::abs(in(i)) > kLostAmplitude) {
        throw Error(ErrorKind::ShiftOutOfRange,
                    "shift " + std::to_string(shift) + " moves the wavefunction off the grid");
      }
      continue;
    }
    out(target) = in(i);
  }
  return PointerLattice(pointer.first_index(), pointer.step(), std::move(out));
}

SharpKet::SharpKet(double center_, double width_) : center(center_), width(width_) {
  if (!(width > 0.0)) throw Error(ErrorKind::InvalidArgument, "sharp ket width must be positive");
}

bool SharpKet::sharp_for_separation(double separation) const noexcept {
  return width <= 0.1 * separation;
}

double sharp_overlap(const SharpKet& a, const SharpKet& b) {
  if (a.width != b.width) throw Error(ErrorKind::InvalidArgument, "sharp kets must share a width");
  const double d = a.center - b.center;
  return std::exp(-d * d / (8.0 * a.width * a.width));
}

PointerLattice sample_sharp_superposition(const LatticeSpec& spec, const std::vector<double>& centers,
                                          const std::vector<Complex>& coeffs, double width) {
  if (centers.size() != coeffs.size()) {
    throw Error(ErrorKind::BadDimension, "one coefficient per sharp ket required");
  }
  PointerLattice grid = PointerLattice::zeros(spec);
  CVector samples = CVector::Zero(static_cast<Eigen::Index>(grid.size()));
  for (std::size_t m = 0; m < grid.size(); ++m) {
    const double x = grid.x(m);
    Complex value = 0.0;
    for (std::size_t i = 0; i < centers.size(); ++i) {
      if (coeffs[i] != 0.0) value += coeffs[i] * gaussian_amplitude(x, centers[i], width);
    }
    samples(static_cast<Eigen::Index>(m)) = value;
  }
  return PointerLattice(grid.first_index(), grid.step(), std::move(samples));
}

double sharp_overlap_on_lattice(const SharpKet& a, const SharpKet& b) {
  if (a.width != b.width) throw Error(ErrorKind::InvalidArgument, "sharp kets must share a width");
  const double eps = a.width;
  const double step = 1.0 / static_cast<double>(steps_per_unit(eps, 20.0));
  const double reach = 10.0 * eps;
  const LatticeSpec spec{std::floor((std::min(a.center, b.center) - reach) / step) * step,
                         std::ceil((std::max(a.center, b.center) + reach) / step) * step, step};
  const PointerLattice ka = sample_sharp_superposition(spec, {a.center}, {1.0}, eps);
  const PointerLattice kb = sample_sharp_superposition(spec, {b.center}, {1.0}, eps);
  return ka.inner(kb).real();
}

RVector binary_decomposition_operator(std::size_t n_qubits) {
  if (n_qubits == 0 || n_qubits > 20) {
    throw Error(ErrorKind::BadDimension, "binary decomposition operator needs 1 <= n <= 20");
  }
  const std::size_t dim = std::size_t{1} << n_qubits;
  RVector diag = RVector::Zero(static_cast<Eigen::Index>(dim));
  for (std::size_t l = 1; l <= n_qubits; ++l) {
    const double weight = std::ldexp(1.0, static_cast<int>(l - 1));
    for (std::size_t b = 0; b < dim; ++b) {
      // (1 - sigma_z)/2 on qubit l is the projector onto |1>.
      const double z = ((b >> (l - 1)) & 1u) ? -1.0 : 1.0;
      diag(static_cast<Eigen::Index>(b)) += weight * (1.0 - z) / 2.0;
    }
  }
  return diag;
}

CouplingReport verify_discrete_coupling(std::size_t n_qubits, const PureState& phi, double width,
                                        std::size_t guard_margin) {
  if (n_qubits == 0) throw Error(ErrorKind::BadDimension, "coupling check needs n >= 1");
  if (n_qubits > 4) {
    throw Error(ErrorKind::OracleScaleExceeded, "lattice coupling check limited to N <= 16");
  }
  const std::size_t n = std::size_t{1} << n_qubits;
  if (phi.dim() != n) {
    throw Error(ErrorKind::BadDimension, "signal dimension " + std::to_string(phi.dim()) +
                                             " does not match 2^n = " + std::to_string(n));
  }
  if (!(width > 0.0)) throw Error(ErrorKind::InvalidArgument, "sharp ket width must be positive");
  if (static_cast<double>(guard_margin) < kTailWidths * width) {
    throw Error(ErrorKind::BoundaryArtifact,
                "guard margin " + std::to_string(guard_margin) + " cannot hold Gaussian tails of width " +
                    std::to_string(width));
  }

  const auto reach = static_cast<double>(n - 1 + guard_margin);
  const double step = 1.0 / static_cast<double>(steps_per_unit(width, 10.0));
  const LatticeSpec spec{-reach, reach, step};

  const double pointer_scale = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<double> centers(n);
  std::vector<Complex> coeffs(n);
  for (std::size_t k = 0; k < n; ++k) {
    centers[k] = static_cast<double>(k);
    coeffs[k] = pointer_scale * phi[k];
  }
  const PointerLattice signal = sample_sharp_superposition(spec, centers, coeffs, width);

  // Readout kets at every position a shifted label can reach.
  const auto span = static_cast<long long>(n) - 1;
  std::vector<PointerLattice> readout;
  readout.reserve(static_cast<std::size_t>(2 * span + 1));
  for (long long q = -span; q <= span; ++q) {
    readout.push_back(sample_sharp_superposition(spec, {static_cast<double>(q)}, {1.0}, width));
  }

  const RVector shifts = binary_decomposition_operator(n_qubits);
  const JointState exact = shift_entangle(phi);
  CMatrix lattice_joint = CMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j) {
    PointerLattice moved = signal;
    try {
      moved = couple_and_shift(signal, -shifts(static_cast<Eigen::Index>(j)));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ShiftOutOfRange) throw;
      throw Error(ErrorKind::BoundaryArtifact, e.what());
    }
    for (long long q = -span; q <= span; ++q) {
      const auto label = static_cast<Eigen::Index>(((q % static_cast<long long>(n)) + n) % n);
      lattice_joint(label, static_cast<Eigen::Index>(j)) +=
          readout[static_cast<std::size_t>(q + span)].inner(moved);
    }
  }

  CouplingReport report{n_qubits, width, guard_margin};
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t j = 0; j < n; ++j) {
      const double d = std::abs(lattice_joint(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(j)) -
                                exact.amplitude(m, j));
      report.joint_deviation = std::max(report.joint_deviation, d);
    }
  }
  const CVector lattice_lags = lattice_joint.transpose() * phi.amplitudes().conjugate();
  const CVector exact_lags = pointer_amplitudes(phi, phi);
  report.lag_deviation = (lattice_lags - exact_lags).cwiseAbs().maxCoeff();
  report.max_deviation = std::max(report.joint_deviation, report.lag_deviation);
  report.passed = report.max_deviation <= kCouplingTolerance;
  return report;
}

}  // namespace qfilter
