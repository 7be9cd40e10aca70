#include "qfilter/verify.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "qfilter/error.hpp"
#include "qfilter/experiment.hpp"
#include "qfilter/noise.hpp"
#include "qfilter/pointer.hpp"
#include "qfilter/random.hpp"

namespace qfilter {

FilterOutput postselect_filter_via_unitary(const DensityMatrix& rho, const PureState& reference) {
  const std::size_t n = rho.dim();
  if (reference.dim() != n) throw Error(ErrorKind::BadDimension, "reference dimension mismatch");
  const auto nn = static_cast<Eigen::Index>(n);
  const CMatrix u = build_full_unitary(n);

  const CMatrix pointer = CMatrix::Constant(nn, nn, 1.0 / static_cast<double>(n));
  CMatrix joint(nn * nn, nn * nn);
  // Signal-major ordering: index k * N + j.
  for (Eigen::Index a = 0; a < nn; ++a)
    for (Eigen::Index b = 0; b < nn; ++b)
      joint.block(a * nn, b * nn, nn, nn) = rho.matrix()(a, b) * pointer;
  const CMatrix evolved = u * joint * u.adjoint();

  const CVector& ref = reference.amplitudes();
  const CMatrix projector =
      Eigen::kroneckerProduct(CMatrix(ref * ref.adjoint()), CMatrix::Identity(nn, nn)).eval();
  const CMatrix projected = projector * evolved * projector;

  CMatrix raw = CMatrix::Zero(nn, nn);
  for (Eigen::Index k = 0; k < nn; ++k) raw += projected.block(k * nn, k * nn, nn, nn);

  FilterOutput out{DensityMatrix::trusted(raw), 0.0, std::nullopt};
  out.postselect_prob = out.raw.trace();
  if (out.postselect_prob >= tol::kPostselect) out.normalized = out.raw.normalized();
  return out;
}

bool VerifySummary::passed() const noexcept {
  return std::all_of(properties.begin(), properties.end(),
                     [](const PropertyResult& p) { return p.passed; });
}

namespace {

class Tracker {
 public:
  Tracker(std::string name, double threshold) : result_{std::move(name), 0.0, threshold, 0, false} {}

  void observe(double deviation) {
    ++result_.samples;
    if (std::isnan(deviation)) deviation = INFINITY;
    result_.max_deviation = std::max(result_.max_deviation, deviation);
  }

  PropertyResult finish() {
    result_.passed = result_.samples > 0 && result_.max_deviation <= result_.threshold;
    return result_;
  }

 private:
  PropertyResult result_;
};

struct Plan {
  std::size_t random_pairs;
  std::vector<std::size_t> dims;
  std::vector<std::size_t> oracle_dims;
  std::size_t mixtures;
  std::size_t max_spectrum_qubits;
  std::size_t max_coupling_qubits;
};

Plan plan_for(VerifyScale scale) {
  if (scale == VerifyScale::Quick) return {100, {2, 4, 8}, {2, 4}, 100, 6, 2};
  return {1000, {2, 4, 8, 16}, {2, 4, 8}, 500, 10, 3};
}

CMatrix random_matrix(std::size_t dim, Rng& rng) {
  std::normal_distribution<double> gauss;
  CMatrix m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = Complex(gauss(rng), gauss(rng));
  return m;
}

// Plain and general correlation coefficients, the channel and its oracle.
void check_correlator(const Plan& plan, Rng& rng, std::vector<PropertyResult>& out) {
  Tracker bounds("correlation-bounds", 1e-12);
  Tracker phase("global-phase-invariance", 1e-12);
  Tracker trace("trace-formula", 1e-10);
  Tracker positivity("filter-output-positivity", 1e-10);
  Tracker linearity("channel-linearity", 1e-10);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  for (std::size_t dim : plan.dims) {
    for (std::size_t s = 0; s < plan.random_pairs; ++s) {
      const PureState ref = haar_state(dim, rng);
      const PureState phi = haar_state(dim, rng);
      const double c = correlation_coefficient(ref, phi);
      bounds.observe(std::max({0.0, -c, c - 1.0}));

      const PureState ref_rot = make_pure(ref.amplitudes() * std::polar(1.0, angle(rng)));
      const PureState phi_rot = make_pure(phi.amplitudes() * std::polar(1.0, angle(rng)));
      phase.observe(std::abs(correlation_coefficient(ref_rot, phi_rot) - c));

      const FilterOutput f = postselect_filter(density_from_pure(phi), ref);
      trace.observe(std::abs(f.raw.trace() - c));
      positivity.observe(std::max({0.0, -f.raw.min_eigenvalue(), f.postselect_prob - 1.0}));
    }
    for (std::size_t s = 0; s < plan.random_pairs / 10 + 1; ++s) {
      const PureState ref = haar_state(dim, rng);
      const DensityMatrix r1 = random_density(dim, 3, rng);
      const DensityMatrix r2 = random_density(dim, 2, rng);
      const double a = unit(rng);
      const DensityMatrix mix = DensityMatrix::trusted(a * r1.matrix() + (1.0 - a) * r2.matrix());
      const CMatrix lhs = postselect_filter(mix, ref).raw.matrix();
      const CMatrix rhs = a * postselect_filter(r1, ref).raw.matrix() +
                          (1.0 - a) * postselect_filter(r2, ref).raw.matrix();
      linearity.observe(max_abs_diff(lhs, rhs));
    }
  }
  out.push_back(bounds.finish());
  out.push_back(phase.finish());
  out.push_back(trace.finish());
  out.push_back(positivity.finish());
  out.push_back(linearity.finish());

  for (std::size_t dim : plan.oracle_dims) {
    Tracker oracle("oracle-equivalence-N" + std::to_string(dim), 1e-10);
    Tracker entangle("shift-entangle-vs-unitary-N" + std::to_string(dim), 1e-10);
    const CMatrix u = build_full_unitary(dim);
    const auto nn = static_cast<Eigen::Index>(dim);
    entangle.observe(max_abs_diff(u.adjoint() * u, CMatrix::Identity(nn * nn, nn * nn)));
    for (std::size_t s = 0; s < 20; ++s) {
      const PureState ref = haar_state(dim, rng);
      const PureState phi = haar_state(dim, rng);
      const CVector product =
          Eigen::kroneckerProduct(phi.amplitudes(),
                                  CVector::Constant(nn, 1.0 / std::sqrt(static_cast<double>(dim))))
              .eval();
      entangle.observe((u * product - shift_entangle(phi).amplitudes()).cwiseAbs().maxCoeff());

      const DensityMatrix rho = s % 2 == 0 ? density_from_pure(phi) : random_density(dim, 3, rng);
      oracle.observe(max_abs_diff(postselect_filter(rho, ref).raw.matrix(),
                                  postselect_filter_via_unitary(rho, ref).raw.matrix()));
    }
    out.push_back(oracle.finish());
    out.push_back(entangle.finish());
  }
}

void check_qstate(const Plan& plan, Rng& rng, std::vector<PropertyResult>& out) {
  Tracker rank_one("pure-density-rank-one", 1e-10);
  Tracker symmetry("fidelity-symmetry", 1e-9);
  Tracker shortcut("fidelity-pure-shortcut", 1e-9);
  Tracker linear("apply-operator-linearity", 1e-10);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  for (std::size_t dim : plan.dims) {
    for (std::size_t s = 0; s < plan.random_pairs / 10 + 1; ++s) {
      const PureState phi = haar_state(dim, rng);
      const DensityMatrix d = density_from_pure(phi);
      const RVector ev = hermitian_eigen(d.matrix()).values;
      rank_one.observe(std::max({max_abs_diff(d.matrix(), d.matrix().adjoint()),
                                 std::abs(d.trace() - 1.0), std::abs(ev(ev.size() - 2)),
                                 std::max(0.0, -ev(0))}));

      const DensityMatrix r1 = random_density(dim, 1 + s % dim, rng);
      const DensityMatrix r2 = random_density(dim, 1 + (s + 1) % dim, rng);
      symmetry.observe(std::abs(fidelity(r1, r2) - fidelity(r2, r1)));
      shortcut.observe(std::abs(fidelity(r1, d) - fidelity_with_pure(r1, phi)));

      const CMatrix op = random_matrix(dim, rng);
      const double a = unit(rng);
      const double b = unit(rng);
      const CMatrix lhs =
          apply_operator(op, DensityMatrix::trusted(a * r1.matrix() + b * r2.matrix())).matrix();
      const CMatrix rhs = a * apply_operator(op, r1).matrix() + b * apply_operator(op, r2).matrix();
      linear.observe(max_abs_diff(lhs, rhs) / std::max(1.0, op.squaredNorm()));
    }
  }
  out.push_back(rank_one.finish());
  out.push_back(symmetry.finish());
  out.push_back(shortcut.finish());
  out.push_back(linear.finish());
}

void check_noise(const Plan& plan, Rng& rng, std::vector<PropertyResult>& out) {
  Tracker structure("collective-phase-flip-structure", 0.0);
  for (std::size_t n = 1; n <= plan.max_spectrum_qubits; ++n) {
    const CMatrix e = collective_phase_flip(n).operators().front();
    const CMatrix diag = e.diagonal().asDiagonal();
    const auto last = e.rows() - 1;
    structure.observe(std::max({max_abs_diff(e, e.adjoint()), max_abs_diff(e, diag),
                                std::abs(e(0, 0) - 1.0), std::abs(e(last, last) + 1.0)}));
  }
  out.push_back(structure.finish());

  Tracker psd("apply-noise-positivity", 1e-10);
  Tracker mix_trace("mix-signal-noise-trace", 1e-10);
  Tracker preserving("kraus-trace-preserving", 1e-8);
  for (std::size_t dim : plan.dims) {
    for (std::size_t s = 0; s < plan.random_pairs / 20 + 1; ++s) {
      const DensityMatrix rho = random_density(dim, 2, rng);
      const NoiseModel arbitrary =
          NoiseModel::kraus({random_matrix(dim, rng), random_matrix(dim, rng)}, "random");
      const DensityMatrix noisy = apply_noise(arbitrary, rho).state;
      psd.observe(std::max({0.0, -noisy.min_eigenvalue(),
                            max_abs_diff(noisy.matrix(), noisy.matrix().adjoint())}));

      const CMatrix u = haar_unitary(dim, rng);
      const double lambda = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
      const NoiseModel channel = NoiseModel::kraus(
          {std::sqrt(1.0 - lambda) * CMatrix::Identity(u.rows(), u.cols()), std::sqrt(lambda) * u},
          "mixed-unitary", true);
      const NoisyState kept = apply_noise(channel, rho);
      preserving.observe(std::abs(kept.raw_trace - 1.0) + (kept.renormalized ? 1.0 : 0.0));

      const PureState phi = haar_state(dim, rng);
      const NoiseModel unitary = NoiseModel::single(u, "unitary");
      for (int step = 0; step <= 10; ++step) {
        const DensityMatrix mix = mix_signal_noise(step / 10.0, density_from_pure(phi), unitary);
        mix_trace.observe(std::abs(mix.trace() - 1.0));
      }
    }
  }
  out.push_back(psd.finish());
  out.push_back(mix_trace.finish());
  out.push_back(preserving.finish());
}

void check_filter_gain(const Plan& plan, Rng& rng, std::vector<PropertyResult>& out) {
  Tracker bound("strong-concavity-bound", 1e-9);
  Tracker weights("decomposition-reconstruction", 1e-10);
  std::uniform_real_distribution<double> mix_p(0.05, 0.95);
  std::size_t done = 0;
  std::size_t attempts = 0;
  while (done < plan.mixtures && attempts < plan.mixtures * 4) {
    ++attempts;
    const std::size_t dim = plan.dims[attempts % plan.dims.size()];
    const PureState phi = haar_state(dim, rng);
    const PureState ref = haar_state(dim, rng);
    const NoiseModel noise = NoiseModel::single(haar_unitary(dim, rng), "unitary");
    const double p = mix_p(rng);
    const FilterDecomposition d = filter_decomposition(p, phi, noise, ref);
    if (d.total_trace < 1e-6 || !d.signal_component) continue;
    ++done;
    const double rhs = std::sqrt(p * d.signal_trace / d.total_trace);
    bound.observe(std::max(0.0, rhs - fidelity(d.filtered_mixture, *d.signal_component)));

    CMatrix rebuilt = d.signal_weight * d.signal_component->matrix();
    if (d.noise_component) rebuilt += d.noise_weight * d.noise_component->matrix();
    weights.observe(std::max(max_abs_diff(rebuilt, d.filtered_mixture.matrix()),
                             std::abs(d.signal_weight + d.noise_weight - 1.0)));
  }
  out.push_back(bound.finish());
  out.push_back(weights.finish());

  Tracker gain("phase-flip-gain", 1e-9);
  for (std::size_t n = 1; n <= 3; ++n) {
    for (int step = 1; step <= 9; ++step) {
      const double p = step / 10.0;
      const ExperimentReport r = run_phase_flip_demo(n, p);
      gain.observe(std::max({std::abs(r.F_before - std::sqrt(p)), std::abs(r.F_after - 1.0),
                             std::abs(r.postselect_prob - p),
                             std::abs(r.fidelity_gain - 1.0 / std::sqrt(p)),
                             std::abs(r.expected_trials - 1.0 / p)}));
    }
  }
  out.push_back(gain.finish());
}

void check_pointer(const Plan& plan, Rng& rng, std::vector<PropertyResult>& out) {
  Tracker spectrum("binary-operator-spectrum", 0.0);
  for (std::size_t n = 1; n <= plan.max_spectrum_qubits; ++n) {
    RVector diag = binary_decomposition_operator(n);
    std::sort(diag.data(), diag.data() + diag.size());
    double worst = 0.0;
    for (Eigen::Index i = 0; i < diag.size(); ++i) {
      worst = std::max(worst, std::abs(diag(i) - static_cast<double>(i)));
    }
    spectrum.observe(worst);
  }
  out.push_back(spectrum.finish());

  Tracker shift_norm("couple-and-shift-norm", 1e-9);
  const PointerLattice eta = gaussian_pointer(1.0, {-20.0, 20.0, 0.01});
  for (double a : {0.0, 1.0, -2.5, 3.0}) {
    shift_norm.observe(std::abs(couple_and_shift(eta, a).norm_squared() - eta.norm_squared()));
  }
  out.push_back(shift_norm.finish());

  Tracker overlap("sharp-overlap-closed-form", 1e-6);
  for (double eps : {0.02, 0.05, 0.1}) {
    for (double d : {0.0, 0.5, 1.0, 2.0}) {
      const SharpKet a(0.0, eps);
      const SharpKet b(d, eps);
      overlap.observe(std::abs(sharp_overlap_on_lattice(a, b) - sharp_overlap(a, b)));
    }
  }
  out.push_back(overlap.finish());

  Tracker coupling("discrete-coupling-eps-0.02", kCouplingTolerance);
  // Below ~1e-15 the deviation is round-off, so ordering is only checked
  // above that floor.
  Tracker monotone("discrete-coupling-monotone-in-eps", kCouplingRoundoffFloor);
  for (std::size_t n = 1; n <= plan.max_coupling_qubits; ++n) {
    const PureState phi = haar_state(std::size_t{1} << n, rng);
    std::array<double, 3> devs{};
    const std::array<double, 3> widths{0.1, 0.05, 0.02};
    for (std::size_t i = 0; i < widths.size(); ++i) {
      devs[i] = verify_discrete_coupling(n, phi, widths[i]).max_deviation;
    }
    coupling.observe(devs[2]);
    monotone.observe(std::max({0.0, devs[1] - devs[0], devs[2] - devs[1]}));
  }
  out.push_back(coupling.finish());
  out.push_back(monotone.finish());
}

}  // namespace

VerifySummary run_verify(VerifyScale scale, std::uint64_t seed) {
  const Plan plan = plan_for(scale);
  Rng rng(seed);
  VerifySummary summary;
  check_qstate(plan, rng, summary.properties);
  check_correlator(plan, rng, summary.properties);
  check_noise(plan, rng, summary.properties);
  check_filter_gain(plan, rng, summary.properties);
  check_pointer(plan, rng, summary.properties);
  return summary;
}

}  // namespace qfilter
