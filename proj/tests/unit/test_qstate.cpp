#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qfilter/error.hpp"
#include "qfilter/noise.hpp"
#include "qfilter/qstate.hpp"
#include "qfilter/random.hpp"

using namespace qfilter;

namespace {

CVector vec(std::initializer_list<Complex> values) {
  CVector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (const Complex& c : values) v(i++) = c;
  return v;
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::ParseError;
}

}  // namespace

TEST_SUITE("qstate") {

TEST_CASE("make_pure normalizes and flags rescaled input") {
  const PureState e0 = make_pure(vec({1.0, 0.0}));
  CHECK(e0[0] == Complex(1.0));
  CHECK(e0[1] == Complex(0.0));
  CHECK_FALSE(e0.renormalized());

  const PureState u = make_pure(vec({1.0, 1.0, 1.0, 1.0}));
  for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(u[k] - 0.5) < 1e-15);
  CHECK(u.renormalized());

  const PureState scaled = make_pure(vec({2.0, 0.0}));
  CHECK(std::abs(scaled[0] - 1.0) < 1e-15);
  CHECK(scaled.renormalized());
}

TEST_CASE("make_pure rejects degenerate input") {
  CHECK(kind_of([] { make_pure(vec({0.0, 0.0})); }) == ErrorKind::DegenerateState);
  CHECK(kind_of([] { make_pure(vec({1.0})); }) == ErrorKind::BadDimension);
  CHECK(kind_of([] { make_pure(vec({NAN, 1.0})); }) == ErrorKind::DegenerateState);
}

TEST_CASE("density_from_pure examples") {
  const DensityMatrix d0 = density_from_pure(basis_state(2, 0));
  CHECK(max_abs_diff(d0.matrix(), (CMatrix(2, 2) << 1, 0, 0, 0).finished()) == 0.0);

  const DensityMatrix du = density_from_pure(uniform_state(2));
  CHECK(max_abs_diff(du.matrix(), CMatrix::Constant(2, 2, 0.5)) < 1e-15);

  // Outer product oracle: phi phi^dagger with phi = (1, i)/sqrt 2.
  const double r = 1.0 / std::sqrt(2.0);
  const DensityMatrix dy = density_from_pure(make_pure(vec({r, Complex(0.0, r)})));
  CMatrix expected(2, 2);
  expected << 0.5, Complex(0.0, -0.5), Complex(0.0, 0.5), 0.5;
  CHECK(max_abs_diff(dy.matrix(), expected) < 1e-15);
}

TEST_CASE("density_from_pure is a rank-one projector for random states") {
  Rng rng(7);
  for (std::size_t dim : {2, 3, 8, 16}) {
    for (int s = 0; s < 25; ++s) {
      const DensityMatrix d = density_from_pure(haar_state(dim, rng));
      const RVector ev = hermitian_eigen(d.matrix()).values;
      CHECK(max_abs_diff(d.matrix(), d.matrix().adjoint()) <= 1e-10);
      CHECK(std::abs(d.trace() - 1.0) <= 1e-10);
      CHECK(ev(0) >= -1e-10);
      CHECK(std::abs(ev(ev.size() - 2)) <= 1e-10);
    }
  }
}

TEST_CASE("DensityMatrix validation") {
  CHECK(kind_of([] { DensityMatrix::from_matrix((CMatrix(2, 2) << 1, 1, 0, 0).finished()); }) ==
        ErrorKind::InvalidDensity);
  CHECK(kind_of([] { DensityMatrix::from_matrix((CMatrix(2, 2) << 1.5, 0, 0, -0.5).finished()); }) ==
        ErrorKind::InvalidDensity);
  CHECK(kind_of([] { DensityMatrix::from_matrix(CMatrix::Identity(2, 2)); }) == ErrorKind::InvalidDensity);
  CHECK(kind_of([] { DensityMatrix::from_matrix(CMatrix::Zero(2, 3)); }) == ErrorKind::BadDimension);

  const DensityMatrix half = DensityMatrix::from_matrix((CMatrix(2, 2) << 0.5, 0, 0, 0).finished());
  CHECK_FALSE(half.is_normalized());
  CHECK(half.normalized().is_normalized());
  CHECK(kind_of([] { DensityMatrix::zero(3).normalized(); }) == ErrorKind::ImpossiblePostselection);
}

TEST_CASE("apply_operator examples") {
  const DensityMatrix plus = density_from_pure(uniform_state(2));
  CHECK(max_abs_diff(apply_operator(CMatrix::Identity(2, 2), plus).matrix(), plus.matrix()) == 0.0);

  const CMatrix z = (CMatrix(2, 2) << 1, 0, 0, -1).finished();
  const DensityMatrix minus = density_from_pure(make_pure(vec({1.0, -1.0})));
  CHECK(max_abs_diff(apply_operator(z, plus).matrix(), minus.matrix()) < 1e-15);

  const CMatrix p0 = (CMatrix(2, 2) << 1, 0, 0, 0).finished();
  const DensityMatrix out = apply_operator(p0, DensityMatrix::maximally_mixed(2));
  CHECK(max_abs_diff(out.matrix(), (CMatrix(2, 2) << 0.5, 0, 0, 0).finished()) < 1e-15);
  CHECK(out.trace() == doctest::Approx(0.5).epsilon(1e-15));

  CHECK(kind_of([&] { apply_operator(CMatrix::Identity(3, 3), plus); }) == ErrorKind::BadDimension);
}

TEST_CASE("apply_operator is linear in the state") {
  Rng rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int s = 0; s < 40; ++s) {
    const std::size_t dim = 2 + static_cast<std::size_t>(s % 7);
    const CMatrix op = haar_unitary(dim, rng) * 0.7 + CMatrix::Identity(dim, dim) * 0.2;
    const DensityMatrix r1 = random_density(dim, 2, rng);
    const DensityMatrix r2 = random_density(dim, 3, rng);
    const double a = unit(rng);
    const double b = unit(rng);
    const CMatrix lhs = apply_operator(op, DensityMatrix::trusted(a * r1.matrix() + b * r2.matrix())).matrix();
    const CMatrix rhs = a * apply_operator(op, r1).matrix() + b * apply_operator(op, r2).matrix();
    CHECK(max_abs_diff(lhs, rhs) <= 1e-10);
  }
}

TEST_CASE("fidelity examples") {
  Rng rng(3);
  const DensityMatrix rho = random_density(4, 3, rng);
  CHECK(fidelity(rho, rho) == doctest::Approx(1.0).epsilon(1e-12));

  CHECK(fidelity(density_from_pure(basis_state(2, 0)), density_from_pure(basis_state(2, 1))) == 0.0);

  // Uniform signal under collective phase flip noise with p = 0.5.
  for (std::size_t n = 1; n <= 4; ++n) {
    const std::size_t dim = std::size_t{1} << n;
    const DensityMatrix s = density_from_pure(uniform_state(dim));
    const DensityMatrix mixed = mix_signal_noise(0.5, s, collective_phase_flip(n));
    CHECK(std::abs(fidelity(mixed, s) - 0.7071067812) < 1e-10);
    CHECK(std::abs(fidelity(mixed, s) - std::sqrt(0.5)) < 1e-12);
  }
}

TEST_CASE("fidelity rejects invalid arguments") {
  const DensityMatrix half = DensityMatrix::trusted((CMatrix(2, 2) << 0.5, 0, 0, 0).finished());
  const DensityMatrix ok = DensityMatrix::maximally_mixed(2);
  CHECK(kind_of([&] { fidelity(half, ok); }) == ErrorKind::InvalidDensity);
  const DensityMatrix negative = DensityMatrix::trusted((CMatrix(2, 2) << 1.2, 0, 0, -0.2).finished());
  CHECK(kind_of([&] { fidelity(negative, ok); }) == ErrorKind::InvalidDensity);
  CHECK(kind_of([&] { fidelity(ok, DensityMatrix::maximally_mixed(3)); }) == ErrorKind::BadDimension);
}

TEST_CASE("fidelity is symmetric and matches the pure-state closed form") {
  Rng rng(5);
  for (int s = 0; s < 200; ++s) {
    const std::size_t dim = 2 + static_cast<std::size_t>(s % 15);
    const DensityMatrix a = random_density(dim, 1 + static_cast<std::size_t>(s) % dim, rng);
    const DensityMatrix b = random_density(dim, 1 + static_cast<std::size_t>(s + 3) % dim, rng);
    const double fab = fidelity(a, b);
    CHECK(std::abs(fab - fidelity(b, a)) <= 1e-9);
    CHECK(fab >= 0.0);
    CHECK(fab <= 1.0);

    const PureState phi = haar_state(dim, rng);
    const double closed = oracle::pure_fidelity(a.matrix(), phi.amplitudes());
    CHECK(std::abs(fidelity(a, density_from_pure(phi)) - closed) <= 1e-9);
    CHECK(std::abs(fidelity_with_pure(a, phi) - closed) <= 1e-12);
  }
}

TEST_CASE("fidelity stays accurate for nearly orthogonal supports") {
  // Rank-deficient arguments are where a naive sqrt of round-off
  // eigenvalues would add ~1e-8 of spurious fidelity.
  const DensityMatrix s = density_from_pure(uniform_state(8));
  for (double p : {1e-6, 1e-3, 0.1, 0.9}) {
    const DensityMatrix rho = mix_signal_noise(p, s, collective_phase_flip(3));
    CHECK(std::abs(fidelity(rho, s) - std::sqrt(p)) <= 1e-9);
  }
}

}  // TEST_SUITE
