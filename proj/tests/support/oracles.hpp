#pragma once

// Brute-force reference computations for the tests. These follow the
// defining sums index by index and share no code with the library's
// correlator, so agreement is evidence rather than tautology.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

namespace qfilter::oracle {

using C = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

inline std::size_t wrap(long long i, std::size_t n) {
  const auto m = static_cast<long long>(n);
  return static_cast<std::size_t>(((i % m) + m) % m);
}

/// (1/N) sum_i | sum_k conj(ref(k - i)) psi(k) |^2 with all indices mod N.
inline double correlation(const Vec& ref, const Vec& psi) {
  const auto n = static_cast<std::size_t>(ref.size());
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    C overlap = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      overlap += std::conj(ref(static_cast<Eigen::Index>(wrap(static_cast<long long>(k) - static_cast<long long>(i), n)))) *
                 psi(static_cast<Eigen::Index>(k));
    }
    total += std::norm(overlap);
  }
  return total / static_cast<double>(n);
}

/// Pointer-register output of the channel written out as a quadruple sum:
///   raw(i, j) = (1/N) sum_{m, m'} conj(ref(m)) rho(m + i, m' + j) ref(m').
/// The joint density after the controlled shift has entries
/// (1/N) rho(m + i, m' + j) at ((m, i), (m', j)).
inline Mat channel(const Mat& rho, const Vec& ref) {
  const auto n = static_cast<std::size_t>(ref.size());
  Mat raw = Mat::Zero(rho.rows(), rho.cols());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      C sum = 0.0;
      for (std::size_t m = 0; m < n; ++m)
        for (std::size_t mp = 0; mp < n; ++mp)
          sum += std::conj(ref(static_cast<Eigen::Index>(m))) *
                 rho(static_cast<Eigen::Index>((m + i) % n), static_cast<Eigen::Index>((mp + j) % n)) *
                 ref(static_cast<Eigen::Index>(mp));
      raw(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = sum / static_cast<double>(n);
    }
  return raw;
}

/// Kronecker product of dense matrices.
inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c) out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
  return out;
}

/// (1/n) sum_i Z^(i) assembled from tensor products of 2x2 matrices.
inline Mat collective_z(std::size_t n) {
  Mat z(2, 2);
  z << 1.0, 0.0, 0.0, -1.0;
  const Mat id = Mat::Identity(2, 2);
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
  Mat total = Mat::Zero(dim, dim);
  for (std::size_t q = 0; q < n; ++q) {
    Mat term = Mat::Identity(1, 1);
    for (std::size_t slot = 0; slot < n; ++slot) term = kron(term, slot == q ? z : id);
    total += term;
  }
  return total / static_cast<double>(n);
}

/// Discrete Fourier mode e^{2 pi i f k / N} / sqrt(N).
inline Vec fourier_mode(std::size_t n, std::size_t f) {
  Vec v(static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < n; ++k) {
    v(static_cast<Eigen::Index>(k)) =
        std::polar(1.0 / std::sqrt(static_cast<double>(n)),
                   2.0 * std::numbers::pi * static_cast<double>(f * k) / static_cast<double>(n));
  }
  return v;
}

/// Fidelity against a pure state from its definition sqrt(<phi|rho|phi>).
inline double pure_fidelity(const Mat& rho, const Vec& phi) {
  return std::sqrt(std::max(0.0, phi.dot(rho * phi).real()));
}

}  // namespace qfilter::oracle
