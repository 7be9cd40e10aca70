#include "qfilter/random.hpp"

#include <cmath>

#include "qfilter/error.hpp"

namespace qfilter {

namespace {

CMatrix ginibre(std::size_t rows, std::size_t cols, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  CMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      m(r, c) = Complex(re, im);
    }
  }
  return m;
}

}  // namespace

PureState haar_state(std::size_t dim, Rng& rng) {
  return make_pure(ginibre(dim, 1, rng).col(0));
}

CMatrix haar_unitary(std::size_t dim, Rng& rng) {
  if (dim < 1) throw Error(ErrorKind::BadDimension, "unitary needs dimension >= 1");
  const CMatrix z = ginibre(dim, dim, rng);
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ() * CMatrix::Identity(z.rows(), z.cols());
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < q.cols(); ++i) {
    const Complex d = r(i, i);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(i) *= d / mag;
  }
  return q;
}

DensityMatrix random_density(std::size_t dim, std::size_t rank, Rng& rng) {
  if (rank < 1) throw Error(ErrorKind::InvalidArgument, "random density needs rank >= 1");
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const auto n = static_cast<Eigen::Index>(dim);
  CMatrix m = CMatrix::Zero(n, n);
  double total = 0.0;
  for (std::size_t i = 0; i < rank; ++i) {
    const double w = uniform(rng) + 1e-3;
    const CVector v = haar_state(dim, rng).amplitudes();
    m += w * (v * v.adjoint());
    total += w;
  }
  return DensityMatrix::trusted(m / total);
}

}  // namespace qfilter
