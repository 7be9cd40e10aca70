#pragma once

#include <cstddef>
#include <random>

#include "qfilter/qstate.hpp"

namespace qfilter {

using Rng = std::mt19937_64;

/// Haar-distributed pure state: a normalized complex Gaussian vector.
PureState haar_state(std::size_t dim, Rng& rng);

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the
/// phases of R's diagonal folded into Q.
CMatrix haar_unitary(std::size_t dim, Rng& rng);

/// Random mixed state sum_i w_i |v_i><v_i| over `rank` Haar states with
/// uniformly drawn weights.
DensityMatrix random_density(std::size_t dim, std::size_t rank, Rng& rng);

}  // namespace qfilter
