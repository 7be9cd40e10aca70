#pragma once

// Self-check suites run by `qfilter verify`. Each property is evaluated on
// seeded random ensembles and reports the largest deviation it observed.

#include <cstdint>
#include <string>
#include <vector>

#include "qfilter/correlator.hpp"

namespace qfilter {

/// Reference construction of the correlation channel: rho (x) |u><u| on
/// signal (x) pointer, conjugated by build_full_unitary(), projected with
/// |phi0><phi0| (x) 1 and traced over the signal register. Limited to
/// N <= 16.
FilterOutput postselect_filter_via_unitary(const DensityMatrix& rho, const PureState& reference);

enum class VerifyScale { Quick, Full };

struct PropertyResult {
  std::string name;
  double max_deviation = 0.0;
  double threshold = 0.0;
  std::size_t samples = 0;
  bool passed = false;
};

struct VerifySummary {
  std::vector<PropertyResult> properties;

  bool passed() const noexcept;
};

VerifySummary run_verify(VerifyScale scale, std::uint64_t seed = 42);

}  // namespace qfilter
