#pragma once

// Report serialization. Key order and CSV column order are fixed; numbers
// are written with 12 significant digits.

#include <string>
#include <vector>

#include "qfilter/experiment.hpp"
#include "qfilter/verify.hpp"

namespace qfilter::cli {

/// %.12g. Throws InvalidArgument for NaN or infinity so no non-finite value
/// reaches a report.
std::string format_number(double value);

std::string report_json(const ExperimentReport& report);
std::string report_csv(const ExperimentReport& report);
std::string report_table(const ExperimentReport& report);
std::string format_report(const ExperimentReport& report, ReportFormat format);

std::string format_sweep(const std::vector<SweepRow>& rows, ReportFormat format);

std::string format_verify(const VerifySummary& summary, ReportFormat format);

struct CorrelationResult {
  std::size_t dim = 0;
  double C = 0.0;
  std::optional<double> C_general;  // with the noise operator applied
  std::vector<double> lag_overlap_sq;
};

std::string format_correlation(const CorrelationResult& result, ReportFormat format);

}  // namespace qfilter::cli
