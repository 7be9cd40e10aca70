#include "format.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <utility>

#include "qfilter/error.hpp"

namespace qfilter::cli {

namespace {

using Field = std::pair<const char*, double ExperimentReport::*>;

constexpr std::array<Field, 8> kReportFields{{
    {"C_signal", &ExperimentReport::C_signal},
    {"C_noise", &ExperimentReport::C_noise},
    {"postselect_prob", &ExperimentReport::postselect_prob},
    {"F_before", &ExperimentReport::F_before},
    {"F_after", &ExperimentReport::F_after},
    {"fidelity_gain", &ExperimentReport::fidelity_gain},
    {"bound_rhs", &ExperimentReport::bound_rhs},
    {"expected_trials", &ExperimentReport::expected_trials},
}};

std::string quoted(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') {
      out += '\\';
      out += c;
    } else if (static_cast<unsigned char>(c) < 0x20) {
      char buf[8];
      std::snprintf(buf, sizeof buf, "\\u%04x", static_cast<unsigned>(c));
      out += buf;
    } else {
      out += c;
    }
  }
  return out + "\"";
}

std::string csv_cell(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

std::string report_json_fields(const ExperimentReport& r) {
  std::string out;
  for (std::size_t i = 0; i < kReportFields.size(); ++i) {
    if (i) out += ", ";
    out += quoted(kReportFields[i].first) + ": " + format_number(r.*kReportFields[i].second);
  }
  return out;
}

std::string report_csv_header() {
  std::string out;
  for (std::size_t i = 0; i < kReportFields.size(); ++i) {
    if (i) out += ",";
    out += kReportFields[i].first;
  }
  return out;
}

std::string report_csv_cells(const ExperimentReport& r) {
  std::string out;
  for (std::size_t i = 0; i < kReportFields.size(); ++i) {
    if (i) out += ",";
    out += format_number(r.*kReportFields[i].second);
  }
  return out;
}

}  // namespace

std::string format_number(double value) {
  if (!std::isfinite(value)) {
    throw Error(ErrorKind::InvalidArgument, "refusing to write a non-finite number to a report");
  }
  if (value == 0.0) value = 0.0;  // drop the sign of -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::string report_json(const ExperimentReport& r) { return "{" + report_json_fields(r) + "}\n"; }

std::string report_csv(const ExperimentReport& r) {
  return report_csv_header() + "\n" + report_csv_cells(r) + "\n";
}

std::string report_table(const ExperimentReport& r) {
  std::string out;
  for (const auto& [name, member] : kReportFields) {
    out += pad(name, 18) + format_number(r.*member) + "\n";
  }
  return out;
}

std::string format_report(const ExperimentReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::Json: return report_json(report);
    case ReportFormat::Csv: return report_csv(report);
    case ReportFormat::Table: return report_table(report);
  }
  return {};
}

namespace {

// "fail" marks a coupling check that ran but exceeded kCouplingTolerance.
std::string row_status(const SweepRow& row) {
  if (!row.ok()) return "error";
  if (row.coupling && !row.coupling->passed) return "fail";
  return "ok";
}

}  // namespace

std::string format_sweep(const std::vector<SweepRow>& rows, ReportFormat format) {
  std::string out;
  if (format == ReportFormat::Json) {
    out = "[\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const SweepRow& row = rows[i];
      out += "  {\"axis\": " + quoted(to_string(row.axis)) + ", \"value\": " + format_number(row.value) +
             ", \"status\": " + quoted(row_status(row));
      if (row.report) {
        out += ", " + report_json_fields(*row.report);
      } else {
        for (const auto& [name, member] : kReportFields) out += ", " + quoted(name) + ": null";
      }
      out += ", \"coupling_deviation\": " +
             (row.coupling ? format_number(row.coupling->max_deviation) : std::string("null"));
      out += ", \"error_kind\": " + (row.error ? quoted(to_string(*row.error)) : std::string("null"));
      out += ", \"error\": " + (row.error ? quoted(row.error_message) : std::string("null"));
      out += i + 1 < rows.size() ? "},\n" : "}\n";
    }
    return out + "]\n";
  }

  if (format == ReportFormat::Csv) {
    out = "axis,value,status," + report_csv_header() + ",coupling_deviation,error_kind,error\n";
    for (const SweepRow& row : rows) {
      out += std::string(to_string(row.axis)) + "," + format_number(row.value) + "," +
             row_status(row) + ",";
      out += row.report ? report_csv_cells(*row.report) : std::string(kReportFields.size() - 1, ',');
      out += ",";
      if (row.coupling) out += format_number(row.coupling->max_deviation);
      out += ",";
      if (row.error) out += std::string(to_string(*row.error)) + "," + csv_cell(row.error_message);
      else out += ",";
      out += "\n";
    }
    return out;
  }

  out = pad(std::string(to_string(rows.front().axis)), 10) + pad("status", 8) +
        pad("F_before", 16) + pad("F_after", 16) + pad("gain", 16) + pad("postselect", 16) + "detail\n";
  for (const SweepRow& row : rows) {
    out += pad(format_number(row.value), 10) + pad(row_status(row), 8);
    if (row.report) {
      out += pad(format_number(row.report->F_before), 16) + pad(format_number(row.report->F_after), 16) +
             pad(format_number(row.report->fidelity_gain), 16) +
             pad(format_number(row.report->postselect_prob), 16);
    } else {
      out += std::string(64, ' ');
    }
    if (row.coupling) out += "deviation=" + format_number(row.coupling->max_deviation);
    if (row.error) out += std::string(to_string(*row.error)) + ": " + row.error_message;
    out += "\n";
  }
  return out;
}

std::string format_verify(const VerifySummary& summary, ReportFormat format) {
  std::string out;
  if (format == ReportFormat::Json) {
    out = "{\"passed\": " + std::string(summary.passed() ? "true" : "false") + ", \"properties\": [\n";
    for (std::size_t i = 0; i < summary.properties.size(); ++i) {
      const PropertyResult& p = summary.properties[i];
      out += "  {\"name\": " + quoted(p.name) + ", \"max_deviation\": " + format_number(p.max_deviation) +
             ", \"threshold\": " + format_number(p.threshold) + ", \"samples\": " +
             std::to_string(p.samples) + ", \"passed\": " + (p.passed ? "true" : "false") + "}";
      out += i + 1 < summary.properties.size() ? ",\n" : "\n";
    }
    return out + "]}\n";
  }
  if (format == ReportFormat::Csv) {
    out = "name,max_deviation,threshold,samples,passed\n";
    for (const PropertyResult& p : summary.properties) {
      out += p.name + "," + format_number(p.max_deviation) + "," + format_number(p.threshold) + "," +
             std::to_string(p.samples) + "," + (p.passed ? "true" : "false") + "\n";
    }
    return out;
  }
  for (const PropertyResult& p : summary.properties) {
    out += pad(p.passed ? "PASS" : "FAIL", 6) + pad(p.name, 38) + "max_dev=" +
           pad(format_number(p.max_deviation), 20) + "threshold=" + pad(format_number(p.threshold), 10) +
           "samples=" + std::to_string(p.samples) + "\n";
  }
  out += summary.passed() ? "all properties passed\n" : "verification FAILED\n";
  return out;
}

std::string format_correlation(const CorrelationResult& r, ReportFormat format) {
  if (format == ReportFormat::Json) {
    std::string out = "{\"dim\": " + std::to_string(r.dim) + ", \"C\": " + format_number(r.C) +
                      ", \"C_general\": " + (r.C_general ? format_number(*r.C_general) : "null") +
                      ", \"lag_overlap_sq\": [";
    for (std::size_t j = 0; j < r.lag_overlap_sq.size(); ++j) {
      if (j) out += ", ";
      out += format_number(r.lag_overlap_sq[j]);
    }
    return out + "]}\n";
  }
  if (format == ReportFormat::Csv) {
    std::string out = "lag,overlap_sq\n";
    for (std::size_t j = 0; j < r.lag_overlap_sq.size(); ++j) {
      out += std::to_string(j) + "," + format_number(r.lag_overlap_sq[j]) + "\n";
    }
    return out;
  }
  std::string out = pad("dim", 12) + std::to_string(r.dim) + "\n" + pad("C", 12) + format_number(r.C) + "\n";
  if (r.C_general) out += pad("C_general", 12) + format_number(*r.C_general) + "\n";
  for (std::size_t j = 0; j < r.lag_overlap_sq.size(); ++j) {
    out += pad("lag " + std::to_string(j), 12) + format_number(r.lag_overlap_sq[j]) + "\n";
  }
  return out;
}

}  // namespace qfilter::cli
