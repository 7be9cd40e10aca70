#include "cli.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "format.hpp"
#include "io.hpp"
#include "qfilter/correlator.hpp"
#include "qfilter/experiment.hpp"
#include "qfilter/verify.hpp"

namespace qfilter::cli {

int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::BadDimension:
    case ErrorKind::OracleScaleExceeded:
      return kDimensionError;
    case ErrorKind::ImpossiblePostselection:
      return kImpossiblePostselection;
    default:
      return kConfigError;
  }
}

namespace {

struct Options {
  std::optional<std::size_t> dim;
  std::optional<std::size_t> n_qubits;
  double p = 0.5;
  std::string signal = "uniform";
  std::optional<std::string> reference;
  std::optional<std::string> noise;
  std::uint64_t seed = 0;
  double tolerance = 1e-9;
  std::string output = "table";
  std::optional<std::string> out_file;

  std::string axis;
  std::string values;
  std::string scale = "quick";
  std::uint64_t verify_seed = 42;
};

const std::map<std::string, ReportFormat> kFormats{
    {"table", ReportFormat::Table}, {"json", ReportFormat::Json}, {"csv", ReportFormat::Csv}};

const std::map<std::string, SweepAxis> kAxes{
    {"p", SweepAxis::P}, {"n", SweepAxis::NQubits}, {"epsilon", SweepAxis::Epsilon}};

void add_output_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--output", o.output, "Report format")
      ->check(CLI::IsMember({"table", "json", "csv"}))
      ->capture_default_str();
  cmd->add_option("--out", o.out_file, "Write the report to FILE instead of stdout");
}

void add_experiment_options(CLI::App* cmd, Options& o) {
  auto* dim = cmd->add_option("--dim", o.dim, "Signal dimension N")->check(CLI::PositiveNumber);
  auto* qubits =
      cmd->add_option("--n-qubits", o.n_qubits, "Qubit count n (N = 2^n)")->check(CLI::Range(1, 10));
  dim->excludes(qubits);
  cmd->add_option("--p", o.p, "Signal weight p in [0, 1]")->capture_default_str();
  cmd->add_option("--signal", o.signal, "State file or builtin: uniform, random, basis, basis:K")
      ->capture_default_str();
  cmd->add_option("--reference", o.reference, "Reference state (defaults to the signal)");
  cmd->add_option("--noise", o.noise,
                  "collective-phase-flip, identity, inline JSON, or a noise spec file");
  cmd->add_option("--seed", o.seed, "Seed for random builtin states")->capture_default_str();
  cmd->add_option("--tolerance", o.tolerance, "Tolerance for report invariants")->capture_default_str();
  add_output_options(cmd, o);
}

ExperimentConfig build_config(const Options& o) {
  if (!(o.tolerance > 0.0)) throw Error(ErrorKind::InvalidArgument, "--tolerance must be positive");
  ExperimentConfig config;
  config.signal = parse_signal_argument(o.signal);
  if (o.reference) config.reference = parse_signal_argument(*o.reference);
  if (o.noise) config.noise = parse_noise_argument(*o.noise);
  config.p = o.p;
  config.seed = o.seed;
  config.tolerance = o.tolerance;
  config.format = kFormats.at(o.output);
  if (o.dim) {
    config.dim = *o.dim;
  } else if (o.n_qubits) {
    config.dim = std::size_t{1} << *o.n_qubits;
  } else if (config.signal.state) {
    config.dim = config.signal.state->dim();
  } else if (config.reference && config.reference->state) {
    config.dim = config.reference->state->dim();
  }
  return config;
}

void emit(const Options& o, const std::string& text, std::ostream& out) {
  if (!o.out_file) {
    out << text;
    return;
  }
  std::ofstream file(*o.out_file, std::ios::binary);
  if (!file) throw Error(ErrorKind::InvalidArgument, "cannot write '" + *o.out_file + "'");
  file << text;
}

void report_error(std::ostream& err, std::string_view kind, int code, std::string_view message) {
  std::string flat(message);
  for (char& c : flat) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  err << "error: kind=" << kind << " exit=" << code << " message=" << flat << "\n";
}

int check_bound(const ExperimentReport& r, double tolerance, std::ostream& err) {
  if (r.bound_holds(tolerance)) return kOk;
  report_error(err, "VerificationFailure", kVerificationFailure,
               "F_after " + format_number(r.F_after) + " is below the concavity bound " +
                   format_number(r.bound_rhs));
  return kVerificationFailure;
}

int cmd_correlate(const Options& o, std::ostream& out) {
  const ExperimentConfig config = build_config(o);
  const PureState phi = resolve_signal(config.signal, config.dim, config.seed);
  const PureState ref = resolve_reference(config, phi);
  CorrelationResult result;
  result.dim = config.dim;
  result.C = correlation_coefficient(ref, phi);
  for (const Complex& c : lag_overlaps(ref, phi)) result.lag_overlap_sq.push_back(std::norm(c));
  if (o.noise) {
    const NoiseModel noise = resolve_noise(config.noise, config.dim);
    double total = 0.0;
    for (const CMatrix& op : noise.operators()) total += correlation_coefficient_general(ref, op, phi);
    result.C_general = total;
  }
  emit(o, format_correlation(result, config.format), out);
  return kOk;
}

int cmd_filter(const Options& o, std::ostream& out, std::ostream& err) {
  const ExperimentConfig config = build_config(o);
  const ExperimentReport report = run_filter(config);
  emit(o, format_report(report, config.format), out);
  return check_bound(report, config.tolerance, err);
}

int cmd_phase_flip_demo(const Options& o, std::ostream& out, std::ostream& err) {
  const ExperimentReport report = run_phase_flip_demo(o.n_qubits.value_or(2), o.p);
  emit(o, format_report(report, kFormats.at(o.output)), out);
  return check_bound(report, o.tolerance, err);
}

std::vector<double> parse_values(const std::string& list) {
  std::vector<double> values;
  std::size_t start = 0;
  while (start <= list.size()) {
    std::size_t end = list.find(',', start);
    if (end == std::string::npos) end = list.size();
    std::string item = list.substr(start, end - start);
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (item.empty()) {
      if (list.find_first_not_of(" \t") != std::string::npos)
        throw Error(ErrorKind::InvalidArgument, "empty entry in --values '" + list + "'");
    } else {
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
      if (ec != std::errc{} || ptr != item.data() + item.size())
        throw Error(ErrorKind::InvalidArgument, "--values entry '" + item + "' is not a number");
      values.push_back(v);
    }
    start = end + 1;
  }
  if (values.empty()) throw Error(ErrorKind::InvalidArgument, "sweep needs at least one --values entry");
  return values;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  const std::vector<double> values = parse_values(o.values);
  const ExperimentConfig config = build_config(o);
  const std::vector<SweepRow> rows = run_sweep(config, kAxes.at(o.axis), values);
  emit(o, format_sweep(rows, config.format), out);
  return kOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const VerifyScale scale = o.scale == "full" ? VerifyScale::Full : VerifyScale::Quick;
  const VerifySummary summary = run_verify(scale, o.verify_seed);
  emit(o, format_verify(summary, kFormats.at(o.output)), out);
  return summary.passed() ? kOk : kVerificationFailure;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Quantum noise filtering by post-selected cross-correlation", "qfilter"};
  app.require_subcommand(1);

  auto* correlate = app.add_subcommand("correlate", "Correlation coefficient of a reference and a signal");
  add_experiment_options(correlate, o);

  auto* filter = app.add_subcommand("filter", "Mix signal and noise, filter, and report fidelities");
  add_experiment_options(filter, o);

  auto* demo = app.add_subcommand("phase-flip-demo",
                                  "Uniform signal under collective phase flip noise");
  demo->add_option("--n-qubits", o.n_qubits, "Qubit count n")->check(CLI::Range(1, 8));
  demo->add_option("--p", o.p, "Signal weight p in (0, 1]")->capture_default_str();
  demo->add_option("--tolerance", o.tolerance, "Tolerance for report invariants")->capture_default_str();
  add_output_options(demo, o);

  auto* sweep = app.add_subcommand("sweep", "Repeat the filter over a list of p, n or epsilon values");
  add_experiment_options(sweep, o);
  sweep->add_option("--axis", o.axis, "Swept parameter")
      ->required()
      ->check(CLI::IsMember({"p", "n", "epsilon"}));
  sweep->add_option("--values", o.values, "Comma-separated values, e.g. 0.1,0.2,0.3");

  auto* verify = app.add_subcommand("verify", "Run the property suites");
  verify->add_option("--scale", o.scale, "quick or full")
      ->check(CLI::IsMember({"quick", "full"}))
      ->capture_default_str();
  verify->add_option("--seed", o.verify_seed, "Seed for the random ensembles")->capture_default_str();
  add_output_options(verify, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    report_error(err, "UsageError", kConfigError, e.what());
    return kConfigError;
  }

  try {
    if (*correlate) return cmd_correlate(o, out);
    if (*filter) return cmd_filter(o, out, err);
    if (*demo) return cmd_phase_flip_demo(o, out, err);
    if (*sweep) return cmd_sweep(o, out);
    if (*verify) return cmd_verify(o, out);
  } catch (const Error& e) {
    const int code = exit_code_for(e.kind());
    report_error(err, to_string(e.kind()), code, e.what());
    return code;
  }
  return kConfigError;
}

}  // namespace qfilter::cli
