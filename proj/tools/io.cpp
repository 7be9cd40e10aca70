#include "io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qfilter/error.hpp"

namespace qfilter::cli {

namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

json parse_json(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    parse_fail(std::string(what) + ": " + e.what());
  }
}

Complex parse_complex(const json& pair) {
  if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
    parse_fail("complex entries must be [re, im] pairs of numbers");
  }
  return {pair[0].get<double>(), pair[1].get<double>()};
}

CMatrix parse_matrix(const json& rows) {
  if (!rows.is_array() || rows.empty()) parse_fail("matrix must be a nonempty list of rows");
  const auto n = static_cast<Eigen::Index>(rows.size());
  CMatrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const json& row = rows[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
      throw Error(ErrorKind::BadDimension, "noise matrix must be square");
    }
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = parse_complex(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_fail("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

PureState parse_state_json(const std::string& text) {
  const json doc = parse_json(text, "state file");
  if (!doc.is_object() || !doc.contains("amplitudes")) parse_fail("state file needs an 'amplitudes' list");
  const json& amps = doc["amplitudes"];
  if (!amps.is_array()) parse_fail("'amplitudes' must be a list");
  if (doc.contains("dim")) {
    if (!doc["dim"].is_number_unsigned()) parse_fail("'dim' must be a non-negative integer");
    if (doc["dim"].get<std::size_t>() != amps.size()) {
      throw Error(ErrorKind::BadDimension, "'dim' is " + std::to_string(doc["dim"].get<std::size_t>()) +
                                               " but " + std::to_string(amps.size()) +
                                               " amplitudes were given");
    }
  }
  CVector v(static_cast<Eigen::Index>(amps.size()));
  for (std::size_t k = 0; k < amps.size(); ++k) v(static_cast<Eigen::Index>(k)) = parse_complex(amps[k]);
  return make_pure(std::move(v));
}

std::string write_state_json(const PureState& state) {
  std::string out = "{\"dim\": " + std::to_string(state.dim()) + ", \"amplitudes\": [";
  for (std::size_t k = 0; k < state.dim(); ++k) {
    if (k) out += ", ";
    out += "[" + format_double(state[k].real()) + ", " + format_double(state[k].imag()) + "]";
  }
  out += "]}\n";
  return out;
}

PureState load_state_file(const std::string& path) { return parse_state_json(read_text_file(path)); }

NoiseSpec parse_noise_json(const std::string& text) {
  const json doc = parse_json(text, "noise spec");
  if (!doc.is_object() || !doc.contains("kind") || !doc["kind"].is_string()) {
    parse_fail("noise spec needs a string 'kind'");
  }
  const std::string kind = doc["kind"].get<std::string>();
  NoiseSpec spec;
  if (kind == "collective-phase-flip") {
    spec.kind = NoiseSpec::Kind::CollectivePhaseFlip;
    if (doc.contains("n")) {
      if (!doc["n"].is_number_unsigned() || doc["n"].get<std::size_t>() == 0) {
        throw Error(ErrorKind::BadDimension, "collective phase flip needs n >= 1");
      }
      spec.n_qubits = doc["n"].get<std::size_t>();
    }
    spec.description = "collective-phase-flip";
  } else if (kind == "kraus") {
    spec.kind = NoiseSpec::Kind::Kraus;
    if (!doc.contains("operators") || !doc["operators"].is_array() || doc["operators"].empty()) {
      parse_fail("kraus noise needs a nonempty 'operators' list");
    }
    for (const json& m : doc["operators"]) spec.operators.push_back(parse_matrix(m));
    spec.description = doc.value("label", std::string("kraus"));
  } else if (kind == "identity") {
    spec.kind = NoiseSpec::Kind::Identity;
    spec.description = "identity";
  } else {
    parse_fail("unknown noise kind '" + kind + "'");
  }
  return spec;
}

NoiseSpec parse_noise_argument(const std::string& arg) {
  if (arg == "collective-phase-flip" || arg == "phase-flip") {
    NoiseSpec spec;
    spec.kind = NoiseSpec::Kind::CollectivePhaseFlip;
    return spec;
  }
  if (arg == "identity" || arg == "none") {
    NoiseSpec spec;
    spec.kind = NoiseSpec::Kind::Identity;
    spec.description = "identity";
    return spec;
  }
  if (!arg.empty() && arg.front() == '{') return parse_noise_json(arg);
  if (std::filesystem::is_regular_file(arg)) return parse_noise_json(read_text_file(arg));
  parse_fail("noise '" + arg + "' is neither a known keyword, inline JSON, nor a file");
}

SignalSource parse_signal_argument(const std::string& arg) {
  SignalSource source;
  source.description = arg;
  if (arg == "uniform") {
    source.kind = SignalSource::Kind::Uniform;
  } else if (arg == "random") {
    source.kind = SignalSource::Kind::Random;
  } else if (arg == "basis" || arg.rfind("basis:", 0) == 0) {
    source.kind = SignalSource::Kind::Basis;
    if (arg.size() > 6) {
      const std::string index = arg.substr(6);
      if (index.empty() || index.find_first_not_of("0123456789") != std::string::npos) {
        parse_fail("basis index in '" + arg + "' is not a non-negative integer");
      }
      source.basis_index = std::stoul(index);
    }
  } else {
    source.kind = SignalSource::Kind::Explicit;
    source.state = load_state_file(arg);
  }
  return source;
}

}  // namespace qfilter::cli
