#pragma once

// File formats shared by the command-line tool.
//
// State file:  {"dim": N, "amplitudes": [[re, im], ...]}
// Noise spec:  {"kind": "collective-phase-flip", "n": n}
//              {"kind": "kraus", "operators": [matrix, ...]}
//              {"kind": "identity"}
//   where a matrix is a row-major list of rows of [re, im] pairs.

#include <string>

#include "qfilter/experiment.hpp"
#include "qfilter/qstate.hpp"

namespace qfilter::cli {

PureState parse_state_json(const std::string& text);
std::string write_state_json(const PureState& state);
PureState load_state_file(const std::string& path);

NoiseSpec parse_noise_json(const std::string& text);

/// A noise argument is a keyword (collective-phase-flip, phase-flip,
/// identity, none), inline JSON, or the path of a JSON file.
NoiseSpec parse_noise_argument(const std::string& arg);

/// A signal argument is a builtin (uniform, random, basis, basis:K) or the
/// path of a state file.
SignalSource parse_signal_argument(const std::string& arg);

std::string read_text_file(const std::string& path);

}  // namespace qfilter::cli
