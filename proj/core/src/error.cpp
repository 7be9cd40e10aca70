#include "qfilter/error.hpp"

namespace qfilter {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::DegenerateState: return "DegenerateState";
    case ErrorKind::BadDimension: return "BadDimension";
    case ErrorKind::InvalidDensity: return "InvalidDensity";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::OracleScaleExceeded: return "OracleScaleExceeded";
    case ErrorKind::ImpossiblePostselection: return "ImpossiblePostselection";
    case ErrorKind::NoiseAnnihilatesState: return "NoiseAnnihilatesState";
    case ErrorKind::NotTracePreserving: return "NotTracePreserving";
    case ErrorKind::LatticeTooCoarse: return "LatticeTooCoarse";
    case ErrorKind::ShiftOutOfRange: return "ShiftOutOfRange";
    case ErrorKind::BoundaryArtifact: return "BoundaryArtifact";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace qfilter
