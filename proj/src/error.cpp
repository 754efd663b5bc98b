#include "spiketrain/error.hpp"

namespace spiketrain {

std::string_view error_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::EmptySignal: return "EmptySignal";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::NonIncreasingNodes: return "NonIncreasingNodes";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::NeighborTooClose: return "NeighborTooClose";
    case ErrorKind::GapTooLarge: return "GapTooLarge";
    case ErrorKind::AmplitudeBoundTooSmall: return "AmplitudeBoundTooSmall";
    case ErrorKind::ComplexRoots: return "ComplexRoots";
    case ErrorKind::DegenerateHankel: return "DegenerateHankel";
    case ErrorKind::CoincidentRoots: return "CoincidentRoots";
    case ErrorKind::AtAsymptote: return "AtAsymptote";
    case ErrorKind::NodeCollision: return "NodeCollision";
    case ErrorKind::DegeneratePair: return "DegeneratePair";
    case ErrorKind::KTooSmall: return "KTooSmall";
    case ErrorKind::EndpointNotInSet: return "EndpointNotInSet";
    case ErrorKind::InsufficientPoints: return "InsufficientPoints";
    case ErrorKind::DegenerateCluster: return "DegenerateCluster";
    case ErrorKind::ArgumentOutOfRange: return "ArgumentOutOfRange";
    case ErrorKind::ZeroDenominator: return "ZeroDenominator";
    case ErrorKind::NegativeDiscriminant: return "NegativeDiscriminant";
    case ErrorKind::InconsistentImPart: return "InconsistentImPart";
    case ErrorKind::InconsistentMeasurements: return "InconsistentMeasurements";
    case ErrorKind::NoConsistentCandidate: return "NoConsistentCandidate";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(error_name(kind)) + ": " + what), kind_(kind) {}

}  // namespace spiketrain
