#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace spiketrain {

// Every domain failure carries one of these kinds; the CLI prints the name.
enum class ErrorKind {
  InvalidArgument,
  LengthMismatch,
  EmptySignal,
  NonFinite,
  NonIncreasingNodes,
  IndexOutOfRange,
  NeighborTooClose,
  GapTooLarge,
  AmplitudeBoundTooSmall,
  ComplexRoots,
  DegenerateHankel,
  CoincidentRoots,
  AtAsymptote,
  NodeCollision,
  DegeneratePair,
  KTooSmall,
  EndpointNotInSet,
  InsufficientPoints,
  DegenerateCluster,
  ArgumentOutOfRange,
  ZeroDenominator,
  NegativeDiscriminant,
  InconsistentImPart,
  InconsistentMeasurements,
  NoConsistentCandidate,
  ParseError,
};

std::string_view error_name(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace spiketrain
