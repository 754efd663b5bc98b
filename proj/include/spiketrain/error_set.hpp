#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "spiketrain/signal.hpp"

namespace spiketrain {

/// Moment count used by the grid sampler (N = 2d with d = 2).
inline constexpr std::size_t kSamplerMoments = 4;
/// Inversions whose moment residual exceeds this are treated as failed.
inline constexpr double kSamplerResidualLimit = 1e-9;

struct GridSpec {
  double eps = 0.0;
  std::size_t steps = 0;
  std::size_t moment_count = kSamplerMoments;
};

/// Prony preimages of a regular grid filling the eps-cube around PM(F).
struct ErrorCloud {
  SpikeSignal reference;
  std::vector<SpikeSignal> points;
  std::size_t skipped = 0;
  GridSpec grid;
};

/// Inverts every point of the steps^4 grid over Q^4_eps(F) (corners
/// included). Grid points that do not invert to a real two-node signal are
/// counted in `skipped`. Points are kept in lexicographic grid order
/// (m_0 slowest) regardless of `threads`; 0 means hardware concurrency.
ErrorCloud sample_error_set(const SpikeSignal& signal, double eps, std::size_t steps,
                            unsigned threads = 0);

struct NodePoint {
  double first = 0.0;
  double second = 0.0;
};

std::vector<NodePoint> project_nodes(const ErrorCloud& cloud);

struct Sampler {
  std::size_t steps = 21;
};

struct CurveEndpoints {
  std::size_t index = 1;
  std::size_t moment_count = kSamplerMoments;
};

using WorstCaseMethod = std::variant<Sampler, CurveEndpoints>;

struct WorstCaseEstimate {
  double rho = 0.0;
  /// Cloud size for Sampler, 2 for CurveEndpoints.
  std::size_t support = 0;
  /// Sampler results only bound the supremum from below.
  bool lower_estimate = true;
};

/// rho^x_eps(F) = sup ||x' - x|| over E_eps(F), estimated two ways:
/// Sampler takes the max over a grid cloud; CurveEndpoints returns the node
/// distance of the two S_{F,i}(h) boundary points (h/2) after checking that
/// both lie in E_eps(F). Throws Error{EndpointNotInSet} if one does not.
WorstCaseEstimate worst_case_error(const SpikeSignal& signal, double eps,
                                   const WorstCaseMethod& method);

struct AmplificationPoint {
  double gap = 0.0;
  double eps = 0.0;
  double rho = 0.0;
  double rho_over_eps = 0.0;
};

struct AmplificationFit {
  double slope = 0.0;
  double intercept = 0.0;
  std::vector<AmplificationPoint> points;
};

/// The symmetric pair F = 1/2 delta(x + h/2) + 1/2 delta(x - h/2) for each
/// gap h; eps = c_mult * C(F) * h^3 and rho from CurveEndpoints. Fits
/// log rho = slope * log h + intercept by least squares.
/// Throws Error{InsufficientPoints} with fewer than two gaps.
AmplificationFit amplification_exponent(const std::vector<double>& gaps, double c_mult,
                                        std::size_t moment_count);

/// Symmetric two-spike signal with the given gap, centred at 0.
SpikeSignal symmetric_pair(double gap);

}  // namespace spiketrain
