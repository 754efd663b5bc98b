#pragma once

#include <cstddef>
#include <optional>

#include "spiketrain/error.hpp"
#include "spiketrain/signal.hpp"

namespace spiketrain {

enum class ConditionFlag { WellSeparated, NearCollision, Failed };

const char* condition_name(ConditionFlag flag) noexcept;

/// Outcome of inverting the Prony map. `signal` is present iff the flag is
/// not Failed; `failure` names the reason otherwise.
struct InversionReport {
  std::optional<SpikeSignal> signal;
  ConditionFlag condition = ConditionFlag::Failed;
  std::optional<ErrorKind> failure;
  /// max_k |m_k(signal) - m_k(input)| over the 2d inverted moments.
  double residual = 0.0;
  /// max_k |m_k(signal) - m_k(input)| over moments beyond 2d (0 if none).
  double tail_deviation = 0.0;

  bool ok() const noexcept { return condition != ConditionFlag::Failed; }
};

/// Roots closer than this (relative to the root magnitude scale) are rejected.
inline constexpr double kRootSeparationTolerance = 1e-12;
/// Gaps below this fraction of the node magnitude scale raise NearCollision.
inline constexpr double kNearCollisionFraction = 1e-3;

/// Closed-form two-spike inversion from (m_0, m_1, m_2, m_3): the 2x2 Hankel
/// system gives the Prony quadratic, its roots are the nodes, and the
/// amplitudes follow from a_1 = (m_0 x_2 - m_1)/(x_2 - x_1).
InversionReport invert2(const MomentVector& moments);

/// Classical Prony inversion of the first 2d moments. Moments past 2d are
/// not fitted; their largest deviation is reported as tail_deviation.
/// For d <= 2 this uses closed forms (d = 2 is exactly invert2).
InversionReport invert(const MomentVector& moments, std::size_t spikes);

/// F' in E_eps(F): |m_k(F') - m_k(F)| <= eps for k = 0..count-1.
/// Throws Error{LengthMismatch} when the spike counts differ.
bool in_error_set(const SpikeSignal& candidate, const SpikeSignal& reference, double eps,
                  std::size_t count);

/// max_k |m_k(candidate) - m_k(reference)| over k = 0..count-1.
double max_moment_deviation(const SpikeSignal& candidate, const SpikeSignal& reference,
                            std::size_t count);

}  // namespace spiketrain
