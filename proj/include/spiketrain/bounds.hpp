#pragma once

#include <cstddef>
#include <vector>

#include "spiketrain/signal.hpp"

namespace spiketrain {

/// Factor in the moment-deviation bound 18 M (1+|kappa|)^k h^3.
inline constexpr double kDeviationFactor = 18.0;
/// Node gaps on S_{F,i}(h) stay above this fraction of h.
inline constexpr double kMinGapFraction = 0.25;
/// Pair amplitudes on S_{F,i}(h) stay below this multiple of M.
inline constexpr double kAmplitudeFactor = 8.0;
/// m_0, m_1, m_2 are preserved along the curve up to this relative error.
inline constexpr double kPreservedMomentTolerance = 1e-12;

/// C(F) = 18 M (1 + |kappa|)^N.
double c_of_cluster(const ClusterSpec& spec, std::size_t count);

/// 18 M (1 + |kappa|)^k h^3 for k >= 3. Throws Error{KTooSmall} for k < 3,
/// where the deviation is exactly zero instead.
double moment_deviation_bound(const ClusterSpec& spec, std::size_t k);

struct BoundReport {
  ClusterSpec cluster;
  std::size_t moment_count = 0;
  std::size_t sample_count = 0;
  /// max over samples of |dm_k| / max(1, |m_k(F)|), k = 0, 1, 2.
  std::vector<double> preserved_observed;
  /// Bounds and observed max |dm_k| for k = 3..N-1.
  std::vector<double> per_k_bound;
  std::vector<double> per_k_observed;
  double c_constant = 0.0;
  double lemma1_min_gap = 0.0;
  double lemma2_max_amp = 0.0;
  bool all_pass = false;
};

/// Samples S_{F,i}(h) and checks the deviation bounds for every
/// k < moment_count together with the gap and amplitude lemmas.
BoundReport verify_cluster_bounds(const SpikeSignal& signal, std::size_t index,
                                  std::size_t moment_count, std::size_t sample_count);

/// True iff every sampled point of S_{F,i}(h) lies in E_eps(F) for N moments.
bool theorem1_check(const SpikeSignal& signal, std::size_t index, double eps,
                    std::size_t moment_count, std::size_t sample_count);

}  // namespace spiketrain
