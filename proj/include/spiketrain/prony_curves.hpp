#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "spiketrain/signal.hpp"

namespace spiketrain {

/// A point of the local Prony curve S_{F,i}(h): only the pair i, i+1 differs
/// from the base signal, and m_0, m_1, m_2 are unchanged.
struct CurveSample {
  SpikeSignal signal;
  /// Sweep parameter in [0, 1]; 0.5 is the base signal itself.
  double parameter = 0.0;
  double free_node = 0.0;     // x'_i
  double partner_node = 0.0;  // x'_{i+1}
};

/// First three moments of a node pair, the data that fixes a Prony curve.
struct PairMoments {
  double m0 = 0.0;
  double m1 = 0.0;
  double m2 = 0.0;
};

/// Moments of spikes (i, i+1), i 1-based.
PairMoments pair_moments(const SpikeSignal& signal, std::size_t index);

/// Partner node on the hyperbola m0 x1 x2 - m1 (x1 + x2) + m2 = 0:
///   x2 = (m1 x1 - m2) / (m0 x1 - m1).
/// Throws Error{AtAsymptote} when x1 sits on the asymptote x1 = m1/m0.
double hyperbola_partner(const PairMoments& moments, double x1);

/// m0 x1 x2 - m1 (x1 + x2) + m2.
double hyperbola_residual(const PairMoments& moments, double x1, double x2);

/// Amplitudes that reproduce m0 and m1 at nodes x1 < x2:
///   a1 = (m0 x2 - m1)/(x2 - x1),  a2 = (m1 - m0 x1)/(x2 - x1).
/// Throws Error{NodeCollision}.
std::pair<double, double> curve_amplitudes(double m0, double m1, double x1, double x2);

/// n >= 2 points of S_{F,i}(h). The first and last are the two points where
/// the hyperbola branch through (x_i, x_{i+1}) leaves the disk of radius h/2
/// around it; the sweep over x'_i is uniform on each side of the base point,
/// so for odd n the middle sample is F itself.
std::vector<CurveSample> local_curve_samples(const SpikeSignal& signal, std::size_t index,
                                             std::size_t count);

/// The two boundary points of S_{F,i}(h), ordered by increasing x'_i.
std::pair<CurveSample, CurveSample> curve_endpoints(const SpikeSignal& signal, std::size_t index);

}  // namespace spiketrain
