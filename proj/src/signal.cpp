#include "spiketrain/signal.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spiketrain/error.hpp"

namespace spiketrain {

namespace {

bool all_finite(std::span<const double> values) {
  return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
}

}  // namespace

SpikeSignal SpikeSignal::create(std::vector<double> amplitudes, std::vector<double> nodes) {
  if (amplitudes.size() != nodes.size()) {
    throw Error(ErrorKind::LengthMismatch, std::to_string(amplitudes.size()) + " amplitudes vs " +
                                               std::to_string(nodes.size()) + " nodes");
  }
  if (nodes.empty()) throw Error(ErrorKind::EmptySignal, "signal needs at least one spike");
  if (!all_finite(amplitudes) || !all_finite(nodes)) {
    throw Error(ErrorKind::NonFinite, "amplitudes and nodes must be finite");
  }
  for (std::size_t j = 1; j < nodes.size(); ++j) {
    if (!(nodes[j] > nodes[j - 1])) {
      throw Error(ErrorKind::NonIncreasingNodes,
                  "node " + std::to_string(j + 1) + " does not exceed node " + std::to_string(j));
    }
  }
  return SpikeSignal(std::move(amplitudes), std::move(nodes));
}

SpikeSignal SpikeSignal::with_pair(std::size_t j, double a_first, double x_first, double a_second,
                                   double x_second) const {
  if (j + 1 >= size()) throw Error(ErrorKind::IndexOutOfRange, "pair index past the last node");
  auto amplitudes = amplitudes_;
  auto nodes = nodes_;
  amplitudes[j] = a_first;
  nodes[j] = x_first;
  amplitudes[j + 1] = a_second;
  nodes[j + 1] = x_second;
  return create(std::move(amplitudes), std::move(nodes));
}

MomentVector::MomentVector(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw Error(ErrorKind::EmptySignal, "moment vector needs N >= 1");
  if (!all_finite(values_)) throw Error(ErrorKind::NonFinite, "moments must be finite");
}

MomentVector MomentVector::prefix(std::size_t count) const {
  if (count == 0 || count > size()) {
    throw Error(ErrorKind::InvalidArgument, "prefix length out of range");
  }
  return MomentVector(std::vector<double>(values_.begin(), values_.begin() + count));
}

ClusterSpec cluster_of(const SpikeSignal& signal, std::size_t index,
                       std::optional<double> amplitude_bound) {
  const std::size_t d = signal.size();
  if (index < 1 || index + 1 > d) {
    throw Error(ErrorKind::IndexOutOfRange,
                "pair index " + std::to_string(index) + " outside 1.." + std::to_string(d - 1));
  }
  const std::size_t j = index - 1;
  const double x_lo = signal.node(j);
  const double x_hi = signal.node(j + 1);
  const double h = x_hi - x_lo;
  if (!(h < 1.0)) throw Error(ErrorKind::GapTooLarge, "cluster gap must satisfy h < 1");

  if (j >= 1 && x_lo - signal.node(j - 1) < 3.0 * h) {
    throw Error(ErrorKind::NeighborTooClose, "left neighbor closer than 3h");
  }
  if (j + 2 < d && signal.node(j + 2) - x_hi < 3.0 * h) {
    throw Error(ErrorKind::NeighborTooClose, "right neighbor closer than 3h");
  }

  const double tightest = std::max(std::abs(signal.amplitude(j)), std::abs(signal.amplitude(j + 1)));
  double bound = tightest;
  if (amplitude_bound) {
    if (!std::isfinite(*amplitude_bound) || *amplitude_bound < tightest) {
      throw Error(ErrorKind::AmplitudeBoundTooSmall, "amplitude bound below max(|a_i|,|a_{i+1}|)");
    }
    bound = *amplitude_bound;
  }
  if (!(bound > 0.0)) {
    throw Error(ErrorKind::AmplitudeBoundTooSmall, "amplitude bound must be positive");
  }
  return ClusterSpec{index, h, bound, 0.5 * (x_lo + x_hi)};
}

}  // namespace spiketrain
