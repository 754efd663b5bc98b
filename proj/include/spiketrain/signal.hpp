#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace spiketrain {

/// A spike train F(x) = sum_j a_j delta(x - x_j) with strictly increasing
/// real nodes. Instances are always valid; construct through create().
class SpikeSignal {
 public:
  /// Throws Error{LengthMismatch, EmptySignal, NonFinite, NonIncreasingNodes}.
  static SpikeSignal create(std::vector<double> amplitudes, std::vector<double> nodes);

  std::size_t size() const noexcept { return nodes_.size(); }
  std::span<const double> amplitudes() const noexcept { return amplitudes_; }
  std::span<const double> nodes() const noexcept { return nodes_; }
  double amplitude(std::size_t j) const { return amplitudes_.at(j); }
  double node(std::size_t j) const { return nodes_.at(j); }

  /// Copy of this signal with spikes j and j+1 (0-based) replaced.
  SpikeSignal with_pair(std::size_t j, double a_first, double x_first, double a_second,
                        double x_second) const;

  friend bool operator==(const SpikeSignal&, const SpikeSignal&) = default;

 private:
  SpikeSignal(std::vector<double> amplitudes, std::vector<double> nodes)
      : amplitudes_(std::move(amplitudes)), nodes_(std::move(nodes)) {}

  std::vector<double> amplitudes_;
  std::vector<double> nodes_;
};

/// The first N moments m_0..m_{N-1} of some signal.
class MomentVector {
 public:
  /// Throws Error{EmptySignal, NonFinite}.
  explicit MomentVector(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t k) const { return values_[k]; }
  std::span<const double> values() const noexcept { return values_; }

  MomentVector prefix(std::size_t count) const;

  friend bool operator==(const MomentVector&, const MomentVector&) = default;

 private:
  std::vector<double> values_;
};

/// A near-colliding node pair. `index` is 1-based: the pair is
/// (x_index, x_{index+1}).
struct ClusterSpec {
  std::size_t index = 1;
  double gap = 0.0;
  double amplitude_bound = 0.0;
  double center = 0.0;
};

/// Cluster description of the pair (x_i, x_{i+1}), i 1-based. The amplitude
/// bound defaults to max(|a_i|, |a_{i+1}|) and may only be raised.
/// Throws Error{IndexOutOfRange, GapTooLarge, NeighborTooClose,
/// AmplitudeBoundTooSmall}.
ClusterSpec cluster_of(const SpikeSignal& signal, std::size_t index,
                       std::optional<double> amplitude_bound = std::nullopt);

}  // namespace spiketrain
