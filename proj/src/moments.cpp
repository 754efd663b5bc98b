#include "spiketrain/moments.hpp"

#include <string>

#include "spiketrain/detail/exp_sum.hpp"
#include "spiketrain/error.hpp"

namespace spiketrain {

MomentVector forward_moments(const SpikeSignal& signal, std::size_t count) {
  if (count == 0) throw Error(ErrorKind::InvalidArgument, "moment count must be >= 1");
  std::vector<double> moments(count, 0.0);
  std::vector<double> powers(signal.amplitudes().begin(), signal.amplitudes().end());
  const auto nodes = signal.nodes();
  for (std::size_t k = 0; k < count; ++k) {
    double sum = 0.0;
    for (std::size_t j = 0; j < powers.size(); ++j) {
      sum += powers[j];
      powers[j] *= nodes[j];
    }
    moments[k] = sum;
  }
  return MomentVector(std::move(moments));
}

std::vector<std::uint64_t> binomial_row(std::size_t k) {
  if (k >= kMaxShiftMoments) {
    throw Error(ErrorKind::InvalidArgument, "binomial row " + std::to_string(k) + " overflows");
  }
  std::vector<std::uint64_t> row{1};
  for (std::size_t r = 1; r <= k; ++r) {
    std::vector<std::uint64_t> next(r + 1, 1);
    for (std::size_t l = 1; l < r; ++l) next[l] = row[l - 1] + row[l];
    row = std::move(next);
  }
  return row;
}

MomentVector shift_moments(const MomentVector& moments, double shift) {
  const std::size_t n = moments.size();
  if (n > kMaxShiftMoments) {
    throw Error(ErrorKind::InvalidArgument, "shift_moments supports at most 64 moments");
  }
  std::vector<double> shifted(n, 0.0);
  std::vector<std::uint64_t> row{1};
  for (std::size_t k = 0; k < n; ++k) {
    if (k > 0) {
      std::vector<std::uint64_t> next(k + 1, 1);
      for (std::size_t l = 1; l < k; ++l) next[l] = row[l - 1] + row[l];
      row = std::move(next);
    }
    // Horner in the shift: sum_l C(k,l) s^{k-l} m_l, from l = 0 upwards.
    double acc = 0.0;
    for (std::size_t l = 0; l <= k; ++l) {
      acc = acc * shift + static_cast<double>(row[l]) * moments[l];
    }
    shifted[k] = acc;
  }
  return MomentVector(std::move(shifted));
}

std::vector<std::complex<double>> fourier_samples(const SpikeSignal& signal, std::size_t count) {
  if (signal.size() != 2) {
    throw Error(ErrorKind::InvalidArgument, "Fourier samples are defined for two-spike signals");
  }
  std::vector<std::complex<double>> samples;
  samples.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    samples.push_back(detail::two_term_exp_moment(signal.amplitude(0), signal.node(0),
                                                  signal.amplitude(1), signal.node(1), k));
  }
  return samples;
}

}  // namespace spiketrain
