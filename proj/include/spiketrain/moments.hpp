#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "spiketrain/signal.hpp"

namespace spiketrain {

/// Largest moment count supported by shift_moments (exact 64-bit binomials).
inline constexpr std::size_t kMaxShiftMoments = 64;

/// m_k = sum_j a_j x_j^k for k = 0..count-1. Nodes are raised by repeated
/// multiplication and summed in ascending node order, so a shorter call is
/// always a bit-exact prefix of a longer one.
MomentVector forward_moments(const SpikeSignal& signal, std::size_t count);

/// Row k of Pascal's triangle, C(k,0)..C(k,k), exact for k < 64.
std::vector<std::uint64_t> binomial_row(std::size_t k);

/// Moments of F(x - shift), i.e. of the signal with every node moved by +shift:
///   m_k(F^shift) = sum_{l<=k} C(k,l) shift^{k-l} m_l(F).
/// shift_moments(shift_moments(m, s), -s) recovers m up to rounding.
MomentVector shift_moments(const MomentVector& moments, double shift);

/// Fourier samples f_k = a_1 e^{i k x_1} + a_2 e^{i k x_2}, k = 0..count-1, of a
/// two-spike signal. These are the complex moments of the signal with nodes
/// e^{i x_1}, e^{i x_2}.
std::vector<std::complex<double>> fourier_samples(const SpikeSignal& signal, std::size_t count);

}  // namespace spiketrain
