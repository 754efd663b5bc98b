#pragma once

#include <complex>
#include <cstddef>

namespace spiketrain::detail {

// a e^{ik p} + b e^{ik q}; the single kernel behind both Fourier samples of a
// real two-spike signal and the complex moments of a unit-circle signal.
inline std::complex<double> two_term_exp_moment(double a, double p, double b, double q,
                                                std::size_t k) {
  const double kd = static_cast<double>(k);
  return a * std::polar(1.0, kd * p) + b * std::polar(1.0, kd * q);
}

}  // namespace spiketrain::detail
