#include "spiketrain/prony_curves.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "spiketrain/error.hpp"
#include "spiketrain/moments.hpp"

namespace spiketrain {

namespace {

constexpr double kAsymptoteTolerance = 1e-14;
constexpr double kCollisionTolerance = 1e-14;
constexpr int kMaxBisection = 200;
constexpr double kBisectionTolerance = 1e-14;

// Geometry of one local Prony curve: the pair, its moments and its disk.
struct LocalCurve {
  const SpikeSignal* base = nullptr;
  std::size_t j = 0;  // 0-based index of x_i
  PairMoments moments;
  double x_lo = 0.0;
  double x_hi = 0.0;
  double radius = 0.0;

  // Partner node if (t, partner) stays on the branch through (x_lo, x_hi)
  // and inside the closed disk; nullopt otherwise.
  std::optional<double> inside(double t) const {
    if (moments.m0 != 0.0) {
      const double base_side = moments.m0 * x_lo - moments.m1;
      const double side = moments.m0 * t - moments.m1;
      if (!(side * base_side > 0.0)) return std::nullopt;
    }
    double partner = 0.0;
    try {
      partner = hyperbola_partner(moments, t);
    } catch (const Error&) {
      return std::nullopt;
    }
    if (!(std::hypot(t - x_lo, partner - x_hi) <= radius)) return std::nullopt;
    return partner;
  }

  CurveSample sample(double parameter, double t) const {
    if (t == x_lo) {
      return CurveSample{*base, parameter, x_lo, x_hi};
    }
    const double partner = hyperbola_partner(moments, t);
    const auto [a_lo, a_hi] = curve_amplitudes(moments.m0, moments.m1, t, partner);
    return CurveSample{base->with_pair(j, a_lo, t, a_hi, partner), parameter, t, partner};
  }

  // Last x'_i on the branch inside the disk, walking from x_lo in `direction`.
  double boundary(double direction) const {
    double lo = x_lo;
    double hi = x_lo + direction * radius;
    if (inside(hi)) return hi;
    const double tol = kBisectionTolerance * radius * 2.0;
    for (int it = 0; it < kMaxBisection && std::abs(hi - lo) > tol; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid == lo || mid == hi) break;
      if (inside(mid)) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return lo;
  }
};

LocalCurve make_curve(const SpikeSignal& signal, std::size_t index) {
  const ClusterSpec spec = cluster_of(signal, index);
  LocalCurve curve;
  curve.base = &signal;
  curve.j = index - 1;
  curve.moments = pair_moments(signal, index);
  curve.x_lo = signal.node(curve.j);
  curve.x_hi = signal.node(curve.j + 1);
  curve.radius = 0.5 * spec.gap;
  const auto& m = curve.moments;
  const double det = m.m0 * m.m2 - m.m1 * m.m1;
  if (!(std::abs(det) > kAsymptoteTolerance * (std::abs(m.m0 * m.m2) + m.m1 * m.m1))) {
    throw Error(ErrorKind::DegeneratePair, "pair has a zero amplitude; its Prony curve is degenerate");
  }
  return curve;
}

}  // namespace

PairMoments pair_moments(const SpikeSignal& signal, std::size_t index) {
  if (index < 1 || index + 1 > signal.size()) {
    throw Error(ErrorKind::IndexOutOfRange, "pair index out of range");
  }
  const std::size_t j = index - 1;
  const auto pair = SpikeSignal::create({signal.amplitude(j), signal.amplitude(j + 1)},
                                        {signal.node(j), signal.node(j + 1)});
  const auto m = forward_moments(pair, 3);
  return PairMoments{m[0], m[1], m[2]};
}

double hyperbola_partner(const PairMoments& m, double x1) {
  const double den = m.m0 * x1 - m.m1;
  if (!(std::abs(den) > kAsymptoteTolerance * (std::abs(m.m0 * x1) + std::abs(m.m1)))) {
    throw Error(ErrorKind::AtAsymptote, "x1 lies on the asymptote x1 = m1/m0");
  }
  return (m.m1 * x1 - m.m2) / den;
}

double hyperbola_residual(const PairMoments& m, double x1, double x2) {
  return m.m0 * x1 * x2 - m.m1 * (x1 + x2) + m.m2;
}

std::pair<double, double> curve_amplitudes(double m0, double m1, double x1, double x2) {
  const double gap = x2 - x1;
  const double scale = std::max({1.0, std::abs(x1), std::abs(x2)});
  if (!(gap > kCollisionTolerance * scale)) {
    throw Error(ErrorKind::NodeCollision, "nodes must satisfy x1 < x2");
  }
  return {(m0 * x2 - m1) / gap, (m1 - m0 * x1) / gap};
}

std::pair<CurveSample, CurveSample> curve_endpoints(const SpikeSignal& signal, std::size_t index) {
  const LocalCurve curve = make_curve(signal, index);
  return {curve.sample(0.0, curve.boundary(-1.0)), curve.sample(1.0, curve.boundary(1.0))};
}

std::vector<CurveSample> local_curve_samples(const SpikeSignal& signal, std::size_t index,
                                             std::size_t count) {
  if (count < 2) throw Error(ErrorKind::InvalidArgument, "need at least 2 curve samples");
  const LocalCurve curve = make_curve(signal, index);
  const double t_first = curve.boundary(-1.0);
  const double t_last = curve.boundary(1.0);

  std::vector<CurveSample> samples;
  samples.reserve(count);
  const std::size_t last = count - 1;
  for (std::size_t k = 0; k <= last; ++k) {
    const double parameter = static_cast<double>(k) / static_cast<double>(last);
    double t = 0.0;
    if (k == 0) {
      t = t_first;
    } else if (k == last) {
      t = t_last;
    } else if (2 * k < last) {
      const double frac = 2.0 * static_cast<double>(k) / static_cast<double>(last);
      t = t_first + (curve.x_lo - t_first) * frac;
    } else {
      const double frac = static_cast<double>(2 * k - last) / static_cast<double>(last);
      t = curve.x_lo + (t_last - curve.x_lo) * frac;
    }
    samples.push_back(curve.sample(parameter, t));
  }
  return samples;
}

}  // namespace spiketrain
