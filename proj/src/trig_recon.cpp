#include "spiketrain/trig_recon.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "spiketrain/detail/exp_sum.hpp"
#include "spiketrain/error.hpp"

namespace spiketrain {

namespace {

constexpr double kDegeneracyTolerance = 1e-12;
constexpr double kClampTolerance = 1e-9;
constexpr double kDiscriminantTolerance = 1e-12;
constexpr double kConsistencyTolerance = 1e-9;
constexpr double kVerifyTolerance = 1e-8;
constexpr double kDedupTolerance = 1e-9;

double phase_distance(double lhs, double rhs) { return std::abs(wrap_phase(lhs - rhs)); }

}  // namespace

double wrap_phase(double angle) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double wrapped = std::remainder(angle, two_pi);
  if (wrapped <= -std::numbers::pi) wrapped += two_pi;
  return wrapped;
}

UnitCircleSignal::UnitCircleSignal(double a, double b, double phi, double theta)
    : a_(a), b_(b), phi_(wrap_phase(phi)), theta_(wrap_phase(theta)) {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(phi) || !std::isfinite(theta)) {
    throw Error(ErrorKind::NonFinite, "unit-circle signal entries must be finite");
  }
  if (phi_ == theta_) throw Error(ErrorKind::NodeCollision, "phases must differ");
}

void validate(const TrigMeasurements& meas) {
  const double values[] = {meas.m0_abs, meas.m1_abs, meas.m2_abs, meas.im_m1};
  for (double v : values) {
    if (!std::isfinite(v)) throw Error(ErrorKind::NonFinite, "measurements must be finite");
  }
  if (meas.m0_abs < 0.0 || meas.m1_abs < 0.0 || meas.m2_abs < 0.0) {
    throw Error(ErrorKind::InconsistentMeasurements, "moment magnitudes must be non-negative");
  }
  const double m1_sq = meas.m1_abs * meas.m1_abs;
  if (meas.im_m1 * meas.im_m1 > m1_sq * (1.0 + kConsistencyTolerance)) {
    throw Error(ErrorKind::InconsistentMeasurements, "|Im m1| exceeds |m1|");
  }
  if (meas.re_m1) {
    if (!std::isfinite(*meas.re_m1)) throw Error(ErrorKind::NonFinite, "Re m1 must be finite");
    const double norm = *meas.re_m1 * *meas.re_m1 + meas.im_m1 * meas.im_m1;
    if (std::abs(norm - m1_sq) > kConsistencyTolerance * m1_sq) {
      throw Error(ErrorKind::InconsistentMeasurements, "Re m1^2 + Im m1^2 != |m1|^2");
    }
  }
}

std::vector<std::complex<double>> trig_moments(const UnitCircleSignal& signal, std::size_t count) {
  std::vector<std::complex<double>> moments;
  moments.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    moments.push_back(
        detail::two_term_exp_moment(signal.a(), signal.phi(), signal.b(), signal.theta(), k));
  }
  return moments;
}

TrigMeasurements measure(const UnitCircleSignal& signal, bool include_re) {
  const auto m = trig_moments(signal, 3);
  TrigMeasurements meas{std::abs(m[0]), std::abs(m[1]), std::abs(m[2]), m[1].imag(), std::nullopt};
  if (include_re) meas.re_m1 = m[1].real();
  return meas;
}

double recover_delta(double m0_abs, double m1_abs, double m2_abs) {
  const double m0_sq = m0_abs * m0_abs;
  const double m1_sq = m1_abs * m1_abs;
  const double m2_sq = m2_abs * m2_abs;
  const double den = 2.0 * (m0_sq - m1_sq);
  if (!(std::abs(den) > 2.0 * kDegeneracyTolerance * m0_sq)) {
    throw Error(ErrorKind::DegenerateCluster, "|m1| = |m0|: the nodes coincide");
  }
  double cos_delta = (2.0 * m1_sq - m0_sq - m2_sq) / den;
  if (std::abs(cos_delta) > 1.0 + kClampTolerance) {
    throw Error(ErrorKind::ArgumentOutOfRange, "cos(Delta) = " + std::to_string(cos_delta));
  }
  cos_delta = std::clamp(cos_delta, -1.0, 1.0);
  return std::acos(cos_delta);
}

std::pair<std::pair<double, double>, std::pair<double, double>> recover_amplitudes(
    double m0_abs, double m1_abs, double m2_abs) {
  const double m0_sq = m0_abs * m0_abs;
  const double m1_sq = m1_abs * m1_abs;
  const double m2_sq = m2_abs * m2_abs;
  const double den = m2_sq + 3.0 * m0_sq - 4.0 * m1_sq;
  if (!(std::abs(den) > kDegeneracyTolerance * m0_sq)) {
    throw Error(ErrorKind::ZeroDenominator, "M2^2 + 3 M0^2 - 4 M1^2 vanishes");
  }
  const double diff = m1_sq - m0_sq;
  const double product = diff * diff / den;
  double disc = m0_sq - 4.0 * product;
  if (disc < 0.0) {
    if (disc < -kDiscriminantTolerance * m0_sq) {
      throw Error(ErrorKind::NegativeDiscriminant, "amplitude quadratic has no real roots");
    }
    disc = 0.0;
  }
  const double root = std::sqrt(disc);
  const double hi = 0.5 * (m0_abs + root);
  const double lo = 0.5 * (m0_abs - root);
  return {{hi, lo}, {lo, hi}};
}

std::pair<double, double> recover_phases(double delta, double a, double b,
                                         std::complex<double> m1) {
  const double re_coeff = a * std::cos(delta) + b;
  const double im_coeff = a * std::sin(delta);
  const double den = re_coeff * re_coeff + im_coeff * im_coeff;
  if (!(den > kDegeneracyTolerance * (a * a + b * b))) {
    throw Error(ErrorKind::ZeroDenominator, "(a cos D + b)^2 + (a sin D)^2 vanishes");
  }
  // Re m1 = A cos t - B sin t, Im m1 = B cos t + A sin t.
  const double cos_theta = (m1.real() * re_coeff + m1.imag() * im_coeff) / den;
  // The sine picks the branch of -/+ arccos(cos_theta) that reproduces Im m1;
  // atan2 keeps full precision where arccos is flat (theta near 0 or pi).
  const double sin_theta = (m1.imag() * re_coeff - m1.real() * im_coeff) / den;
  const double theta = std::atan2(sin_theta, cos_theta);
  const double im_fit = im_coeff * std::cos(theta) + re_coeff * std::sin(theta);
  if (std::abs(im_fit - m1.imag()) > kVerifyTolerance * (std::abs(a) + std::abs(b))) {
    throw Error(ErrorKind::InconsistentImPart, "no sign of theta reproduces Im m1");
  }
  return {wrap_phase(theta), wrap_phase(theta + delta)};
}

bool same_up_to_relabeling(const UnitCircleSignal& lhs, const UnitCircleSignal& rhs, double tol) {
  const bool direct = std::abs(lhs.a() - rhs.a()) <= tol && std::abs(lhs.b() - rhs.b()) <= tol &&
                      phase_distance(lhs.phi(), rhs.phi()) <= tol &&
                      phase_distance(lhs.theta(), rhs.theta()) <= tol;
  const bool swapped = std::abs(lhs.a() - rhs.b()) <= tol && std::abs(lhs.b() - rhs.a()) <= tol &&
                       phase_distance(lhs.phi(), rhs.theta()) <= tol &&
                       phase_distance(lhs.theta(), rhs.phi()) <= tol;
  return direct || swapped;
}

std::vector<TrigCandidate> trig_reconstruct(const TrigMeasurements& meas) {
  validate(meas);
  const double delta = recover_delta(meas.m0_abs, meas.m1_abs, meas.m2_abs);
  const auto [first, second] = recover_amplitudes(meas.m0_abs, meas.m1_abs, meas.m2_abs);

  std::vector<std::pair<double, double>> assignments{first};
  if (second != first) assignments.push_back(second);

  std::vector<double> re_options;
  if (meas.re_m1) {
    re_options.push_back(*meas.re_m1);
  } else {
    const double re_abs =
        std::sqrt(std::max(0.0, meas.m1_abs * meas.m1_abs - meas.im_m1 * meas.im_m1));
    re_options.push_back(re_abs);
    if (re_abs != 0.0) re_options.push_back(-re_abs);
  }

  const double magnitudes[] = {meas.m0_abs, meas.m1_abs, meas.m2_abs};
  const double scale = std::max(meas.m0_abs, 1e-300);
  std::vector<TrigCandidate> candidates;
  for (const auto& [a, b] : assignments) {
    for (double re : re_options) {
      std::optional<UnitCircleSignal> signal;
      try {
        const auto [theta, phi] = recover_phases(delta, a, b, {re, meas.im_m1});
        signal.emplace(a, b, phi, theta);
      } catch (const Error&) {
        continue;
      }
      const auto m = trig_moments(*signal, 3);
      double magnitude_residual = 0.0;
      for (std::size_t k = 0; k < 3; ++k) {
        magnitude_residual =
            std::max(magnitude_residual, std::abs(std::abs(m[k]) - magnitudes[k]) / scale);
      }
      const double im_residual = std::abs(m[1].imag() - meas.im_m1);
      if (magnitude_residual > kVerifyTolerance || im_residual > kVerifyTolerance) continue;
      const bool duplicate = std::any_of(candidates.begin(), candidates.end(), [&](const auto& c) {
        return same_up_to_relabeling(c.signal, *signal, kDedupTolerance);
      });
      if (!duplicate) candidates.push_back({*signal, magnitude_residual, im_residual});
    }
  }
  if (candidates.empty()) {
    throw Error(ErrorKind::NoConsistentCandidate, "no branch reproduces the measurements");
  }
  std::sort(candidates.begin(), candidates.end(), [](const auto& lhs, const auto& rhs) {
    return std::pair(lhs.signal.theta(), lhs.signal.a()) <
           std::pair(rhs.signal.theta(), rhs.signal.a());
  });
  return candidates;
}

}  // namespace spiketrain
