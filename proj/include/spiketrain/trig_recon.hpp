#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace spiketrain {

/// F(u) = a delta(u - e^{i phi}) + b delta(u - e^{i theta}). Phases are kept
/// in (-pi, pi].
class UnitCircleSignal {
 public:
  /// Throws Error{NonFinite, NodeCollision}.
  UnitCircleSignal(double a, double b, double phi, double theta);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double phi() const noexcept { return phi_; }
  double theta() const noexcept { return theta_; }

 private:
  double a_;
  double b_;
  double phi_;
  double theta_;
};

/// Wraps an angle into (-pi, pi].
double wrap_phase(double angle);

/// The real measurements |m_0|, |m_1|, |m_2| and Im m_1, with Re m_1 optional.
struct TrigMeasurements {
  double m0_abs = 0.0;
  double m1_abs = 0.0;
  double m2_abs = 0.0;
  double im_m1 = 0.0;
  std::optional<double> re_m1;
};

/// Throws Error{InconsistentMeasurements} on negative magnitudes, |Im m_1| > |m_1|,
/// or Re^2 + Im^2 != |m_1|^2 beyond 1e-9 relative.
void validate(const TrigMeasurements& meas);

/// m_k = a e^{ik phi} + b e^{ik theta}, k = 0..count-1.
std::vector<std::complex<double>> trig_moments(const UnitCircleSignal& signal, std::size_t count);

/// Measurements of a signal; Re m_1 included when requested.
TrigMeasurements measure(const UnitCircleSignal& signal, bool include_re = false);

/// Delta in [0, pi] from
///   cos Delta = (2 M1^2 - M0^2 - M2^2) / (2 (M0^2 - M1^2)).
/// Throws Error{DegenerateCluster, ArgumentOutOfRange}.
double recover_delta(double m0_abs, double m1_abs, double m2_abs);

/// Roots of a^2 - M0 a + ab = 0 with ab = (M1^2 - M0^2)^2 / (M2^2 + 3 M0^2 - 4 M1^2).
/// Returns ((a+, a-), (a-, a+)); both entries coincide for a double root.
/// Throws Error{ZeroDenominator, NegativeDiscriminant}.
std::pair<std::pair<double, double>, std::pair<double, double>> recover_amplitudes(
    double m0_abs, double m1_abs, double m2_abs);

/// theta with cos theta = (Re m1 (a cos D + b) + Im m1 a sin D) / ((a cos D + b)^2 + (a sin D)^2),
/// its sign chosen so that a sin(theta + D) + b sin theta = Im m1; phi = theta + D.
/// Returns (theta, phi), wrapped. Throws Error{ZeroDenominator, InconsistentImPart}.
std::pair<double, double> recover_phases(double delta, double a, double b,
                                         std::complex<double> m1);

struct TrigCandidate {
  UnitCircleSignal signal;
  /// max relative error over |m_0|, |m_1|, |m_2|.
  double magnitude_residual = 0.0;
  /// |Im m_1(candidate) - Im m_1|.
  double im_residual = 0.0;
};

/// Every signal, up to spike relabeling, consistent with the measurements.
/// When Re m_1 is missing both signs of sqrt(M1^2 - Im^2) are tried. Sorted
/// by theta, then a. Throws Error{DegenerateCluster, ..., NoConsistentCandidate}.
std::vector<TrigCandidate> trig_reconstruct(const TrigMeasurements& meas);

/// Same up to swapping (a, phi) with (b, theta) and phase wrapping.
bool same_up_to_relabeling(const UnitCircleSignal& lhs, const UnitCircleSignal& rhs, double tol);

}  // namespace spiketrain
