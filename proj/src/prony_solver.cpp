#include "spiketrain/prony_solver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "spiketrain/moments.hpp"

namespace spiketrain {

namespace {

// Relative threshold below which the Hankel system counts as rank-deficient.
constexpr double kHankelRankTolerance = 1e-13;
// Eigenvalues with relative imaginary part above this are genuinely complex.
constexpr double kImaginaryTolerance = 1e-10;

InversionReport failed(ErrorKind kind) {
  InversionReport report;
  report.condition = ConditionFlag::Failed;
  report.failure = kind;
  return report;
}

double node_scale(std::span<const double> nodes) {
  double scale = 0.0;
  for (double x : nodes) scale = std::max(scale, std::abs(x));
  return scale;
}

// Fills residual, tail deviation and the condition flag for a recovered signal.
InversionReport finish(SpikeSignal signal, const MomentVector& moments, std::size_t inverted) {
  InversionReport report;
  const auto recovered = forward_moments(signal, moments.size());
  for (std::size_t k = 0; k < moments.size(); ++k) {
    const double dev = std::abs(recovered[k] - moments[k]);
    if (k < inverted) {
      report.residual = std::max(report.residual, dev);
    } else {
      report.tail_deviation = std::max(report.tail_deviation, dev);
    }
  }
  report.condition = ConditionFlag::WellSeparated;
  const auto nodes = signal.nodes();
  const double scale = node_scale(nodes);
  for (std::size_t j = 1; j < nodes.size(); ++j) {
    if (nodes[j] - nodes[j - 1] < kNearCollisionFraction * scale) {
      report.condition = ConditionFlag::NearCollision;
    }
  }
  report.signal = std::move(signal);
  return report;
}

bool roots_coincide(double lo, double hi) {
  const double scale = std::max(std::abs(lo), std::abs(hi));
  return !(hi - lo > kRootSeparationTolerance * scale);
}

InversionReport invert1(const MomentVector& moments) {
  if (moments[0] == 0.0) return failed(ErrorKind::DegenerateHankel);
  return finish(SpikeSignal::create({moments[0]}, {moments[1] / moments[0]}), moments, 2);
}

InversionReport invert2_impl(const MomentVector& moments) {
  const double m0 = moments[0], m1 = moments[1], m2 = moments[2], m3 = moments[3];

  // Prony quadratic z^2 + c1 z + c0 annihilates the moment sequence:
  //   m_{k+2} + c1 m_{k+1} + c0 m_k = 0,  k = 0, 1.
  const double det = m0 * m2 - m1 * m1;
  if (!(std::abs(det) > kHankelRankTolerance * (std::abs(m0 * m2) + m1 * m1))) {
    return failed(ErrorKind::DegenerateHankel);
  }
  const double c0 = (m1 * m3 - m2 * m2) / det;
  const double c1 = (m1 * m2 - m0 * m3) / det;

  const double disc = c1 * c1 - 4.0 * c0;
  if (disc < 0.0) return failed(ErrorKind::ComplexRoots);
  const double q = -0.5 * (c1 + std::copysign(std::sqrt(disc), c1));
  if (q == 0.0) return failed(ErrorKind::CoincidentRoots);
  double x1 = q;
  double x2 = c0 / q;
  if (x1 > x2) std::swap(x1, x2);
  if (roots_coincide(x1, x2)) return failed(ErrorKind::CoincidentRoots);

  const double gap = x2 - x1;
  const double a1 = (m0 * x2 - m1) / gap;
  const double a2 = (m1 - m0 * x1) / gap;
  return finish(SpikeSignal::create({a1, a2}, {x1, x2}), moments, 4);
}

InversionReport invert_general(const MomentVector& moments, std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d);
  Eigen::MatrixXd hankel(n, n);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) hankel(r, c) = moments[static_cast<std::size_t>(r + c)];
    rhs(r) = -moments[static_cast<std::size_t>(r + n)];
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(hankel);
  lu.setThreshold(kHankelRankTolerance);
  if (lu.rank() < n) return failed(ErrorKind::DegenerateHankel);
  const Eigen::VectorXd coeffs = lu.solve(rhs);

  // Companion matrix of z^d + c_{d-1} z^{d-1} + ... + c_0.
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index r = 1; r < n; ++r) companion(r, r - 1) = 1.0;
  for (Eigen::Index r = 0; r < n; ++r) companion(r, n - 1) = -coeffs(r);
  Eigen::EigenSolver<Eigen::MatrixXd> eig(companion, false);
  if (eig.info() != Eigen::Success) return failed(ErrorKind::ComplexRoots);

  const Eigen::VectorXcd eigenvalues = eig.eigenvalues();
  double scale = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) scale = std::max(scale, std::abs(eigenvalues(j)));
  std::vector<double> roots;
  roots.reserve(d);
  for (Eigen::Index j = 0; j < n; ++j) {
    if (std::abs(eigenvalues(j).imag()) > kImaginaryTolerance * std::max(scale, 1e-300)) {
      return failed(ErrorKind::ComplexRoots);
    }
    roots.push_back(eigenvalues(j).real());
  }

  // Newton polish on the monic polynomial; QR eigenvalues lose a few digits.
  auto poly = [&](double z, double& deriv) {
    double p = 1.0;
    deriv = 0.0;
    for (Eigen::Index l = n - 1; l >= 0; --l) {
      deriv = deriv * z + p;
      p = p * z + coeffs(l);
    }
    return p;
  };
  for (double& z : roots) {
    for (int it = 0; it < 3; ++it) {
      double deriv = 0.0;
      const double p = poly(z, deriv);
      if (deriv == 0.0 || !std::isfinite(p / deriv)) break;
      z -= p / deriv;
    }
  }

  std::sort(roots.begin(), roots.end());
  for (std::size_t j = 1; j < d; ++j) {
    if (roots_coincide(roots[j - 1], roots[j])) return failed(ErrorKind::CoincidentRoots);
  }

  Eigen::MatrixXd vandermonde(n, n);
  Eigen::VectorXd first(n);
  for (Eigen::Index c = 0; c < n; ++c) {
    double power = 1.0;
    for (Eigen::Index r = 0; r < n; ++r) {
      vandermonde(r, c) = power;
      power *= roots[static_cast<std::size_t>(c)];
    }
  }
  for (Eigen::Index r = 0; r < n; ++r) first(r) = moments[static_cast<std::size_t>(r)];
  const Eigen::VectorXd amps = vandermonde.fullPivLu().solve(first);

  std::vector<double> amplitudes(amps.data(), amps.data() + n);
  if (!std::all_of(amplitudes.begin(), amplitudes.end(), [](double a) { return std::isfinite(a); })) {
    return failed(ErrorKind::DegenerateHankel);
  }
  return finish(SpikeSignal::create(std::move(amplitudes), std::move(roots)), moments, 2 * d);
}

}  // namespace

const char* condition_name(ConditionFlag flag) noexcept {
  switch (flag) {
    case ConditionFlag::WellSeparated: return "WellSeparated";
    case ConditionFlag::NearCollision: return "NearCollision";
    case ConditionFlag::Failed: return "Failed";
  }
  return "Failed";
}

InversionReport invert2(const MomentVector& moments) {
  if (moments.size() != 4) {
    throw Error(ErrorKind::InvalidArgument, "invert2 expects exactly 4 moments");
  }
  return invert2_impl(moments);
}

InversionReport invert(const MomentVector& moments, std::size_t spikes) {
  if (spikes == 0) throw Error(ErrorKind::InvalidArgument, "spike count must be >= 1");
  if (moments.size() < 2 * spikes) {
    throw Error(ErrorKind::InvalidArgument, "need at least 2d = " + std::to_string(2 * spikes) +
                                                " moments, got " + std::to_string(moments.size()));
  }
  InversionReport report;
  if (spikes == 1) {
    report = invert1(moments);
  } else if (spikes == 2) {
    report = invert2_impl(moments);
  } else {
    report = invert_general(moments, spikes);
  }
  return report;
}

double max_moment_deviation(const SpikeSignal& candidate, const SpikeSignal& reference,
                            std::size_t count) {
  if (candidate.size() != reference.size()) {
    throw Error(ErrorKind::LengthMismatch, "error-set membership needs equal spike counts");
  }
  const auto lhs = forward_moments(candidate, count);
  const auto rhs = forward_moments(reference, count);
  double worst = 0.0;
  for (std::size_t k = 0; k < count; ++k) worst = std::max(worst, std::abs(lhs[k] - rhs[k]));
  return worst;
}

bool in_error_set(const SpikeSignal& candidate, const SpikeSignal& reference, double eps,
                  std::size_t count) {
  if (!(eps > 0.0)) throw Error(ErrorKind::InvalidArgument, "eps must be positive");
  return max_moment_deviation(candidate, reference, count) <= eps;
}

}  // namespace spiketrain
