#include "spiketrain/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "spiketrain/error.hpp"
#include "spiketrain/moments.hpp"
#include "spiketrain/prony_curves.hpp"
#include "spiketrain/prony_solver.hpp"

namespace spiketrain {

namespace {

double int_pow(double base, std::size_t exponent) {
  double result = 1.0;
  for (std::size_t k = 0; k < exponent; ++k) result *= base;
  return result;
}

}  // namespace

double c_of_cluster(const ClusterSpec& spec, std::size_t count) {
  if (count == 0) throw Error(ErrorKind::InvalidArgument, "moment count must be >= 1");
  return kDeviationFactor * spec.amplitude_bound * int_pow(1.0 + std::abs(spec.center), count);
}

double moment_deviation_bound(const ClusterSpec& spec, std::size_t k) {
  if (k < 3) throw Error(ErrorKind::KTooSmall, "m_0, m_1, m_2 are preserved exactly");
  const double h = spec.gap;
  return kDeviationFactor * spec.amplitude_bound * int_pow(1.0 + std::abs(spec.center), k) *
         (h * h * h);
}

BoundReport verify_cluster_bounds(const SpikeSignal& signal, std::size_t index,
                                  std::size_t moment_count, std::size_t sample_count) {
  if (moment_count < 1) throw Error(ErrorKind::InvalidArgument, "moment count must be >= 1");
  BoundReport report;
  report.cluster = cluster_of(signal, index);
  report.moment_count = moment_count;
  report.sample_count = sample_count;
  report.c_constant = c_of_cluster(report.cluster, moment_count);

  const auto samples = local_curve_samples(signal, index, sample_count);
  const auto reference = forward_moments(signal, moment_count);
  const std::size_t preserved = std::min<std::size_t>(3, moment_count);
  report.preserved_observed.assign(preserved, 0.0);
  for (std::size_t k = 3; k < moment_count; ++k) {
    report.per_k_bound.push_back(moment_deviation_bound(report.cluster, k));
  }
  report.per_k_observed.assign(report.per_k_bound.size(), 0.0);
  report.lemma1_min_gap = std::numeric_limits<double>::infinity();

  const std::size_t j = index - 1;
  for (const auto& sample : samples) {
    const auto moments = forward_moments(sample.signal, moment_count);
    for (std::size_t k = 0; k < moment_count; ++k) {
      const double dev = std::abs(moments[k] - reference[k]);
      if (k < 3) {
        const double rel = dev / std::max(1.0, std::abs(reference[k]));
        report.preserved_observed[k] = std::max(report.preserved_observed[k], rel);
      } else {
        report.per_k_observed[k - 3] = std::max(report.per_k_observed[k - 3], dev);
      }
    }
    report.lemma1_min_gap =
        std::min(report.lemma1_min_gap, sample.signal.node(j + 1) - sample.signal.node(j));
    report.lemma2_max_amp =
        std::max({report.lemma2_max_amp, std::abs(sample.signal.amplitude(j)),
                  std::abs(sample.signal.amplitude(j + 1))});
  }

  bool pass = true;
  for (double rel : report.preserved_observed) pass = pass && rel <= kPreservedMomentTolerance;
  for (std::size_t k = 0; k < report.per_k_bound.size(); ++k) {
    pass = pass && report.per_k_observed[k] <= report.per_k_bound[k];
  }
  pass = pass && report.lemma1_min_gap >= kMinGapFraction * report.cluster.gap;
  pass = pass && report.lemma2_max_amp <= kAmplitudeFactor * report.cluster.amplitude_bound;
  report.all_pass = pass;
  return report;
}

bool theorem1_check(const SpikeSignal& signal, std::size_t index, double eps,
                    std::size_t moment_count, std::size_t sample_count) {
  const auto samples = local_curve_samples(signal, index, sample_count);
  return std::all_of(samples.begin(), samples.end(), [&](const CurveSample& sample) {
    return in_error_set(sample.signal, signal, eps, moment_count);
  });
}

}  // namespace spiketrain
