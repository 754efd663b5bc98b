#include "spiketrain/error_set.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include "spiketrain/bounds.hpp"
#include "spiketrain/error.hpp"
#include "spiketrain/moments.hpp"
#include "spiketrain/prony_curves.hpp"
#include "spiketrain/prony_solver.hpp"

namespace spiketrain {

namespace {

struct Slice {
  std::vector<SpikeSignal> points;
  std::size_t skipped = 0;
};

double node_distance(const SpikeSignal& lhs, const SpikeSignal& rhs) {
  double sum = 0.0;
  for (std::size_t j = 0; j < lhs.size(); ++j) {
    const double diff = lhs.node(j) - rhs.node(j);
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

}  // namespace

ErrorCloud sample_error_set(const SpikeSignal& signal, double eps, std::size_t steps,
                            unsigned threads) {
  if (signal.size() != 2) {
    throw Error(ErrorKind::InvalidArgument, "the grid sampler handles two-spike signals only");
  }
  if (!(eps > 0.0)) throw Error(ErrorKind::InvalidArgument, "eps must be positive");
  if (steps < 2) throw Error(ErrorKind::InvalidArgument, "need at least 2 grid steps per axis");

  const auto center = forward_moments(signal, kSamplerMoments);
  std::vector<double> offsets(steps);
  for (std::size_t j = 0; j < steps; ++j) {
    offsets[j] = eps * (2.0 * static_cast<double>(j) / static_cast<double>(steps - 1) - 1.0);
  }
  double scale = 1.0;
  for (double m : center.values()) scale = std::max(scale, std::abs(m));
  const double residual_limit = kSamplerResidualLimit * scale;

  // One slice per m_0 grid value; slices are concatenated in order.
  std::vector<Slice> slices(steps);
  auto fill = [&](std::size_t i0) {
    Slice& slice = slices[i0];
    for (std::size_t i1 = 0; i1 < steps; ++i1) {
      for (std::size_t i2 = 0; i2 < steps; ++i2) {
        for (std::size_t i3 = 0; i3 < steps; ++i3) {
          const MomentVector z({center[0] + offsets[i0], center[1] + offsets[i1],
                                center[2] + offsets[i2], center[3] + offsets[i3]});
          auto report = invert2(z);
          if (!report.ok() || report.residual > residual_limit) {
            ++slice.skipped;
            continue;
          }
          slice.points.push_back(std::move(*report.signal));
        }
      }
    }
  };

  unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, steps));
  if (workers <= 1) {
    for (std::size_t i0 = 0; i0 < steps; ++i0) fill(i0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i0 = w; i0 < steps; i0 += workers) fill(i0);
      });
    }
  }

  ErrorCloud cloud{signal, {}, 0, GridSpec{eps, steps, kSamplerMoments}};
  for (auto& slice : slices) {
    cloud.skipped += slice.skipped;
    cloud.points.insert(cloud.points.end(), std::make_move_iterator(slice.points.begin()),
                        std::make_move_iterator(slice.points.end()));
  }
  return cloud;
}

std::vector<NodePoint> project_nodes(const ErrorCloud& cloud) {
  std::vector<NodePoint> nodes;
  nodes.reserve(cloud.points.size());
  for (const auto& point : cloud.points) nodes.push_back({point.node(0), point.node(1)});
  return nodes;
}

WorstCaseEstimate worst_case_error(const SpikeSignal& signal, double eps,
                                   const WorstCaseMethod& method) {
  if (!(eps > 0.0)) throw Error(ErrorKind::InvalidArgument, "eps must be positive");
  if (const auto* sampler = std::get_if<Sampler>(&method)) {
    const auto cloud = sample_error_set(signal, eps, sampler->steps);
    WorstCaseEstimate estimate{0.0, cloud.points.size(), true};
    for (const auto& point : cloud.points) {
      estimate.rho = std::max(estimate.rho, node_distance(point, signal));
    }
    return estimate;
  }

  const auto& endpoints = std::get<CurveEndpoints>(method);
  const auto [first, last] = curve_endpoints(signal, endpoints.index);
  for (const auto* sample : {&first, &last}) {
    if (!in_error_set(sample->signal, signal, eps, endpoints.moment_count)) {
      throw Error(ErrorKind::EndpointNotInSet,
                  "curve endpoint deviates by " +
                      std::to_string(max_moment_deviation(sample->signal, signal,
                                                          endpoints.moment_count)) +
                      " > eps");
    }
  }
  return WorstCaseEstimate{
      std::max(node_distance(first.signal, signal), node_distance(last.signal, signal)), 2, false};
}

SpikeSignal symmetric_pair(double gap) {
  return SpikeSignal::create({0.5, 0.5}, {-0.5 * gap, 0.5 * gap});
}

AmplificationFit amplification_exponent(const std::vector<double>& gaps, double c_mult,
                                        std::size_t moment_count) {
  if (gaps.size() < 2) throw Error(ErrorKind::InsufficientPoints, "need at least two gaps");
  if (!(c_mult >= 1.0)) throw Error(ErrorKind::InvalidArgument, "c_mult must be >= 1");

  AmplificationFit fit;
  for (double h : gaps) {
    const auto signal = symmetric_pair(h);
    const auto spec = cluster_of(signal, 1);
    const double eps = c_mult * c_of_cluster(spec, moment_count) * h * h * h;
    const auto estimate = worst_case_error(signal, eps, CurveEndpoints{1, moment_count});
    fit.points.push_back({h, eps, estimate.rho, estimate.rho / eps});
  }

  const double n = static_cast<double>(fit.points.size());
  double sx = 0.0, sy = 0.0;
  for (const auto& p : fit.points) {
    sx += std::log(p.gap);
    sy += std::log(p.rho);
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& p : fit.points) {
    const double dx = std::log(p.gap) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(p.rho) - my);
  }
  if (!(sxx > 0.0)) throw Error(ErrorKind::InsufficientPoints, "gaps must not all be equal");
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  return fit;
}

}  // namespace spiketrain
