// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <Eigen/Dense>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "../test_support.hpp"
#include "cli.hpp"
#include "spiketrain/bounds.hpp"
#include "spiketrain/error.hpp"
#include "spiketrain/error_set.hpp"
#include "spiketrain/io.hpp"
#include "spiketrain/moments.hpp"
#include "spiketrain/prony_curves.hpp"
#include "spiketrain/prony_solver.hpp"
#include "spiketrain/trig_recon.hpp"

namespace {

using namespace spiketrain;
using Clock = std::chrono::steady_clock;
constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// max_k |m_k(G) - m_k(F)| with std::pow summation.
double oracle_deviation(const SpikeSignal& g, const SpikeSignal& f, std::size_t count) {
  const auto mg = testing::pow_moments(g, count);
  const auto mf = testing::pow_moments(f, count);
  double worst = 0.0;
  for (std::size_t k = 0; k < count; ++k) worst = std::max(worst, std::abs(mg[k] - mf[k]));
  return worst;
}

// Euclidean distance from (p, q) to the hyperbola u v = c, both branches.
// Stationary points solve u^4 - p u^3 + c q u - c^2 = 0.
double hyperbola_distance(double p, double q, double c) {
  Eigen::Matrix4d companion = Eigen::Matrix4d::Zero();
  companion(1, 0) = companion(2, 1) = companion(3, 2) = 1.0;
  companion(0, 3) = c * c;
  companion(1, 3) = -c * q;
  companion(2, 3) = 0.0;
  companion(3, 3) = p;
  const Eigen::EigenSolver<Eigen::Matrix4d> solver(companion, false);
  double best = INFINITY;
  for (const auto& root : solver.eigenvalues()) {
    if (std::abs(root.imag()) > 1e-9 * (1.0 + std::abs(root))) continue;
    const double u = root.real();
    if (u == 0.0) continue;
    best = std::min(best, std::hypot(u - p, c / u - q));
  }
  return best;
}

Outcome criterion1() {
  const SpikeSignal f = SpikeSignal::create({0.5, 0.5}, {-0.1, 0.1});
  const double eps = 0.002;
  if (std::abs(hyperbola_distance(0.0, 0.0, -0.01) - std::sqrt(0.02)) > 1e-12 ||
      hyperbola_distance(-0.1, 0.1, -0.01) > 1e-12 ||
      std::abs(hyperbola_distance(0.05, -0.05, -0.01) - std::hypot(0.05, 0.05)) > 1e-12) {
    return {false, "hyperbola distance oracle self-check failed"};
  }
  const auto dir = std::filesystem::temp_directory_path() / "spiketrain_acceptance";
  std::filesystem::create_directories(dir);
  const auto signal_path = dir / "wide_pair.json";
  const auto csv_path = dir / "wide_pair.csv";
  std::ofstream(signal_path) << signal_to_json(f).dump();

  std::istringstream in;
  std::ostringstream out, err;
  const auto start = Clock::now();
  const int code = cli::run({"error-set", "--signal", signal_path.string(), "--eps", "0.002",
                             "--steps", "21", "--out", csv_path.string()},
                            in, out, err);
  const double elapsed = seconds_since(start);
  if (code != 0) return {false, "error-set exited " + std::to_string(code) + ": " + err.str()};

  std::ifstream csv(csv_path);
  std::string line;
  std::getline(csv, line);
  std::size_t total = 0, sound = 0, near = 0;
  while (std::getline(csv, line)) {
    const auto row = parse_csv_row(line);
    const auto g = SpikeSignal::create({row[2], row[3]}, {row[0], row[1]});
    ++total;
    if (oracle_deviation(g, f, 4) <= eps + 1e-9) ++sound;
    if (hyperbola_distance(row[0], row[1], -0.01) <= 0.05) ++near;
  }
  std::filesystem::remove_all(dir);
  const double fraction = total ? static_cast<double>(near) / total : 0.0;
  const bool pass = elapsed < 60.0 && total > 0 && sound == total && fraction >= 0.95;
  return {pass, fmt("%.2f s (< 60), %zu points, %zu/%zu within eps+1e-9, %.4f%% within 0.05 of "
                    "x1 x2 = -0.01 (>= 95%%)",
                    elapsed, total, sound, total, 100.0 * fraction)};
}

Outcome criterion2() {
  const SpikeSignal f = SpikeSignal::create({0.5, 0.5}, {-0.1, 0.1});
  const double eps = 9.0 * 0.2 * 0.2 * 0.2;
  const auto samples = local_curve_samples(f, 1, 1000);
  std::size_t lib_fail = 0, oracle_fail = 0;
  for (const auto& s : samples) {
    if (!in_error_set(s.signal, f, eps, 4)) ++lib_fail;
    if (oracle_deviation(s.signal, f, 4) > eps) ++oracle_fail;
  }
  const bool check = theorem1_check(f, 1, eps, 4, 1000);
  return {samples.size() == 1000 && lib_fail == 0 && oracle_fail == 0 && check,
          fmt("eps = %.3f, %zu samples, %zu in_error_set failures, %zu oracle failures",
              eps, samples.size(), lib_fail, oracle_fail)};
}

Outcome criterion3() {
  bool pass = true;
  std::string detail;
  for (double h : {0.2, 0.1, 0.05, 0.02}) {
    const auto f = symmetric_pair(h);
    const double eps = c_of_cluster(cluster_of(f, 1), 4) * h * h * h;
    const auto est = worst_case_error(f, eps, CurveEndpoints{1, 4});
    const auto [lo, hi] = curve_endpoints(f, 1);
    const bool members = oracle_deviation(lo.signal, f, 4) <= eps &&
                         oracle_deviation(hi.signal, f, 4) <= eps &&
                         in_error_set(lo.signal, f, eps, 4) && in_error_set(hi.signal, f, eps, 4);
    const double err = std::abs(est.rho - h / 2);
    const bool ok = members && err <= 1e-12 * h;
    pass &= ok;
    if (!detail.empty()) detail += "; ";
    detail += fmt("h=%g |rho-h/2|/h=%.1e%s", h, err / h, members ? "" : " (endpoint outside)");
  }
  return {pass, detail};
}

Outcome criterion4() {
  std::mt19937_64 rng(20260404);
  std::uniform_real_distribution<double> gap(0.01, 0.5), bound(0.1, 2.0), centre(-1.0, 1.0);
  const auto start = Clock::now();
  std::size_t bound_viol = 0, gap_viol = 0, amp_viol = 0, checks = 0;
  double worst_ratio = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const double h = gap(rng), big_m = bound(rng), kappa = centre(rng);
    const auto f = testing::random_cluster(rng, h, big_m, kappa);
    const auto report = verify_cluster_bounds(f, 1, 8, 200);
    const auto samples = local_curve_samples(f, 1, 200);
    const auto base = testing::pow_moments(f, 8);
    for (const auto& s : samples) {
      const auto m = testing::pow_moments(s.signal, 8);
      for (std::size_t k = 3; k < 8; ++k) {
        const double limit = 18.0 * big_m * std::pow(1.0 + std::abs(kappa), k) * h * h * h;
        const double dev = std::abs(m[k] - base[k]);
        worst_ratio = std::max(worst_ratio, dev / limit);
        ++checks;
        if (dev > limit) ++bound_viol;
      }
      if (s.partner_node - s.free_node < 0.25 * h) ++gap_viol;
      if (std::abs(s.signal.amplitude(0)) > 8.0 * big_m ||
          std::abs(s.signal.amplitude(1)) > 8.0 * big_m) {
        ++amp_viol;
      }
    }
    if (!report.all_pass) ++bound_viol;
  }
  const double elapsed = seconds_since(start);
  return {bound_viol == 0 && gap_viol == 0 && amp_viol == 0 && elapsed < 30.0,
          fmt("%zu bound checks, violations: bound %zu, gap %zu, amplitude %zu; max "
              "observed/bound %.3f; %.2f s (< 30)",
              checks, bound_viol, gap_viol, amp_viol, worst_ratio, elapsed)};
}

Outcome criterion5() {
  double best = 0.0, best_kappa = 0.0;
  bool exceeded = false;
  for (int j = 0; j <= 2000; ++j) {
    const double kappa = -1.0 + j / 1000.0;
    const double c = c_of_cluster(ClusterSpec{1, 0.1, 1.0, kappa}, 4);
    exceeded |= c > 288.0;
    if (c > best) {
      best = c;
      best_kappa = kappa;
    }
  }
  const double at_minus = c_of_cluster(ClusterSpec{1, 0.1, 1.0, -1.0}, 4);
  const double at_plus = c_of_cluster(ClusterSpec{1, 0.1, 1.0, 1.0}, 4);
  return {!exceeded && best == 288.0 && at_minus == 288.0 && at_plus == 288.0,
          fmt("max C = %.17g at kappa = %g, C(-1) = %g, C(+1) = %g", best, best_kappa, at_minus,
              at_plus)};
}

Outcome criterion6() {
  const auto fit = amplification_exponent({0.2, 0.1, 0.05, 0.025}, 1.0, 4);
  const double ref = fit.points.front().rho_over_eps * fit.points.front().gap * fit.points.front().gap;
  double spread = 0.0;
  for (const auto& p : fit.points) {
    spread = std::max(spread, std::abs(p.rho_over_eps * p.gap * p.gap - ref) / ref);
  }
  return {std::abs(fit.slope - 1.0) <= 1e-9 && spread <= 1e-9,
          fmt("slope = %.17g, max relative spread of rho/eps * h^2 = %.2e", fit.slope, spread)};
}

Outcome criterion7() {
  std::mt19937_64 rng(20260407);
  const auto start = Clock::now();
  double worst = 0.0;
  std::size_t failures = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t d = 1 + trial % 4;
    const auto f = testing::random_signal(rng, d, 0.3, 0.1, 2.0);
    const auto report = invert(forward_moments(f, 2 * d), d);
    if (!report.ok()) {
      ++failures;
      continue;
    }
    for (std::size_t j = 0; j < d; ++j) {
      worst = std::max(worst, std::abs(report.signal->node(j) - f.node(j)));
      worst = std::max(worst, std::abs(report.signal->amplitude(j) - f.amplitude(j)));
    }
  }
  const double elapsed = seconds_since(start);
  return {failures == 0 && worst <= 1e-9 && elapsed < 10.0,
          fmt("%zu failed inversions, max coordinate error %.2e (<= 1e-9), %.3f s (< 10)",
              failures, worst, elapsed)};
}

Outcome criterion8() {
  std::mt19937_64 rng(20260408);
  std::uniform_real_distribution<double> shift(-1.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto f = testing::random_signal(rng, 1 + trial % 4, 0.1, 0.1, 2.0);
    const double kappa = shift(rng);
    std::vector<double> moved(f.nodes().begin(), f.nodes().end());
    for (double& x : moved) x += kappa;
    const auto direct = testing::pow_moments({f.amplitudes().begin(), f.amplitudes().end()}, moved, 8);
    const auto shifted = shift_moments(forward_moments(f, 8), kappa);
    for (std::size_t k = 0; k < 8; ++k) {
      worst = std::max(worst, testing::relative_error(shifted[k], direct[k]));
    }
  }
  return {worst <= 1e-12, fmt("max relative error %.2e (<= 1e-12)", worst)};
}

Outcome criterion9() {
  std::mt19937_64 rng(20260409);
  std::uniform_real_distribution<double> amp(0.1, 1.0), gap(0.1, kPi - 0.1), base(-kPi, kPi);
  std::size_t missing = 0;
  double identity = 0.0;
  auto phase_gap = [](double x, double y) { return std::abs(std::remainder(x - y, 2.0 * kPi)); };
  for (int trial = 0; trial < 100; ++trial) {
    const double a = amp(rng), b = amp(rng), delta = gap(rng), theta = base(rng);
    const UnitCircleSignal truth(a, b, theta + delta, theta);
    for (int k = 0; k < 3; ++k) {
      const std::complex<double> m{a * std::cos(k * truth.phi()) + b * std::cos(k * truth.theta()),
                                   a * std::sin(k * truth.phi()) + b * std::sin(k * truth.theta())};
      identity = std::max(identity,
                          std::abs(std::norm(m) - (a * a + b * b + 2 * a * b * std::cos(k * delta))));
    }
    bool found = false;
    for (const auto& c : trig_reconstruct(measure(truth))) {
      const auto& s = c.signal;
      const bool direct = std::abs(s.a() - a) <= 1e-8 && std::abs(s.b() - b) <= 1e-8 &&
                          phase_gap(s.phi(), truth.phi()) <= 1e-8 &&
                          phase_gap(s.theta(), truth.theta()) <= 1e-8;
      const bool swapped = std::abs(s.a() - b) <= 1e-8 && std::abs(s.b() - a) <= 1e-8 &&
                           phase_gap(s.phi(), truth.theta()) <= 1e-8 &&
                           phase_gap(s.theta(), truth.phi()) <= 1e-8;
      found |= direct || swapped;
    }
    if (!found) ++missing;
  }
  return {missing == 0 && identity <= 1e-12,
          fmt("%zu/100 truths missing from candidate sets, max M_k^2 identity error %.2e (<= 1e-12)",
              missing, identity)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"error-set cloud for the 0.2-gap pair", criterion1},
      {"curve inside error set at C(F) h^3", criterion2},
      {"worst-case witness equals h/2", criterion3},
      {"moment deviation, gap and amplitude bounds", criterion4},
      {"constant C(F) <= 288", criterion5},
      {"amplification slope", criterion6},
      {"Prony inversion round trip", criterion7},
      {"shift identity", criterion8},
      {"trigonometric round trip", criterion9},
  };
  int failed = 0;
  for (std::size_t j = 0; j < criteria.size(); ++j) {
    Outcome outcome;
    try {
      outcome = criteria[j].second();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    if (!outcome.pass) ++failed;
    std::cout << (outcome.pass ? "PASS" : "FAIL") << " [" << j + 1 << "] " << criteria[j].first
              << ": " << outcome.detail << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
