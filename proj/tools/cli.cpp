#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>

#include "spiketrain/bounds.hpp"
#include "spiketrain/error.hpp"
#include "spiketrain/error_set.hpp"
#include "spiketrain/io.hpp"
#include "spiketrain/moments.hpp"
#include "spiketrain/prony_curves.hpp"
#include "spiketrain/prony_solver.hpp"
#include "spiketrain/trig_recon.hpp"

namespace spiketrain::cli {

namespace {

using nlohmann::json;

constexpr const char* kVersion = "1.0.0";

struct Options {
  std::string signal;
  std::string moments;
  std::string input;
  std::string out;
  std::string sidecar;
  std::string method = "endpoints";
  double eps = 0.0;
  double c_mult = 1.0;
  std::size_t steps = 21;
  std::size_t index = 1;
  std::size_t n_moments = 4;
  std::size_t samples = 1000;
  std::size_t spikes = 2;
  std::size_t subsample = 0;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  bool with_re = false;
  std::vector<double> gaps{0.2, 0.1, 0.05, 0.025};
};

std::string read_source(const std::string& path, std::istream& in) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>());
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorKind::ParseError, "cannot write '" + path + "'");
  file << text;
}

std::string json_text(const json& doc) { return doc.dump(2) + "\n"; }

json constants_record() {
  return {{"deviation_factor", kDeviationFactor},
          {"min_gap_fraction", kMinGapFraction},
          {"amplitude_factor", kAmplitudeFactor},
          {"root_separation_tolerance", kRootSeparationTolerance},
          {"near_collision_fraction", kNearCollisionFraction},
          {"sampler_residual_limit", kSamplerResidualLimit}};
}

json cluster_json(const ClusterSpec& spec) {
  return {{"index", spec.index},
          {"gap", spec.gap},
          {"amplitude_bound", spec.amplitude_bound},
          {"center", spec.center}};
}

int cmd_forward(const Options& opt, std::istream& in, std::ostream& out) {
  const auto signal = signal_from_json(parse_json(read_source(opt.signal, in)));
  const auto moments = forward_moments(signal, opt.n_moments);
  write_text(opt.out, csv_row({moments.values().begin(), moments.values().end()}) + "\n", out);
  return kExitOk;
}

int cmd_invert(const Options& opt, std::istream& in, std::ostream& out, std::ostream& err) {
  const MomentVector moments(parse_csv_row(read_source(opt.moments, in)));
  const auto report = invert(moments, opt.spikes);
  json doc{{"condition_flag", condition_name(report.condition)},
           {"residual", report.residual},
           {"tail_deviation", report.tail_deviation}};
  doc["signal"] = report.signal ? signal_to_json(*report.signal) : json(nullptr);
  if (report.failure) doc["failure"] = std::string(error_name(*report.failure));
  write_text(opt.out, json_text(doc), out);
  if (!report.ok()) {
    err << "error: " << error_name(*report.failure) << ": inversion failed\n";
    return kExitDomainError;
  }
  return kExitOk;
}

int cmd_error_set(const Options& opt, std::istream& in, std::ostream& out, std::ostream& err) {
  const auto signal = signal_from_json(parse_json(read_source(opt.signal, in)));
  const auto cloud = sample_error_set(signal, opt.eps, opt.steps, opt.threads);

  std::vector<std::size_t> keep(cloud.points.size());
  for (std::size_t k = 0; k < keep.size(); ++k) keep[k] = k;
  if (opt.subsample > 0 && opt.subsample < keep.size()) {
    std::vector<std::size_t> chosen;
    std::mt19937_64 rng(opt.seed);
    std::sample(keep.begin(), keep.end(), std::back_inserter(chosen), opt.subsample, rng);
    keep = std::move(chosen);
  }

  std::string csv = "x1p,x2p,a1p,a2p\n";
  for (std::size_t k : keep) {
    const auto& p = cloud.points[k];
    csv += csv_row({p.node(0), p.node(1), p.amplitude(0), p.amplitude(1)}) + "\n";
  }
  write_text(opt.out, csv, out);

  const json sidecar{{"reference", signal_to_json(signal)},
                     {"eps", cloud.grid.eps},
                     {"steps", cloud.grid.steps},
                     {"moment_count", cloud.grid.moment_count},
                     {"grid_points", cloud.points.size() + cloud.skipped},
                     {"points", cloud.points.size()},
                     {"written", keep.size()},
                     {"skipped", cloud.skipped}};
  std::string sidecar_path = opt.sidecar;
  if (sidecar_path.empty() && !opt.out.empty() && opt.out != "-") sidecar_path = opt.out + ".json";
  if (sidecar_path.empty()) {
    err << sidecar.dump() << "\n";
  } else {
    write_text(sidecar_path, json_text(sidecar), out);
  }
  return kExitOk;
}

int cmd_prony_curve(const Options& opt, std::istream& in, std::ostream& out) {
  const auto signal = signal_from_json(parse_json(read_source(opt.signal, in)));
  const auto samples = local_curve_samples(signal, opt.index, opt.samples);
  const auto reference = forward_moments(signal, 3);
  const std::size_t j = opt.index - 1;
  std::string csv = "t,x_i',x_{i+1}',a_i',a_{i+1}',dm0,dm1,dm2\n";
  for (const auto& s : samples) {
    const auto m = forward_moments(s.signal, 3);
    csv += csv_row({s.parameter, s.free_node, s.partner_node, s.signal.amplitude(j),
                    s.signal.amplitude(j + 1), m[0] - reference[0], m[1] - reference[1],
                    m[2] - reference[2]}) +
           "\n";
  }
  write_text(opt.out, csv, out);
  return kExitOk;
}

int cmd_bounds(const Options& opt, std::istream& in, std::ostream& out) {
  const auto signal = signal_from_json(parse_json(read_source(opt.signal, in)));
  const auto report = verify_cluster_bounds(signal, opt.index, opt.n_moments, opt.samples);
  json per_k = json::array();
  for (std::size_t k = 0; k < report.per_k_bound.size(); ++k) {
    per_k.push_back({{"k", k + 3},
                     {"bound", report.per_k_bound[k]},
                     {"observed", report.per_k_observed[k]},
                     {"ratio", report.per_k_observed[k] / report.per_k_bound[k]}});
  }
  const json doc{{"cluster", cluster_json(report.cluster)},
                 {"moment_count", report.moment_count},
                 {"sample_count", report.sample_count},
                 {"c_constant", report.c_constant},
                 {"preserved_observed", report.preserved_observed},
                 {"per_k", per_k},
                 {"lemma1_min_gap", report.lemma1_min_gap},
                 {"lemma1_threshold", kMinGapFraction * report.cluster.gap},
                 {"lemma2_max_amp", report.lemma2_max_amp},
                 {"lemma2_threshold", kAmplitudeFactor * report.cluster.amplitude_bound},
                 {"all_pass", report.all_pass}};
  write_text(opt.out, json_text(doc), out);
  return report.all_pass ? kExitOk : kExitDomainError;
}

int cmd_worst_case(const Options& opt, std::istream& in, std::ostream& out) {
  const auto signal = signal_from_json(parse_json(read_source(opt.signal, in)));
  WorstCaseMethod method;
  if (opt.method == "sampler") {
    method = Sampler{opt.steps};
  } else {
    method = CurveEndpoints{opt.index, opt.n_moments};
  }
  const auto estimate = worst_case_error(signal, opt.eps, method);
  json doc{{"method", opt.method},
           {"eps", opt.eps},
           {"rho", estimate.rho},
           {"support", estimate.support},
           {"lower_estimate", estimate.lower_estimate}};
  if (opt.method == "sampler") {
    doc["steps"] = opt.steps;
  } else {
    doc["index"] = opt.index;
    doc["moment_count"] = opt.n_moments;
    doc["half_gap"] = 0.5 * cluster_of(signal, opt.index).gap;
  }
  write_text(opt.out, json_text(doc), out);
  return kExitOk;
}

int cmd_amplification(const Options& opt, std::ostream& out) {
  const auto fit = amplification_exponent(opt.gaps, opt.c_mult, opt.n_moments);
  json points = json::array();
  for (const auto& p : fit.points) {
    points.push_back(
        {{"h", p.gap}, {"eps", p.eps}, {"rho", p.rho}, {"rho_over_eps", p.rho_over_eps}});
  }
  const json doc{{"c_mult", opt.c_mult},
                 {"moment_count", opt.n_moments},
                 {"slope", fit.slope},
                 {"intercept", fit.intercept},
                 {"per_h", points}};
  write_text(opt.out, json_text(doc), out);
  return kExitOk;
}

int cmd_trig(const Options& opt, std::istream& in, std::ostream& out) {
  const auto meas = measurements_from_json(parse_json(read_source(opt.input, in)));
  const auto candidates = trig_reconstruct(meas);
  json list = json::array();
  for (const auto& c : candidates) {
    list.push_back({{"signal", unit_circle_to_json(c.signal)},
                    {"magnitude_residual", c.magnitude_residual},
                    {"im_residual", c.im_residual}});
  }
  write_text(opt.out, json_text(list), out);
  return kExitOk;
}

int cmd_trig_forward(const Options& opt, std::istream& in, std::ostream& out) {
  const auto doc = parse_json(read_source(opt.signal, in));
  std::optional<UnitCircleSignal> signal;
  if (doc.is_object() && doc.contains("nodes")) {
    // A real two-spike signal, read through its Fourier samples.
    const auto real = signal_from_json(doc);
    if (real.size() != 2) throw Error(ErrorKind::InvalidArgument, "trig-forward needs d = 2");
    signal.emplace(real.amplitude(0), real.amplitude(1), real.node(0), real.node(1));
  } else {
    signal.emplace(unit_circle_from_json(doc));
  }
  write_text(opt.out, json_text(measurements_to_json(measure(*signal, opt.with_re))), out);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Spike-train reconstruction and error-set geometry"};
  app.require_subcommand(1);
  Options opt;

  auto signal_opt = [&](CLI::App* sub) {
    sub->add_option("--signal", opt.signal, "signal JSON path, or - for stdin")->required();
  };
  auto out_opt = [&](CLI::App* sub) { sub->add_option("--out", opt.out, "output path"); };

  auto* forward = app.add_subcommand("forward", "moments m_0..m_{N-1} of a signal as CSV");
  signal_opt(forward);
  forward->add_option("--n,--n-moments", opt.n_moments, "moment count N")->required();
  out_opt(forward);

  auto* inv = app.add_subcommand("invert", "Prony inversion of a moment CSV row");
  inv->add_option("--moments", opt.moments, "moment CSV path, or - for stdin")->required();
  inv->add_option("--d", opt.spikes, "spike count d")->required();
  out_opt(inv);

  auto* eset = app.add_subcommand("error-set", "grid sample of the eps-error set (d = 2, N = 4)");
  signal_opt(eset);
  eset->add_option("--eps", opt.eps)->required();
  eset->add_option("--steps", opt.steps, "grid points per moment axis");
  eset->add_option("--sidecar", opt.sidecar, "sidecar JSON path (default <out>.json)");
  eset->add_option("--subsample", opt.subsample, "write a random subset of this size");
  eset->add_option("--seed", opt.seed, "seed for --subsample");
  eset->add_option("--threads", opt.threads, "worker threads, 0 = all cores");
  out_opt(eset);

  auto* curve = app.add_subcommand("prony-curve", "samples of the local Prony curve");
  signal_opt(curve);
  curve->add_option("--i", opt.index, "1-based pair index");
  curve->add_option("--n,--samples", opt.samples, "sample count");
  out_opt(curve);

  auto* bnd = app.add_subcommand("bounds", "check the deviation bounds along the curve");
  signal_opt(bnd);
  bnd->add_option("--i", opt.index, "1-based pair index");
  bnd->add_option("--n-moments", opt.n_moments, "moment count N");
  bnd->add_option("--samples", opt.samples, "curve sample count");
  out_opt(bnd);

  auto* worst = app.add_subcommand("worst-case", "worst-case node error estimate");
  signal_opt(worst);
  worst->add_option("--eps", opt.eps)->required();
  worst->add_option("--method", opt.method)->check(CLI::IsMember({"sampler", "endpoints"}));
  worst->add_option("--steps", opt.steps, "sampler grid points per axis");
  worst->add_option("--i", opt.index, "1-based pair index");
  worst->add_option("--n-moments", opt.n_moments, "moment count N");
  out_opt(worst);

  auto* amp = app.add_subcommand("amplification", "log-log fit of rho against the gap");
  amp->add_option("--gaps", opt.gaps, "node gaps h")->expected(1, -1);
  amp->add_option("--c-mult", opt.c_mult, "eps = c_mult * C(F) * h^3");
  amp->add_option("--n-moments", opt.n_moments, "moment count N");
  out_opt(amp);

  auto* trig = app.add_subcommand("trig", "reconstruct a unit-circle pair from |m_k| and Im m_1");
  trig->add_option("--input,--signal", opt.input, "measurement JSON path, or -")->required();
  out_opt(trig);

  auto* trig_fwd = app.add_subcommand("trig-forward", "measurements of a unit-circle pair");
  signal_opt(trig_fwd);
  trig_fwd->add_flag("--with-re", opt.with_re, "include Re m_1");
  out_opt(trig_fwd);

  std::vector<std::string> argv_storage{"spiketrain"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  json parameters = json::object();
  for (const CLI::Option* o : sub->get_options()) {
    if (o->count() == 0 || o->get_name() == "--help") continue;
    const auto& results = o->results();
    parameters[o->get_name()] = results.size() == 1 ? json(results.front()) : json(results);
  }
  err << json{{"provenance",
               {{"command", sub->get_name()},
                {"parameters", parameters},
                {"version", kVersion},
                {"constants", constants_record()}}}}
             .dump()
      << "\n";

  try {
    const std::string name = sub->get_name();
    if (name == "forward") return cmd_forward(opt, in, out);
    if (name == "invert") return cmd_invert(opt, in, out, err);
    if (name == "error-set") return cmd_error_set(opt, in, out, err);
    if (name == "prony-curve") return cmd_prony_curve(opt, in, out);
    if (name == "bounds") return cmd_bounds(opt, in, out);
    if (name == "worst-case") return cmd_worst_case(opt, in, out);
    if (name == "amplification") return cmd_amplification(opt, out);
    if (name == "trig") return cmd_trig(opt, in, out);
    if (name == "trig-forward") return cmd_trig_forward(opt, in, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomainError;
  } catch (const nlohmann::json::exception& e) {
    err << "error: ParseError: " << e.what() << "\n";
    return kExitDomainError;
  }
  return kExitUsage;
}

}  // namespace spiketrain::cli
