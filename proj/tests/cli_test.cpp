#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "spiketrain/io.hpp"
#include "spiketrain/signal.hpp"

namespace spiketrain::cli {
namespace {

using nlohmann::json;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(const std::vector<std::string>& args, const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  const int code = run(args, in, out, err);
  return {code, out.str(), err.str()};
}

const std::string kWidePair = R"({"amplitudes":[0.5,0.5],"nodes":[-0.1,0.1]})";

std::filesystem::path temp_dir() {
  auto dir = std::filesystem::temp_directory_path() /
             ("spiketrain_cli_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()));
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

TEST(Cli, ForwardSingleSpike) {
  const auto r = call({"forward", "--signal", "-", "--n", "4"}, R"({"amplitudes":[1],"nodes":[0]})");
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, "1,0,0,0\n");
}

TEST(Cli, ProvenanceOnStderr) {
  const auto r = call({"forward", "--signal", "-", "--n-moments", "3"}, kWidePair);
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, "1,0,0.010000000000000002\n");
  const auto first_line = r.err.substr(0, r.err.find('\n'));
  const auto doc = json::parse(first_line);
  EXPECT_EQ(doc["provenance"]["command"], "forward");
  EXPECT_EQ(doc["provenance"]["version"], "1.0.0");
  EXPECT_TRUE(doc["provenance"]["parameters"].contains("--n"));
}

TEST(Cli, ForwardThenInvert) {
  const auto fwd = call({"forward", "--signal", "-", "--n", "4"}, kWidePair);
  ASSERT_EQ(fwd.code, kExitOk);
  const auto inv = call({"invert", "--moments", "-", "--d", "2"}, fwd.out);
  ASSERT_EQ(inv.code, kExitOk) << inv.err;
  const auto doc = json::parse(inv.out);
  EXPECT_EQ(doc["condition_flag"], "WellSeparated");
  const auto sig = signal_from_json(doc["signal"]);
  EXPECT_NEAR(sig.node(0), -0.1, 1e-12);
  EXPECT_NEAR(sig.node(1), 0.1, 1e-12);
  EXPECT_NEAR(sig.amplitude(0), 0.5, 1e-12);
}

TEST(Cli, InvertComplexRootsIsDomainError) {
  const auto r = call({"invert", "--moments", "-", "--d", "2"}, "1,0,-1,0\n");
  EXPECT_EQ(r.code, kExitDomainError);
  const auto doc = json::parse(r.out);
  EXPECT_EQ(doc["condition_flag"], "Failed");
  EXPECT_EQ(doc["failure"], "ComplexRoots");
  EXPECT_TRUE(doc["signal"].is_null());
}

TEST(Cli, ErrorSetWritesCsvAndSidecar) {
  const auto dir = temp_dir();
  const auto csv = dir / "cloud.csv";
  const auto r = call({"error-set", "--signal", "-", "--eps", "0.002", "--steps", "5", "--out",
                       csv.string()},
                      kWidePair);
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto text = slurp(csv);
  EXPECT_EQ(text.substr(0, text.find('\n')), "x1p,x2p,a1p,a2p");
  const auto rows = std::count(text.begin(), text.end(), '\n') - 1;
  const auto sidecar = json::parse(slurp(csv.string() + ".json"));
  EXPECT_EQ(sidecar["points"].get<long>(), rows);
  EXPECT_EQ(sidecar["grid_points"], 625);
  EXPECT_EQ(sidecar["steps"], 5);
  EXPECT_EQ(sidecar["eps"], 0.002);
  EXPECT_EQ(sidecar["skipped"].get<long>() + rows, 625);
  std::filesystem::remove_all(dir);
}

TEST(Cli, ErrorSetSubsampleIsSeeded) {
  const std::vector<std::string> args{"error-set", "--signal", "-",         "--eps", "0.002",
                                      "--steps",   "5",        "--subsample", "20",  "--seed",
                                      "7"};
  const auto a = call(args, kWidePair);
  const auto b = call(args, kWidePair);
  ASSERT_EQ(a.code, kExitOk);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(std::count(a.out.begin(), a.out.end(), '\n'), 21);
}

TEST(Cli, PronyCurveHeaderAndRows) {
  const auto r = call({"prony-curve", "--signal", "-", "--n", "3"}, kWidePair);
  ASSERT_EQ(r.code, kExitOk);
  std::istringstream lines(r.out);
  std::string header, row;
  std::getline(lines, header);
  EXPECT_EQ(header, "t,x_i',x_{i+1}',a_i',a_{i+1}',dm0,dm1,dm2");
  std::vector<std::vector<double>> rows;
  while (std::getline(lines, row)) rows.push_back(parse_csv_row(row));
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[1], (std::vector<double>{0.5, -0.1, 0.1, 0.5, 0.5, 0, 0, 0}));
}

TEST(Cli, BoundsExitCodeFollowsAllPass) {
  const auto r = call({"bounds", "--signal", "-", "--n-moments", "4", "--samples", "200"}, kWidePair);
  EXPECT_EQ(r.code, kExitOk);
  const auto doc = json::parse(r.out);
  EXPECT_TRUE(doc["all_pass"].get<bool>());
  EXPECT_EQ(doc["c_constant"], 9.0);
  EXPECT_EQ(doc["per_k"][0]["k"], 3);
}

TEST(Cli, WorstCaseEndpoints) {
  const auto r = call({"worst-case", "--signal", "-", "--eps", "0.072"}, kWidePair);
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto doc = json::parse(r.out);
  EXPECT_NEAR(doc["rho"].get<double>(), 0.1, 1e-13);
  EXPECT_EQ(doc["method"], "endpoints");
  const auto tiny = call({"worst-case", "--signal", "-", "--eps", "1e-9"}, kWidePair);
  EXPECT_EQ(tiny.code, kExitDomainError);
  EXPECT_NE(tiny.err.find("EndpointNotInSet"), std::string::npos);
}

TEST(Cli, Amplification) {
  const auto r = call({"amplification"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto doc = json::parse(r.out);
  EXPECT_NEAR(doc["slope"].get<double>(), 1.0, 1e-9);
  EXPECT_EQ(doc["per_h"].size(), 4u);
  EXPECT_EQ(call({"amplification", "--gaps", "0.1"}).code, kExitDomainError);
}

TEST(Cli, TrigForwardThenTrig) {
  const auto fwd = call({"trig-forward", "--signal", "-", "--with-re"},
                        R"({"a":0.7,"b":0.3,"phi":0.4,"theta":-0.9})");
  ASSERT_EQ(fwd.code, kExitOk) << fwd.err;
  const auto meas = json::parse(fwd.out);
  EXPECT_TRUE(meas.contains("re_m1"));
  const auto rec = call({"trig", "--input", "-"}, fwd.out);
  ASSERT_EQ(rec.code, kExitOk) << rec.err;
  const auto list = json::parse(rec.out);
  ASSERT_FALSE(list.empty());
  bool found = false;
  for (const auto& c : list) {
    const auto s = unit_circle_from_json(c["signal"]);
    found |= (std::abs(s.a() - 0.7) < 1e-8 && std::abs(s.phi() - 0.4) < 1e-8 &&
              std::abs(s.theta() + 0.9) < 1e-8) ||
             (std::abs(s.b() - 0.7) < 1e-8 && std::abs(s.theta() - 0.4) < 1e-8 &&
              std::abs(s.phi() + 0.9) < 1e-8);
  }
  EXPECT_TRUE(found);
}

TEST(Cli, TrigForwardAcceptsSpikeSignal) {
  const auto a = call({"trig-forward", "--signal", "-"}, kWidePair);
  const auto b = call({"trig-forward", "--signal", "-"}, R"({"a":0.5,"b":0.5,"phi":-0.1,"theta":0.1})");
  ASSERT_EQ(a.code, kExitOk);
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(call({}).code, kExitUsage);
  EXPECT_EQ(call({"no-such-command"}).code, kExitUsage);
  EXPECT_EQ(call({"forward", "--signal", "-"}).code, kExitUsage);
  EXPECT_EQ(call({"worst-case", "--signal", "-", "--eps", "1", "--method", "guess"}).code, kExitUsage);
  EXPECT_EQ(call({"--help"}).code, kExitOk);
  EXPECT_EQ(call({"forward", "--signal", "-", "--n", "4"}, "{not json").code, kExitDomainError);
  EXPECT_EQ(call({"forward", "--signal", "-", "--n", "4"}, R"({"amplitudes":[1,1],"nodes":[0.2,0.1]})")
                .code,
            kExitDomainError);
  EXPECT_EQ(call({"forward", "--signal", "/nonexistent/file.json", "--n", "4"}).code,
            kExitDomainError);
}

TEST(Cli, Deterministic) {
  const std::vector<std::string> args{"error-set", "--signal", "-", "--eps", "0.002", "--steps", "7"};
  const auto a = call(args, kWidePair);
  const auto b = call(args, kWidePair);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.err, b.err);
}

}  // namespace
}  // namespace spiketrain::cli
