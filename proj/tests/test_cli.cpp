#include <gtest/gtest.h>

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "support.hpp"

using fixtures::run_cli;
using fixtures::sample;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream(path, std::ios::binary) << text;
}

std::string temp(const std::string& name) { return ::testing::TempDir() + "aemf_cli_" + name; }

std::string data(const std::string& name) { return std::string(AEMF_TEST_DATA_DIR) + "/" + name; }

/// Value of the first `<tag> <value>` line.
std::string field(const std::string& text, const std::string& tag) {
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (line.rfind(tag + " ", 0) == 0) return line.substr(tag.size() + 1);
  }
  return {};
}

}  // namespace

TEST(Cli, SolveTwoParallelFixture) {
  const auto r = run_cli("solve " + sample("two_parallel.aemf"));
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(field(r.out, "l"), "0 4");
  EXPECT_EQ(field(r.out, "v"), "9");
  EXPECT_EQ(field(r.out, "v"), field(run_cli("oracle " + sample("two_parallel.aemf")).out, "v"));
  EXPECT_EQ(field(r.out, "g"), "9");
}

TEST(Cli, VerifyAcceptsSolveOutputAndNamesViolations) {
  const std::string sol = temp("sol.txt");
  ASSERT_EQ(run_cli("solve " + sample("two_parallel.aemf") + " -o " + sol).code, 0);
  const auto ok = run_cli("verify " + sample("two_parallel.aemf") + " " + sol);
  EXPECT_EQ(ok.code, 0);
  EXPECT_NE(ok.out.find("feasible value 9"), std::string::npos);

  write_file(temp("bad.txt"), "f 0 2\nf 1 5\n");
  const auto bad = run_cli("verify " + sample("two_parallel.aemf") + " " + temp("bad.txt"));
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.out.find("set 0, edge 1"), std::string::npos);
}

TEST(Cli, BreakpointsSingleEdge) {
  const auto r = run_cli("breakpoints " + sample("single_edge.aemf"));
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "lambda,F,slope\n0,0,1\n10,10,\n");
  const std::string csv = temp("bp.csv");
  ASSERT_EQ(run_cli("breakpoints " + sample("two_parallel.aemf") + " -o " + csv).code, 0);
  EXPECT_EQ(read_file(csv), "lambda,F,slope\n0,2,2\n3,8,1\n4,9,\n");
}

TEST(Cli, GoldenRandomInstance) {
  const std::string out = temp("random.aemf");
  ASSERT_EQ(run_cli("generate random --n 8 --m 12 --k 2 --cap-max 5 --seed 42 -o " + out).code, 0);
  EXPECT_EQ(read_file(out), read_file(data("random_n8_m12_k2_seed42.aemf")));
  const auto meta = nlohmann::json::parse(read_file(out + ".meta.json"));
  EXPECT_EQ(meta["seed"], 42);

  const std::string expected = read_file(data("random_n8_m12_k2_seed42.expected"));
  EXPECT_EQ(field(run_cli("solve " + out).out, "v"), field(expected, "fractional"));
  EXPECT_EQ(field(run_cli("solve --integer " + out).out, "v"), field(expected, "integer"));
  EXPECT_EQ(field(run_cli("oracle " + out).out, "v"), field(expected, "fractional"));
  EXPECT_EQ(field(run_cli("oracle --integer " + out).out, "v"), field(expected, "integer"));
}

TEST(Cli, OutputsAreDeterministic) {
  for (const char* cmd : {"solve ", "solve --integer ", "breakpoints ", "oracle "}) {
    const auto a = run_cli(cmd + sample("bottleneck.aemf"));
    const auto b = run_cli(cmd + sample("bottleneck.aemf"));
    EXPECT_EQ(a.code, 0) << cmd;
    EXPECT_EQ(a.out, b.out) << cmd;
  }
  const std::string a = temp("det_a.aemf");
  const std::string b = temp("det_b.aemf");
  run_cli("generate random --k 2 --deviation mixed --seed 9 -o " + a);
  run_cli("generate random --k 2 --deviation mixed --seed 9 -o " + b);
  EXPECT_EQ(read_file(a), read_file(b));
  EXPECT_FALSE(read_file(a).empty());
}

TEST(Cli, GadgetPipeline) {
  const std::string g = temp("x3c.aemf");
  ASSERT_EQ(run_cli("generate x3c " + sample("x3c_q3.txt") + " -o " + g).code, 0);
  const auto meta = nlohmann::json::parse(read_file(g + ".meta.json"));
  EXPECT_EQ(meta["expected_yes_value"], "7");
  EXPECT_EQ(field(run_cli("solve --integer " + g).out, "v"), "7");
  EXPECT_EQ(field(run_cli("oracle --integer " + g).out, "v"), "7");

  const std::string a = temp("approx.aemf");
  ASSERT_EQ(run_cli("generate approx " + sample("x3c_q3.txt") + " --k 2 -o " + a).code, 0);
  EXPECT_EQ(nlohmann::json::parse(read_file(a + ".meta.json"))["expected_yes_value"], "35");
  EXPECT_EQ(field(run_cli("oracle --integer " + a).out, "v"), "35");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli("").code, 2);
  EXPECT_EQ(run_cli("solve").code, 2);
  EXPECT_EQ(run_cli("frobnicate").code, 2);
  EXPECT_EQ(run_cli("solve " + sample("two_parallel.aemf") + " --method sideways").code, 2);

  const auto infeasible = run_cli("solve " + sample("bottleneck.aemf") + " --at 2", true);
  EXPECT_EQ(infeasible.code, 3);
  EXPECT_EQ(infeasible.out.rfind("error: Infeasible: ", 0), 0u);

  EXPECT_EQ(run_cli("oracle " + sample("two_parallel.aemf") + " --budget 2").code, 4);
  const std::string convex = temp("convex.aemf");
  ASSERT_EQ(run_cli("generate convex " + sample("x3c_q3.txt") + " -o " + convex).code, 0);
  const auto refused = run_cli("solve " + convex, true);
  EXPECT_EQ(refused.code, 4);
  EXPECT_EQ(refused.out.rfind("error: UnsupportedDeviation: ", 0), 0u);

  write_file(temp("broken.aemf"), "p aemfp 2 1 0\nn 0 s\nn 1 t\na 0 0 0 1\n");
  const auto broken = run_cli("solve " + temp("broken.aemf"), true);
  EXPECT_EQ(broken.code, 1);
  EXPECT_NE(broken.out.find("line 4"), std::string::npos);
  EXPECT_EQ(run_cli("solve /nonexistent/file.aemf").code, 1);
}
