#include <gtest/gtest.h>

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <string>

namespace {

struct Outcome {
  std::string out;
  int status = -1;
};

Outcome run(const std::string& args, const std::string& env = "") {
  std::string cmd = env + (env.empty() ? "" : " ") + std::string(BNEST_CLI) + " " + args + " 2>&1";
  Outcome r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int st = pclose(pipe);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string data(const std::string& name) { return std::string(BNEST_DATA_DIR) + "/" + name; }

}  // namespace

TEST(Cli, EstMood) {
  Outcome r = run("est " + data("mood.json") + " --observe P=1");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "133/5 (26.600000)\nscientific=2.660e1\nprogram_size=16 branch_order=lexicographic\n");
}

TEST(Cli, EstAsia) {
  Outcome r = run("est " + data("asia.bif"));
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "46146439/2500000 (18.458576)\nscientific=1.846e1\nprogram_size=36 branch_order=lexicographic\n");
}

TEST(Cli, EstSymbolicAndSubstituted) {
  Outcome sym = run("est " + data("sprinkler.json") + " --observe G=0");
  EXPECT_EQ(sym.status, 0);
  EXPECT_EQ(sym.out, "(200*a^2 - 20*a - 780)/(89*a^2 - 69*a - 21)\nprogram_size=14 branch_order=lexicographic\n");
  Outcome at = run("est " + data("sprinkler.json") + " --observe G=0 --param a=1");
  EXPECT_EQ(at.status, 0);
  EXPECT_EQ(at.out, "600 (600.000000)\nscientific=6.000e2\nprogram_size=14 branch_order=lexicographic\n");
}

TEST(Cli, Prob) {
  Outcome r = run("prob " + data("mood.json") + " --query D=0 --query G=0 --query M=0 --observe P=1");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "27/100 (0.270000)\n");
}

TEST(Cli, Translate) {
  Outcome r = run("translate " + data("mood.json") + " --observe P=1");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out.substr(0, 9), "repeat {\n");
  EXPECT_NE(r.out.find("  } else if (x_D = 0 ∧ x_P = 1) {\n"), std::string::npos);
  EXPECT_EQ(r.out.substr(r.out.size() - 18), "} until (x_P = 1)\n");
}

TEST(Cli, Stats) {
  struct Case {
    const char* file;
    const char* line;
  };
  for (const Case& c : {Case{"earthquake.bif", "nodes=5 edges=4 avg_mb=2.00\n"}, Case{"cancer.bif", "nodes=5 edges=4 avg_mb=2.00\n"},
                        Case{"survey.bif", "nodes=6 edges=6 avg_mb=2.67\n"}, Case{"asia.bif", "nodes=8 edges=8 avg_mb=2.50\n"},
                        Case{"sachs.bif", "nodes=11 edges=17 avg_mb=3.09\n"}}) {
    Outcome r = run("stats " + data(c.file));
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(r.out, c.line) << c.file;
  }
}

TEST(Cli, Sweep) {
  Outcome r = run("sweep " + data("sprinkler.json") + " --observe G=0 --param a --grid 0:1:0.5");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "param,est\n0,260/7\n0.5,2960/133\n1,600\n");
  Outcome full = run("sweep " + data("sprinkler.json") + " --observe G=0 --param a --grid 0:1:0.05");
  EXPECT_EQ(full.status, 0);
  EXPECT_EQ(std::count(full.out.begin(), full.out.end(), '\n'), 22);
  EXPECT_EQ(run("sweep " + data("sprinkler.json") + " --observe G=0 --grid 0:1:0.5").status, 2);
  EXPECT_EQ(run("sweep " + data("sprinkler.json") + " --observe G=0 --param z --grid 0:1:0.5").status, 2);
}

TEST(Cli, Check) {
  Outcome r = run("check " + data("mood.json") + " --observe P=1 --trials 8");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "checked=8 mismatches=0\n");
}

TEST(Cli, SimulateIsDeterministic) {
  std::string args = "simulate " + data("mood.json") + " --observe P=1 --trials 10000 --seed 7";
  Outcome a = run(args), b = run(args);
  EXPECT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, "trials=10000 mean=26.55140 var=481.1561 ci99=0.565015 truncated=0\n");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("est " + data("mood.json") + " --observe P=banana").status, 2);
  EXPECT_EQ(run("est " + data("mood.json") + " --observe Q=1").status, 2);
  EXPECT_EQ(run("est /nonexistent/net.bif").status, 2);
  EXPECT_EQ(run("est " + data("mood.json") + " --param b=1").status, 2);
  EXPECT_EQ(run("prob " + data("mood.json")).status, 2);
  EXPECT_EQ(run("frobnicate").status, 2);
  EXPECT_EQ(run("--help").status, 0);
  Outcome capped = run("est " + data("asia.bif"), "BNEST_MAX_CELLS=4");
  EXPECT_EQ(capped.status, 3);
  EXPECT_NE(capped.out.find("TableTooLarge"), std::string::npos);
  Outcome some = run("simulate " + data("mood.json") + " --observe P=1 --trials 100 --max-steps 8");
  EXPECT_EQ(some.status, 4);
  EXPECT_NE(some.out.find("truncated=84"), std::string::npos);
  EXPECT_EQ(run("simulate " + data("mood.json") + " --observe P=1 --trials 100 --max-steps 3").status, 4);
}
