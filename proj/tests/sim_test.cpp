#include <gtest/gtest.h>

#include <cmath>

#include "bnest/engine.hpp"
#include "bnest/error.hpp"
#include "bnest/sim.hpp"
#include "bnest/transformer.hpp"

using namespace bnest;

namespace {

Rational q(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::vector<Rational> range(long lo, long hi) {
  std::vector<Rational> v;
  for (long i = lo; i <= hi; ++i) v.emplace_back(i);
  return v;
}

DistExpr fair() { return DistExpr::uniform(range(0, 1)); }

VarDomain bits() {
  VarDomain d;
  d.declare("x", range(0, 1));
  d.declare("y", range(0, 1));
  return d;
}

SimOptions opts(std::uint64_t trials, std::uint64_t seed = 1) {
  SimOptions o;
  o.trials = trials;
  o.seed = seed;
  return o;
}

// Steps of a single deterministic run.
Rational steps(const Program& p, const Assignment& init = {}) {
  SimOptions o = opts(1);
  o.initial = init;
  return simulate(p, bits(), o).mean;
}

Network load(const std::string& name) { return load_network_file(std::string(BNEST_DATA_DIR) + "/" + name); }

void expect_agrees(const SimResult& r, const Rational& exact) {
  double sd = std::sqrt(r.variance.get_d() / static_cast<double>(r.completed));
  EXPECT_LE(std::abs(r.mean.get_d() - exact.get_d()), 4 * sd) << "mean " << r.mean.get_d() << " exact " << exact.get_d();
}

}  // namespace

TEST(Simulate, SkipCostsOneStep) {
  SimResult r = simulate(Program::skip(), bits(), opts(1000));
  EXPECT_EQ(r.completed, 1000u);
  EXPECT_EQ(r.truncated, 0u);
  EXPECT_EQ(r.mean, q(1));
  EXPECT_EQ(r.variance, q(0));
  EXPECT_EQ(r.half_width_99, 0.0);
}

TEST(Simulate, HandCountedSteps) {
  Program set1 = Program::assign("x", DistExpr::point(q(1)));
  EXPECT_EQ(steps(set1), q(1));
  EXPECT_EQ(steps(Program::seq(Program::skip(), set1)), q(2));
  Program branch = Program::ite(Guard::eq("x", 0), Program::skip(), Program::seq(Program::skip(), Program::skip()));
  EXPECT_EQ(steps(branch, {{"x", q(0)}}), q(2));
  EXPECT_EQ(steps(branch, {{"x", q(1)}}), q(3));
  // Guard, body, guard.
  EXPECT_EQ(steps(Program::loop(Guard::eq("x", 0), set1)), q(3));
  EXPECT_EQ(steps(Program::loop(Guard::eq("x", 0), set1), {{"x", q(1)}}), q(1));
  // Body, then the guard of the desugared loop.
  EXPECT_EQ(steps(Program::repeat_until(set1, Guard::eq("x", 1))), q(2));
  Program twice = Program::repeat_until(Program::ite(Guard::eq("y", 0), Program::assign("y", DistExpr::point(q(1))), set1),
                                        Guard::eq("x", 1));
  // if(2) + guard(1) + if(2) + guard(1)
  EXPECT_EQ(steps(twice), q(6));
}

TEST(Simulate, HandCountsMatchErt) {
  VarDomain d = bits();
  Transformer tr(d);
  Program set1 = Program::assign("x", DistExpr::point(q(1)));
  for (const Program& p : {Program::seq(Program::skip(), set1), Program::loop(Guard::eq("x", 0), set1),
                           Program::repeat_until(set1, Guard::eq("x", 1))}) {
    Coefficient exact = tr.ert(p, Expectation(0)).point_eval({{"x", q(0)}, {"y", q(0)}});
    EXPECT_EQ(Coefficient(steps(p)), exact) << p.to_string();
  }
}

TEST(Simulate, Determinism) {
  Network m = load("mood.json");
  Program p = with_observations(program_of(m), m, {{"P", q(1)}});
  VarDomain d = program_domain(m);
  SimResult a = simulate(p, d, opts(20000, 42));
  SimResult b = simulate(p, d, opts(20000, 42));
  EXPECT_EQ(a, b);
  SimResult c = simulate(p, d, opts(20000, 43));
  EXPECT_NE(a.mean, c.mean);
}

TEST(Simulate, ParallelMatchesSerial) {
  Network m = load("mood.json");
  Program p = with_observations(program_of(m), m, {{"P", q(1)}});
  VarDomain d = program_domain(m);
  for (unsigned shards : {1u, 7u, 64u}) {
    SimOptions o = opts(30011, 5);
    o.shards = shards;
    EXPECT_EQ(simulate(p, d, o, {"x_D", "x_G"}), simulate_serial(p, d, o, {"x_D", "x_G"})) << shards;
  }
}

TEST(Simulate, Truncation) {
  VarDomain d = bits();
  SimOptions o = opts(100);
  o.max_steps = 50;
  try {
    simulate(Program::diverge(), d, o);
    FAIL() << "expected AllTrialsTruncated";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::AllTrialsTruncated);
  }
  Program sometimes = Program::seq(Program::assign("x", fair()), Program::ite(Guard::eq("x", 0), Program::diverge(), Program::skip()));
  o.trials = 2000;
  SimResult r = simulate(sometimes, d, o);
  EXPECT_EQ(r.completed + r.truncated, 2000u);
  EXPECT_GT(r.truncated, 800u);
  EXPECT_LT(r.truncated, 1200u);
  EXPECT_EQ(r.mean, q(3));  // completed runs: assign, guard, skip
  // A loop that never exits is cut off by the step budget too.
  Program stuck = Program::loop(Guard::eq("x", 0), Program::assign("y", fair()));
  EXPECT_THROW(simulate(stuck, d, o), Error);
}

TEST(Simulate, RejectsBadArguments) {
  EXPECT_THROW(simulate(Program::skip(), bits(), opts(0)), Error);
  Coefficient a = Coefficient::from_polynomial(Polynomial::variable("a"));
  DistExpr sym{{{a, q(0)}, {Coefficient(1) - a, q(1)}}};
  EXPECT_THROW(simulate(Program::assign("x", sym), bits(), opts(10)), Error);
}

TEST(SamplePosterior, FairCoinWithinBinomialInterval) {
  const std::uint64_t n = 100000;
  auto freq = sample_posterior(Program::assign("x", fair()), bits(), {"x"}, opts(n, 9));
  ASSERT_EQ(freq.size(), 2u);
  double half = 2.5758293035489 * std::sqrt(n * 0.25);
  for (const auto& [k, c] : freq) EXPECT_LE(std::abs(static_cast<double>(c) - n / 2.0), half);
  EXPECT_EQ(freq.begin()->second + std::next(freq.begin())->second, n);
}

TEST(SamplePosterior, DeterministicProgramHasOneBucket) {
  Program p = Program::seq(Program::assign("x", DistExpr::point(q(1))), Program::assign("y", DistExpr::point(q(0))));
  auto freq = sample_posterior(p, bits(), {"x", "y"}, opts(500));
  ASSERT_EQ(freq.size(), 1u);
  EXPECT_EQ(freq.begin()->first, (std::vector<Rational>{q(1), q(0)}));
  EXPECT_EQ(freq.begin()->second, 500u);
}

TEST(SamplePosterior, MoodQueryFrequency) {
  Network m = load("mood.json");
  Program p = with_observations(program_of(m), m, {{"P", q(1)}});
  const std::uint64_t n = 200000;
  auto freq = sample_posterior(p, program_domain(m), {"x_D", "x_G", "x_M"}, opts(n, 3));
  double f = static_cast<double>(freq[{q(0), q(0), q(0)}]) / n;
  EXPECT_NEAR(f, 0.27, 4 * std::sqrt(0.27 * 0.73 / n));
  std::uint64_t total = 0;
  for (const auto& [k, c] : freq) total += c;
  EXPECT_EQ(total, n);
}

TEST(Simulate, AgreesWithExactEst) {
  Network m = load("mood.json");
  ObservationMap obs{{"P", q(1)}};
  SimResult r = simulate(with_observations(program_of(m), m, obs), program_domain(m), opts(200000, 11));
  expect_agrees(r, est(m, obs).est.rational());

  VarDomain d;
  d.declare("x1", range(1, 6));
  d.declare("x2", range(1, 6));
  Guard ge = Guard::from_predicate({"x1", "x2"}, d, [](std::span<const Rational> v) { return v[1] >= v[0]; }, "x2 >= x1");
  Program dice = Program::seq(Program::assign("x1", DistExpr::uniform(range(1, 6))),
                              Program::repeat_until(Program::assign("x2", DistExpr::uniform(range(1, 6))), ge));
  SimResult rd = simulate(dice, d, opts(200000, 12));
  expect_agrees(rd, Transformer(d).ert(dice, Expectation(0)).constant_value().rational());

  Network cancer = load("cancer.bif");
  SimResult rc = simulate(with_observations(program_of(cancer), cancer, {}), program_domain(cancer), opts(100000, 13));
  expect_agrees(rc, est(cancer, {}).est.rational());
}

TEST(Simulate, SummaryLine) {
  SimResult r = simulate(Program::skip(), bits(), opts(10));
  EXPECT_EQ(summary_line(r), "trials=10 mean=1.000000 var=0 ci99=0.000000 truncated=0");
}
