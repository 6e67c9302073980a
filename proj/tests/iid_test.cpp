#include <gtest/gtest.h>

#include "bnest/error.hpp"
#include "bnest/iid.hpp"
#include "support/random_models.hpp"

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

DistExpr coin(long num, long den) {
  return DistExpr{{{Coefficient(q(num, den)), q(0)}, {Coefficient(q(den - num, den)), q(1)}}};
}

VarDomain xyz() {
  VarDomain d;
  for (const char* v : {"x", "y", "z"}) d.declare(v, range(0, 1));
  return d;
}

struct Circle {
  VarDomain d;
  Guard g = Guard::truth();
  Program body = Program::skip();
  Circle() {
    d.declare("x", range(0, 10));
    d.declare("y", range(0, 10));
    d.declare("u", range(0, 1));
    g = Guard::from_predicate({"x", "y"}, d,
                              [](std::span<const Rational> v) {
                                Rational a = v[0] - 5, b = v[1] - 5;
                                return a * a + b * b >= 25;
                              },
                              "(x-5)^2 + (y-5)^2 >= 25");
    body = Program::seq(Program::assign("x", DistExpr::uniform(range(0, 10))),
                        Program::assign("y", DistExpr::uniform(range(0, 10))));
  }
};

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST(Unaffected, Examples) {
  VarDomain d = xyz();
  Transformer tr(d);
  Program ax = Program::assign("x", coin(1, 2));
  EXPECT_TRUE(unaffected(Expectation(3), ax));
  EXPECT_FALSE(unaffected(tr.iverson(Guard::eq("x", 0)), ax));
  EXPECT_TRUE(unaffected(tr.iverson(Guard::eq("y", 0)), ax));
  Circle c;
  Transformer ct(c.d);
  EXPECT_TRUE(unaffected(ct.wp(c.body, ct.iverson(c.g)), c.body));
}

TEST(FIid, Examples) {
  Circle c;
  Transformer ct(c.d);
  EXPECT_TRUE(is_f_iid(ct, c.g, c.body, ct.iverson(Guard::eq("u", 1))));
  EXPECT_TRUE(is_f_iid(ct, c.g, c.body, Expectation(0)));

  VarDomain d = xyz();
  Transformer tr(d);
  Guard phi = Guard::eq("x", 0);
  // Both assignments draw from constant distributions, so wp(body, [x!=0]·[z=1])
  // is the constant 1/4 and the loop is f-i.i.d. after all.
  Program body = Program::seq(Program::assign("x", coin(1, 2)), Program::assign("z", coin(1, 2)));
  Expectation f = tr.iverson(Guard::eq("z", 1));
  EXPECT_EQ(tr.wp(body, tr.iverson(!phi) * f), Expectation(Coefficient(q(1, 4))));
  EXPECT_TRUE(is_f_iid(tr, phi, body, f));

  // Here the staying probability depends on z, which the body overwrites.
  Program dependent = Program::seq(
      Program::ite(Guard::eq("z", 0), Program::assign("x", coin(1, 2)), Program::assign("x", DistExpr::point(q(1)))),
      Program::assign("z", coin(1, 2)));
  EXPECT_FALSE(is_f_iid(tr, phi, dependent, Expectation(0)));
  EXPECT_EQ(kind_of([&] { wp_while_iid(tr, phi, dependent, Expectation(1)); }), ErrorKind::NotFIID);
  EXPECT_EQ(kind_of([&] { tr.wp(Program::loop(phi, dependent), Expectation(1)); }), ErrorKind::UnsupportedLoop);

  // The exit premise alone can fail too.
  Program keeps_y = Program::assign("x", coin(1, 2));
  Program sets_y = Program::seq(keeps_y, Program::assign("y", coin(1, 3)));
  Expectation fy = tr.iverson(Guard::eq("y", 0));
  EXPECT_TRUE(is_f_iid(tr, phi, keeps_y, fy));
  EXPECT_TRUE(is_f_iid(tr, phi, sets_y, fy));
  Program reads_y = Program::seq(
      Program::ite(Guard::eq("y", 0), Program::assign("x", coin(1, 2)), Program::assign("x", DistExpr::point(q(1)))),
      Program::assign("y", coin(1, 3)));
  EXPECT_FALSE(is_f_iid(tr, phi, reads_y, Expectation(0)));
}

TEST(WpWhile, Examples) {
  VarDomain d = xyz();
  Transformer tr(d);
  Expectation f = tr.iverson(Guard::eq("y", 1)).scale(7);
  EXPECT_EQ(wp_while_iid(tr, Guard::falsity(), Program::assign("x", coin(1, 2)), f), f);

  Circle c;
  Transformer ct(c.d);
  EXPECT_EQ(wp_while_iid(ct, c.g, c.body, Expectation(1)), Expectation(1));

  // The body never changes x, so from x = 0 the loop never exits.
  Program stuck = Program::assign("y", coin(1, 2));
  Expectation w = wp_while_iid(tr, Guard::eq("x", 0), stuck, Expectation(1));
  EXPECT_TRUE(w.point_eval({{"x", q(0)}}).is_zero());
  EXPECT_TRUE(w.point_eval({{"x", q(1)}}).is_one());
}

TEST(ErtWhile, Examples) {
  VarDomain d = xyz();
  Transformer tr(d);
  Expectation f = tr.iverson(Guard::eq("y", 1)).scale(7);
  EXPECT_EQ(ert_while_iid(tr, Guard::falsity(), Program::assign("x", coin(1, 2)), f), Expectation(1) + f);

  Circle c;
  Transformer ct(c.d);
  Expectation e = ert_while_iid(ct, c.g, c.body, Expectation(0));
  // ert(body, 0) = 2 and wp(body, [g]) = 52/121, so guard-true cells get
  // 1 + 3/(69/121) = 1 + 363/69.
  EXPECT_EQ(e, Expectation(1) + ct.iverson(c.g).scale(Coefficient(q(363, 69))));

  Program stuck = Program::assign("y", coin(1, 2));
  Expectation s = ert_while_iid(tr, Guard::eq("x", 0), stuck, Expectation(0));
  EXPECT_TRUE(s.point_eval({{"x", q(0)}}).is_infinite());
  EXPECT_EQ(s.point_eval({{"x", q(1)}}), Coefficient(1));

  EXPECT_TRUE(ert_while_iid(tr, Guard::truth(), stuck, Expectation(0)).constant_value().is_infinite());
}

TEST(ErtWhile, PremiseErrors) {
  VarDomain d = xyz();
  Transformer tr(d);
  Program diverging = Program::ite(Guard::eq("y", 0), Program::diverge(), Program::assign("x", coin(1, 2)));
  EXPECT_EQ(kind_of([&] { ert_while_iid(tr, Guard::eq("x", 0), diverging, Expectation(0)); }),
            ErrorKind::BodyMayDiverge);
  // Iteration time depends on z, which the body resamples.
  Program varying = Program::seq(Program::ite(Guard::eq("z", 0), Program::skip(), Program::seq(Program::skip(), Program::skip())),
                                 Program::seq(Program::assign("x", coin(1, 2)), Program::assign("z", coin(1, 2))));
  EXPECT_EQ(kind_of([&] { ert_while_iid(tr, Guard::eq("x", 0), varying, Expectation(0)); }),
            ErrorKind::VaryingIterationTime);
  EXPECT_EQ(kind_of([&] { tr.ert(Program::loop(Guard::eq("x", 0), varying), Expectation(0)); }),
            ErrorKind::UnsupportedLoop);
}

TEST(RepeatUntil, Examples) {
  VarDomain d = xyz();
  Transformer tr(d);
  Program body = Program::seq(Program::assign("x", coin(1, 3)), Program::assign("y", coin(1, 2)));
  Expectation f = tr.iverson(Guard::eq("z", 1)).scale(2);
  EXPECT_EQ(ert_repeat_until(tr, body, Guard::truth(), f), Expectation(1) + tr.ert(body, f));
  // Accepting probability 1/3: (1 + 2)/(1/3) = 9 expected steps.
  EXPECT_EQ(ert_repeat_until(tr, body, Guard::eq("x", 0), Expectation(0)), Expectation(9));
  EXPECT_EQ(wp_repeat_until(tr, body, Guard::eq("x", 0), tr.iverson(Guard::eq("y", 1))),
            Expectation(Coefficient(q(1, 2))));
  // Unsatisfiable acceptance condition.
  Guard never = Guard::eq("x", 0) && Guard::eq("x", 1);
  EXPECT_TRUE(ert_repeat_until(tr, body, never, Expectation(0)).constant_value().is_infinite());
}

TEST(RepeatUntil, QuotientMatchesDesugaredLoop) {
  VarDomain d = xyz();
  Transformer tr(d);
  Program body = Program::seq(Program::assign("x", coin(1, 3)),
                              Program::ite(Guard::eq("x", 0), Program::assign("y", coin(1, 4)), Program::assign("y", coin(3, 4))));
  Guard psi = Guard::eq("y", 0);
  Program r = Program::repeat_until(body, psi);
  Expectation f = tr.iverson(Guard::eq("x", 1)).scale(5);
  EXPECT_EQ(tr.ert(r, f), ert_repeat_until(tr, body, psi, f));
  EXPECT_EQ(tr.wp(r, f), wp_repeat_until(tr, body, psi, f));
}

class IidProperties : public ::testing::Test {
 protected:
  bnest::testing::ModelGen gen{77};
};

TEST_F(IidProperties, ScalingByUnaffectedExpectations) {
  for (int i = 0; i < 60; ++i) {
    VarDomain d = gen.domain(4);
    auto n = gen.names(d);
    std::vector<std::string> writable(n.begin(), n.begin() + 2), rest(n.begin() + 2, n.end());
    Program c = gen.loop_free(d, writable, n, 3, true);
    Expectation g = gen.expectation(d, rest);
    Expectation f = gen.expectation(d, n);
    ASSERT_TRUE(unaffected(g, c));
    Transformer tr(d);
    EXPECT_EQ(tr.wp(c, g * f), g * tr.wp(c, f)) << c.to_string();
  }
}

TEST_F(IidProperties, OrbitMatchesPartialSums) {
  int checked = 0;
  for (int i = 0; i < 60; ++i) {
    VarDomain d = gen.domain(3);
    auto loop = gen.iid_loop(d);
    auto n = gen.names(d);
    Expectation f = gen.expectation(d, n);
    Transformer tr(d);
    Expectation p = tr.wp(loop.body, tr.iverson(loop.phi));
    if (!p.leq(Expectation(1)) || !(p.map([](const Coefficient& c) { return c.is_one() ? Coefficient(1) : Coefficient(0); }) == Expectation(0)))
      continue;
    ++checked;
    Expectation exit = tr.iverson(!loop.phi) * f;
    Expectation b = tr.wp(loop.body, exit);
    Expectation e = tr.ert(loop.body, Expectation(0));
    Expectation partial(0), power(1);
    for (unsigned k = 1; k <= 10; ++k) {
      Expectation next = partial + power;
      EXPECT_EQ(tr.orbit_wp(loop.phi, loop.body, f, k), exit + tr.iverson(loop.phi) * b * partial) << "k=" << k;
      EXPECT_EQ(tr.orbit_ert(loop.phi, loop.body, k), Expectation(1) + tr.iverson(loop.phi) * (e * next + partial))
          << "k=" << k;
      partial = next;
      power = power * p;
    }
  }
  EXPECT_GT(checked, 10);
}

TEST_F(IidProperties, RepeatUntilDecomposes) {
  for (int i = 0; i < 60; ++i) {
    VarDomain d = gen.domain(3);
    auto loop = gen.iid_loop(d);
    auto n = gen.names(d);
    Expectation f = gen.expectation(d, n);
    Transformer tr(d);
    Guard psi = !loop.phi;
    EXPECT_EQ(ert_repeat_until(tr, loop.body, psi, f),
              ert_repeat_until(tr, loop.body, psi, Expectation(0)) + wp_repeat_until(tr, loop.body, psi, f))
        << loop.body.to_string();
  }
}

TEST_F(IidProperties, ClosedFormsMatchDesugaring) {
  for (int i = 0; i < 60; ++i) {
    VarDomain d = gen.domain(3);
    auto loop = gen.iid_loop(d);
    auto n = gen.names(d);
    Expectation f = gen.expectation(d, n);
    Transformer tr(d);
    Program r = Program::repeat_until(loop.body, !loop.phi);
    EXPECT_EQ(tr.wp(r, f), wp_repeat_until(tr, loop.body, !loop.phi, f));
    EXPECT_EQ(tr.ert(r, f), ert_repeat_until(tr, loop.body, !loop.phi, f));
  }
}
