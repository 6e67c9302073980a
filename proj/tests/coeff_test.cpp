#include <gtest/gtest.h>

#include <random>

#include "bnest/coeff.hpp"
#include "bnest/error.hpp"

using namespace bnest;

namespace {

Rational q(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

Polynomial a() { return Polynomial::variable("a"); }

Coefficient sprinkler_closed_form() {
  return Coefficient::from_fraction(a() * a() * 200 - a() * 40 - 460, a() * a() * 89 - a() * 69 - 21);
}

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

TEST(Rational, ParsesDecimalsExactly) {
  EXPECT_EQ(*parse_rational("0.95"), q(19, 20));
  EXPECT_EQ(*parse_rational("0.001"), q(1, 1000));
  EXPECT_EQ(*parse_rational("095"), q(95));
  EXPECT_EQ(*parse_rational("-3/6"), q(-1, 2));
  EXPECT_EQ(*parse_rational("1e-3"), q(1, 1000));
  EXPECT_EQ(*parse_rational(".5"), q(1, 2));
  EXPECT_FALSE(parse_rational("1/0"));
  EXPECT_FALSE(parse_rational("abc"));
  EXPECT_FALSE(parse_rational(""));
}

TEST(Rational, Rendering) {
  EXPECT_EQ(rational_decimal(q(352, 15), 6), "23.4667");
  EXPECT_EQ(rational_decimal(q(1, 3), 6), "0.333333");
  EXPECT_EQ(rational_exact_decimal(q(1, 8)), "0.125");
  EXPECT_EQ(rational_exact_decimal(q(1, 3)), "1/3");
  EXPECT_EQ(rational_exact_decimal(q(-5, 2)), "-2.5");
}

TEST(Polynomial, ArithmeticAndPrinting) {
  Polynomial p = a() * a() * 200 - a() * 40 - 460;
  EXPECT_EQ(p.to_string(), "200*a^2 - 40*a - 460");
  EXPECT_EQ((a() + Polynomial(1) - a()).to_string(), "1");
  EXPECT_TRUE((a() - a()).is_zero());
  EXPECT_EQ(p.evaluate({{"a", q(1)}}), q(-300));
  Polynomial b = Polynomial::variable("b");
  EXPECT_EQ(((a() + b) * (a() - b)).to_string(), "a^2 - b^2");
}

TEST(Polynomial, GcdCancelsCommonFactors) {
  Polynomial b = Polynomial::variable("b");
  Polynomial common = a() * b + 1;
  Polynomial x = common * (a() - 2);
  Polynomial y = common * (b + 3);
  EXPECT_EQ(gcd(x, y), common.monic());
  EXPECT_TRUE(gcd(a(), b).is_constant());
}

TEST(Polynomial, ParserHonoursDeclaredParameters) {
  std::set<std::string> ps{"a"};
  EXPECT_EQ(parse_polynomial("(1 - a)^2", ps).to_string(), "a^2 - 2*a + 1");
  EXPECT_EQ(parse_polynomial("-a + 1/2", ps).to_string(), "-a + 1/2");
  EXPECT_EQ(kind_of([&] { parse_polynomial("b + 1", ps); }), ErrorKind::UndeclaredParameter);
  EXPECT_EQ(kind_of([&] { parse_polynomial("a +", ps); }), ErrorKind::SyntaxError);
}

TEST(Coefficient, AddExamples) {
  EXPECT_EQ(Coefficient(q(1, 2)) + Coefficient(q(1, 3)), Coefficient(q(5, 6)));
  EXPECT_TRUE((Coefficient::infinity() + Coefficient(7)).is_infinite());
  Coefficient sum = Coefficient::from_polynomial(a()) + Coefficient::from_polynomial(Polynomial(1) - a());
  EXPECT_TRUE(sum.is_one());
  EXPECT_TRUE(sum.is_rational());
}

TEST(Coefficient, MulExamples) {
  EXPECT_TRUE((Coefficient(0) * Coefficient::infinity()).is_zero());
  EXPECT_TRUE((Coefficient::infinity() * Coefficient(0)).is_zero());
  EXPECT_TRUE((Coefficient(q(1, 5)) * Coefficient::infinity()).is_infinite());
  EXPECT_EQ(Coefficient(q(2, 3)) * Coefficient(q(3, 4)), Coefficient(q(1, 2)));
  EXPECT_EQ((Coefficient::from_polynomial(a()) * Coefficient::from_polynomial(a())).to_string(), "a^2");
}

TEST(Coefficient, GuardedDivExamples) {
  EXPECT_TRUE(guarded_div(0, 0).is_zero());
  EXPECT_TRUE(guarded_div(3, 0).is_infinite());
  EXPECT_TRUE(guarded_div(Coefficient::infinity(), 0).is_infinite());
  EXPECT_EQ(guarded_div(Coefficient(q(1, 2)), Coefficient(q(1, 4))), Coefficient(2));
  EXPECT_EQ(kind_of([] { guarded_div(1, Coefficient::infinity()); }), ErrorKind::DivByInfinity);
}

TEST(Coefficient, EvalAtExamples) {
  Coefficient c = sprinkler_closed_form();
  EXPECT_EQ(c.to_string(), "(200*a^2 - 40*a - 460)/(89*a^2 - 69*a - 21)");
  EXPECT_EQ(c.eval_at({{"a", q(1)}}).value, q(300));
  EXPECT_EQ(c.eval_at({{"a", q(0)}}).value, q(460, 21));
  EXPECT_EQ(Coefficient(5).eval_at({{"a", q(3)}}).value, q(5));
  EXPECT_TRUE(Coefficient::infinity().eval_at({}).infinite);
}

TEST(Coefficient, EvalAtErrors) {
  Coefficient pole = Coefficient::from_fraction(Polynomial(1), a() - 1);
  EXPECT_EQ(kind_of([&] { pole.eval_at({{"a", q(1)}}); }), ErrorKind::PoleAtPoint);
  Coefficient hole = Coefficient::from_fraction(a() * a() - 1, a() * a() - a() * 3 + 2);  // (a+1)/(a-2) after cancel
  EXPECT_EQ(hole.to_string(), "(a + 1)/(a - 2)");
  EXPECT_EQ(kind_of([&] { hole.eval_at({{"a", q(3, 2)}}); }), ErrorKind::NegativeValue);
  Coefficient cancels = Coefficient::from_fraction(a() * Polynomial::variable("b"), a());
  EXPECT_EQ(cancels.to_string(), "b");
  Coefficient undef = Coefficient::from_fraction(a(), a() + Polynomial::variable("b"));
  EXPECT_EQ(kind_of([&] { undef.eval_at({{"a", q(0)}, {"b", q(0)}}); }), ErrorKind::UndefinedAtPoint);
  EXPECT_EQ(kind_of([&] { sprinkler_closed_form().eval_at({}); }), ErrorKind::ParameterMissing);
}

TEST(Coefficient, CanonicalFormIsUnique) {
  Coefficient x = Coefficient::from_fraction(a() * 2 - 2, a() * a() * 4 - 4);
  Coefficient y = Coefficient::from_fraction(Polynomial(q(1, 2)), a() + 1);
  EXPECT_EQ(x, y);
  EXPECT_EQ(x.to_string(), "1/(2*a + 2)");
  Coefficient neg = Coefficient::from_fraction(Polynomial(1), Polynomial(0) - a());
  EXPECT_EQ(neg.to_string(), "-1/a");
  // Re-canonicalizing a canonical value changes nothing.
  RationalFunction f = sprinkler_closed_form().as_fraction();
  EXPECT_EQ(RationalFunction(f.numerator(), f.denominator()), f);
}

TEST(Coefficient, ParseRoundTrips) {
  std::set<std::string> ps{"a"};
  Coefficient c = sprinkler_closed_form();
  EXPECT_EQ(Coefficient::parse(c.to_string(), ps), c);
  EXPECT_TRUE(Coefficient::parse("inf").is_infinite());
  EXPECT_EQ(Coefficient::parse("0.25"), Coefficient(q(1, 4)));
  EXPECT_EQ(Coefficient::parse("1 - a", ps).to_string(), "-a + 1");
}

class CoefficientLaws : public ::testing::Test {
 protected:
  std::mt19937_64 rng{2024};
  Rational rational() {
    std::uniform_int_distribution<long> n(-20, 20), d(1, 12);
    Rational r(n(rng), d(rng));
    r.canonicalize();
    return r;
  }
  Polynomial poly() {
    Polynomial p;
    Polynomial b = Polynomial::variable("b");
    std::uniform_int_distribution<int> deg(0, 2);
    for (int i = 0; i < 3; ++i) p = p + a().pow(deg(rng)) * b.pow(deg(rng)) * Polynomial(rational());
    return p;
  }
  Coefficient fraction() {
    Polynomial den = poly();
    while (den.is_zero()) den = poly();
    return Coefficient::from_fraction(poly(), den);
  }
};

TEST_F(CoefficientLaws, RingLawsOnRationals) {
  for (int i = 0; i < 200; ++i) {
    Coefficient x(rational()), y(rational()), z(rational());
    EXPECT_EQ(x + y, y + x);
    EXPECT_EQ((x + y) + z, x + (y + z));
    EXPECT_EQ((x * y) * z, x * (y * z));
    EXPECT_EQ(x * (y + z), x * y + x * z);
    EXPECT_EQ(x + Coefficient(0), x);
    EXPECT_EQ(x * Coefficient(1), x);
  }
}

TEST_F(CoefficientLaws, RingLawsOnRationalFunctions) {
  for (int i = 0; i < 40; ++i) {
    Coefficient x = fraction(), y = fraction(), z = fraction();
    EXPECT_EQ(x + y, y + x);
    EXPECT_EQ((x + y) + z, x + (y + z));
    EXPECT_EQ(x * (y + z), x * y + x * z);
  }
}

TEST_F(CoefficientLaws, EvaluationIsAHomomorphism) {
  int checked = 0;
  for (int i = 0; i < 60; ++i) {
    Coefficient x = fraction(), y = fraction();
    std::map<std::string, Rational> pt{{"a", rational()}, {"b", rational()}};
    auto eval = [&](const Coefficient& c) -> std::optional<Rational> {
      RationalFunction f = c.as_fraction();
      Rational d = f.denominator().evaluate(pt);
      if (d == 0) return std::nullopt;
      return f.numerator().evaluate(pt) / d;
    };
    auto ex = eval(x), ey = eval(y), es = eval(x + y), ep = eval(x * y);
    if (!ex || !ey || !es || !ep) continue;
    EXPECT_EQ(*es, *ex + *ey);
    EXPECT_EQ(*ep, *ex * *ey);
    ++checked;
  }
  EXPECT_GT(checked, 30);
}

TEST_F(CoefficientLaws, GuardedDivInvertsMultiplication) {
  for (int i = 0; i < 100; ++i) {
    Coefficient x(rational()), y(rational());
    if (y.is_zero()) continue;
    EXPECT_EQ(guarded_div(x, y) * y, x);
  }
  for (int i = 0; i < 20; ++i) {
    Coefficient x = fraction(), y = fraction();
    if (y.is_zero()) continue;
    EXPECT_EQ(guarded_div(x, y) * y, x);
  }
}
