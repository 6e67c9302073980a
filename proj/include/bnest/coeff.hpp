#ifndef BNEST_COEFF_HPP
#define BNEST_COEFF_HPP

#include <map>
#include <memory>
#include <set>
#include <string>
#include <variant>

#include "bnest/polynomial.hpp"

namespace bnest {

/// Quotient of polynomials in lowest terms. The pair is scaled so all
/// coefficients are integers with no common factor and the denominator's
/// leading coefficient is positive, which makes the representation unique.
class RationalFunction {
 public:
  RationalFunction(Polynomial num, Polynomial den);

  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  std::set<std::string> parameters() const;
  std::string to_string() const;

  bool operator==(const RationalFunction&) const = default;

 private:
  Polynomial num_, den_;
};

/// Value in the extended reals produced by evaluating a Coefficient.
struct ExtRational {
  bool infinite = false;
  Rational value = 0;

  static ExtRational inf() { return {true, 0}; }
  bool operator==(const ExtRational& o) const { return infinite == o.infinite && (infinite || value == o.value); }
  std::string to_string() const;
};

/// Element of the codomain of expectations: an exact rational, a rational
/// function over named parameters, or infinity. Values are immutable and
/// always canonical, so equality is structural.
class Coefficient {
 public:
  Coefficient() : rep_(Rational(0)) {}
  Coefficient(const Rational& r) : rep_(r) {}  // NOLINT(google-explicit-constructor)
  Coefficient(long v) : rep_(Rational(v)) {}   // NOLINT(google-explicit-constructor)
  Coefficient(int v) : rep_(Rational(v)) {}    // NOLINT(google-explicit-constructor)
  // Accepts unevaluated gmpxx expressions such as a + b.
  template <class T, class U>
  Coefficient(const __gmp_expr<T, U>& e) : rep_(Rational(e)) {}  // NOLINT(google-explicit-constructor)
  static Coefficient infinity();
  static Coefficient from_polynomial(const Polynomial& p);
  static Coefficient from_fraction(const Polynomial& num, const Polynomial& den);
  /// Parses "inf", a rational literal, or "num/den" where both sides are
  /// parenthesised polynomials.
  static Coefficient parse(std::string_view text, const std::set<std::string>& parameters = {});

  bool is_infinite() const { return std::holds_alternative<Inf>(rep_); }
  bool is_rational() const { return std::holds_alternative<Rational>(rep_); }
  bool is_symbolic() const { return std::holds_alternative<std::shared_ptr<const RationalFunction>>(rep_); }
  bool is_zero() const;
  bool is_one() const;
  /// Requires is_rational().
  const Rational& rational() const;
  /// Requires !is_infinite().
  RationalFunction as_fraction() const;
  std::set<std::string> parameters() const;

  Coefficient operator+(const Coefficient& o) const;
  /// Subtraction for intermediate symbolic values; inf - finite = inf,
  /// anything - inf is rejected.
  Coefficient operator-(const Coefficient& o) const;
  Coefficient operator*(const Coefficient& o) const;
  Coefficient& operator+=(const Coefficient& o) { return *this = *this + o; }
  Coefficient& operator*=(const Coefficient& o) { return *this = *this * o; }

  ExtRational eval_at(const std::map<std::string, Rational>& point) const;
  /// Substitutes the parameters named in `point`; the others stay symbolic.
  Coefficient substitute(const std::map<std::string, Rational>& point) const;

  /// "p/q", "(200*a^2 - 40*a - 460)/(89*a^2 - 69*a - 21)", or "inf".
  std::string to_string() const;
  /// Parameter-free values only; symbolic values fall back to to_string().
  std::string to_decimal(int digits = 6) const;

  bool operator==(const Coefficient& o) const;

 private:
  struct Inf {
    bool operator==(const Inf&) const { return true; }
  };
  using Rep = std::variant<Rational, std::shared_ptr<const RationalFunction>, Inf>;
  explicit Coefficient(Rep rep) : rep_(std::move(rep)) {}
  static Coefficient from_function(RationalFunction f);

  Rep rep_;
};

/// 0/0 = 0, x/0 = inf for x != 0 (including inf/0), otherwise the quotient.
/// Throws DivByInfinity when den is infinite.
Coefficient guarded_div(const Coefficient& num, const Coefficient& den);

}  // namespace bnest

#endif
