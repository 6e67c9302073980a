#ifndef BNEST_POLYNOMIAL_HPP
#define BNEST_POLYNOMIAL_HPP

#include <gmpxx.h>

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace bnest {

using Rational = mpq_class;

/// Parses "3", "-2/7", "0.95", "1e-3" or "2.5E+2" into an exact rational.
std::optional<Rational> parse_rational(std::string_view text);

/// Renders r as "p" or "p/q".
std::string rational_string(const Rational& r);

/// Renders r with `digits` significant digits in fixed notation.
std::string rational_decimal(const Rational& r, int digits);

/// Exact decimal when the denominator only has factors 2 and 5, else "p/q".
std::string rational_exact_decimal(const Rational& r);

/// Power product over named parameters. Names are kept sorted and zero
/// exponents are never stored.
class Monomial {
 public:
  Monomial() = default;
  static Monomial variable(const std::string& name, unsigned exponent = 1);

  const std::vector<std::pair<std::string, unsigned>>& powers() const { return powers_; }
  bool is_one() const { return powers_.empty(); }
  unsigned degree_in(const std::string& name) const;
  unsigned total_degree() const;

  Monomial operator*(const Monomial& other) const;
  /// Quotient when `other` divides *this.
  std::optional<Monomial> divide(const Monomial& other) const;
  Monomial without(const std::string& name) const;

  bool operator==(const Monomial&) const = default;

 private:
  std::vector<std::pair<std::string, unsigned>> powers_;
};

/// Lexicographic order with parameter names ranked alphabetically ("a" > "b").
/// Returns <0, 0, >0.
int lex_compare(const Monomial& lhs, const Monomial& rhs);

/// Sparse multivariate polynomial over Q. Terms are kept sorted by
/// decreasing lexicographic monomial order, so terms().front() is the leading term.
class Polynomial {
 public:
  struct Term {
    Monomial monomial;
    Rational coeff;
  };

  Polynomial() = default;
  Polynomial(const Rational& c);  // NOLINT(google-explicit-constructor)
  Polynomial(long c) : Polynomial(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  template <class T, class U>
  Polynomial(const __gmp_expr<T, U>& e) : Polynomial(Rational(e)) {}  // NOLINT(google-explicit-constructor)
  static Polynomial variable(const std::string& name);
  static Polynomial from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Value of a constant polynomial (0 for the zero polynomial).
  Rational constant_value() const;
  std::set<std::string> variables() const;
  unsigned degree_in(const std::string& name) const;
  const Term& leading_term() const { return terms_.front(); }

  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial scaled(const Rational& c) const;
  Polynomial pow(unsigned e) const;

  /// Coefficients of the polynomial viewed as univariate in `name`;
  /// element k multiplies name^k.
  std::vector<Polynomial> coefficients_in(const std::string& name) const;
  static Polynomial from_coefficients(const std::string& name, const std::vector<Polynomial>& coeffs);

  /// Exact quotient; throws std::domain_error when `divisor` does not divide.
  Polynomial divide_exact(const Polynomial& divisor) const;
  /// Scales so that the leading coefficient is 1 (zero stays zero).
  Polynomial monic() const;

  /// Substitutes every parameter; throws bnest::Error(ParameterMissing) if one is absent.
  Rational evaluate(const std::map<std::string, Rational>& point) const;
  /// Substitutes the parameters present in `point` and keeps the rest symbolic.
  Polynomial substitute(const std::map<std::string, Rational>& point) const;

  std::string to_string() const;

  bool operator==(const Polynomial& other) const;

 private:
  std::vector<Term> terms_;
};

/// Monic greatest common divisor (gcd(0, 0) = 0).
Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// Parses the polynomial expression grammar used by parameterized networks:
///   expr := term (('+'|'-') term)*;  term := factor ('*' factor)*;
///   factor := rational | parameter | factor '^' integer | '(' expr ')'
/// A leading unary minus is accepted. Identifiers not in `parameters`
/// raise UndeclaredParameter.
Polynomial parse_polynomial(std::string_view text, const std::set<std::string>& parameters);

}  // namespace bnest

#endif
