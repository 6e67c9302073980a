#include "bnest/coeff.hpp"

#include "bnest/error.hpp"

namespace bnest {

namespace {

// Multiplier that clears every coefficient denominator of p.
mpz_class denominator_lcm(const Polynomial& p) {
  mpz_class l = 1;
  for (const auto& t : p.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.get_den_mpz_t());
  return l;
}

mpz_class numerator_gcd(const Polynomial& p, mpz_class g) {
  for (const auto& t : p.terms()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_num_mpz_t());
  return g;
}

}  // namespace

RationalFunction::RationalFunction(Polynomial num, Polynomial den) {
  if (den.is_zero()) throw std::domain_error("rational function with zero denominator");
  if (num.is_zero()) {
    num_ = Polynomial();
    den_ = Polynomial(1);
    return;
  }
  Polynomial g = gcd(num, den);
  if (!g.is_constant()) {
    num = num.divide_exact(g);
    den = den.divide_exact(g);
  }
  mpz_class l = denominator_lcm(num);
  mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), denominator_lcm(den).get_mpz_t());
  num = num.scaled(Rational(l));
  den = den.scaled(Rational(l));
  mpz_class h = numerator_gcd(den, numerator_gcd(num, 0));
  Rational s(mpz_class(1), h);
  if (den.leading_term().coeff < 0) s = -s;
  num_ = num.scaled(s);
  den_ = den.scaled(s);
}

std::set<std::string> RationalFunction::parameters() const {
  auto vs = num_.variables();
  for (const auto& v : den_.variables()) vs.insert(v);
  return vs;
}

std::string RationalFunction::to_string() const {
  auto wrap = [](const Polynomial& p) {
    std::string s = p.to_string();
    return p.terms().size() > 1 ? "(" + s + ")" : s;
  };
  if (den_.is_constant() && den_.constant_value() == 1) return num_.to_string();
  return wrap(num_) + "/" + wrap(den_);
}

std::string ExtRational::to_string() const { return infinite ? "inf" : rational_string(value); }

// ---------------------------------------------------------------------------

Coefficient Coefficient::infinity() { return Coefficient(Rep(Inf{})); }

Coefficient Coefficient::from_function(RationalFunction f) {
  if (f.is_constant()) return Coefficient(f.numerator().constant_value() / f.denominator().constant_value());
  return Coefficient(Rep(std::make_shared<const RationalFunction>(std::move(f))));
}

Coefficient Coefficient::from_polynomial(const Polynomial& p) {
  if (p.is_constant()) return Coefficient(p.constant_value());
  return from_function(RationalFunction(p, Polynomial(1)));
}

Coefficient Coefficient::from_fraction(const Polynomial& num, const Polynomial& den) {
  return from_function(RationalFunction(num, den));
}

Coefficient Coefficient::parse(std::string_view text, const std::set<std::string>& parameters) {
  std::string_view t = text;
  while (!t.empty() && t.front() == ' ') t.remove_prefix(1);
  while (!t.empty() && t.back() == ' ') t.remove_suffix(1);
  if (t == "inf") return infinity();
  if (auto r = parse_rational(t)) return Coefficient(*r);
  // "(num)/(den)" or "poly"; split at a top-level '/' that follows ')'.
  int depth = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] == '(') ++depth;
    if (t[i] == ')') --depth;
    if (t[i] == '/' && depth == 0 && i > 0 && t[i - 1] == ')') {
      Polynomial num = parse_polynomial(t.substr(0, i), parameters);
      Polynomial den = parse_polynomial(t.substr(i + 1), parameters);
      if (den.is_zero()) throw Error(ErrorKind::SyntaxError, "zero denominator in \"" + std::string(t) + "\"");
      return from_fraction(num, den);
    }
  }
  return from_polynomial(parse_polynomial(t, parameters));
}

bool Coefficient::is_zero() const {
  auto* r = std::get_if<Rational>(&rep_);
  return r && *r == 0;
}

bool Coefficient::is_one() const {
  auto* r = std::get_if<Rational>(&rep_);
  return r && *r == 1;
}

const Rational& Coefficient::rational() const {
  auto* r = std::get_if<Rational>(&rep_);
  if (!r) throw std::logic_error("coefficient is not a plain rational: " + to_string());
  return *r;
}

RationalFunction Coefficient::as_fraction() const {
  if (auto* r = std::get_if<Rational>(&rep_)) return RationalFunction(Polynomial(*r), Polynomial(1));
  if (auto* f = std::get_if<std::shared_ptr<const RationalFunction>>(&rep_)) return **f;
  throw std::logic_error("infinity has no fraction form");
}

std::set<std::string> Coefficient::parameters() const {
  if (auto* f = std::get_if<std::shared_ptr<const RationalFunction>>(&rep_)) return (*f)->parameters();
  return {};
}

Coefficient Coefficient::operator+(const Coefficient& o) const {
  if (is_infinite() || o.is_infinite()) return infinity();
  if (is_rational() && o.is_rational()) return Coefficient(rational() + o.rational());
  RationalFunction a = as_fraction(), b = o.as_fraction();
  if (a.denominator() == b.denominator())
    return from_fraction(a.numerator() + b.numerator(), a.denominator());
  return from_fraction(a.numerator() * b.denominator() + b.numerator() * a.denominator(),
                       a.denominator() * b.denominator());
}

Coefficient Coefficient::operator-(const Coefficient& o) const {
  if (o.is_infinite()) throw std::domain_error("subtraction of infinity");
  if (is_infinite()) return infinity();
  if (is_rational() && o.is_rational()) return Coefficient(rational() - o.rational());
  RationalFunction a = as_fraction(), b = o.as_fraction();
  return from_fraction(a.numerator() * b.denominator() - b.numerator() * a.denominator(),
                       a.denominator() * b.denominator());
}

Coefficient Coefficient::operator*(const Coefficient& o) const {
  if (is_zero() || o.is_zero()) return Coefficient(0);
  if (is_infinite() || o.is_infinite()) return infinity();
  if (is_rational() && o.is_rational()) return Coefficient(rational() * o.rational());
  if (is_rational()) {
    RationalFunction b = o.as_fraction();
    return from_fraction(b.numerator().scaled(rational()), b.denominator());
  }
  if (o.is_rational()) {
    RationalFunction a = as_fraction();
    return from_fraction(a.numerator().scaled(o.rational()), a.denominator());
  }
  RationalFunction a = as_fraction(), b = o.as_fraction();
  return from_fraction(a.numerator() * b.numerator(), a.denominator() * b.denominator());
}

Coefficient guarded_div(const Coefficient& num, const Coefficient& den) {
  if (den.is_infinite()) throw Error(ErrorKind::DivByInfinity, "division of " + num.to_string() + " by inf");
  if (den.is_zero()) return num.is_zero() ? Coefficient(0) : Coefficient::infinity();
  if (num.is_infinite()) return Coefficient::infinity();
  if (num.is_rational() && den.is_rational()) return Coefficient(num.rational() / den.rational());
  RationalFunction a = num.as_fraction(), b = den.as_fraction();
  return Coefficient::from_fraction(a.numerator() * b.denominator(), a.denominator() * b.numerator());
}

ExtRational Coefficient::eval_at(const std::map<std::string, Rational>& point) const {
  if (is_infinite()) return ExtRational::inf();
  Rational v;
  if (is_rational()) {
    v = rational();
  } else {
    RationalFunction f = as_fraction();
    Rational n = f.numerator().evaluate(point);
    Rational d = f.denominator().evaluate(point);
    if (d == 0) {
      if (n == 0) throw Error(ErrorKind::UndefinedAtPoint, to_string() + " is 0/0 at the given point");
      throw Error(ErrorKind::PoleAtPoint, to_string() + " has a pole at the given point");
    }
    v = n / d;
  }
  if (v < 0) throw Error(ErrorKind::NegativeValue, to_string() + " evaluates to " + rational_string(v));
  return {false, v};
}

Coefficient Coefficient::substitute(const std::map<std::string, Rational>& point) const {
  if (!is_symbolic()) return *this;
  RationalFunction f = as_fraction();
  Polynomial n = f.numerator().substitute(point);
  Polynomial d = f.denominator().substitute(point);
  if (d.is_zero()) {
    if (n.is_zero()) throw Error(ErrorKind::UndefinedAtPoint, to_string() + " is 0/0 at the given point");
    throw Error(ErrorKind::PoleAtPoint, to_string() + " has a pole at the given point");
  }
  return from_fraction(n, d);
}

std::string Coefficient::to_string() const {
  if (is_infinite()) return "inf";
  if (is_rational()) return rational_string(rational());
  return std::get<std::shared_ptr<const RationalFunction>>(rep_)->to_string();
}

std::string Coefficient::to_decimal(int digits) const {
  if (is_infinite()) return "inf";
  if (is_rational()) return rational_decimal(rational(), digits);
  return to_string();
}

bool Coefficient::operator==(const Coefficient& o) const {
  if (rep_.index() != o.rep_.index()) return false;
  if (is_infinite()) return true;
  if (is_rational()) return rational() == o.rational();
  return *std::get<std::shared_ptr<const RationalFunction>>(rep_) ==
         *std::get<std::shared_ptr<const RationalFunction>>(o.rep_);
}

}  // namespace bnest
