#include "bnest/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

#include "bnest/error.hpp"

namespace bnest {

namespace {

mpz_class pow10(unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

}  // namespace

std::optional<Rational> parse_rational(std::string_view text) {
  std::size_t i = 0;
  const std::size_t n = text.size();
  bool negative = false;
  if (i < n && (text[i] == '+' || text[i] == '-')) {
    negative = text[i] == '-';
    ++i;
  }
  std::string int_digits;
  while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) int_digits += text[i++];

  if (i < n && text[i] == '/') {
    ++i;
    std::string den;
    while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) den += text[i++];
    if (int_digits.empty() || den.empty() || i != n) return std::nullopt;
    mpz_class d(den, 10);
    if (d == 0) return std::nullopt;
    Rational r(mpz_class(int_digits, 10), d);
    r.canonicalize();
    return negative ? Rational(-r) : r;
  }

  std::string frac_digits;
  if (i < n && text[i] == '.') {
    ++i;
    while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) frac_digits += text[i++];
  }
  if (int_digits.empty() && frac_digits.empty()) return std::nullopt;

  long exponent = 0;
  if (i < n && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool exp_negative = false;
    if (i < n && (text[i] == '+' || text[i] == '-')) {
      exp_negative = text[i] == '-';
      ++i;
    }
    std::string exp_digits;
    while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) exp_digits += text[i++];
    if (exp_digits.empty() || exp_digits.size() > 6) return std::nullopt;
    exponent = std::stol(exp_digits);
    if (exp_negative) exponent = -exponent;
  }
  if (i != n) return std::nullopt;

  mpz_class mantissa(int_digits + frac_digits, 10);
  exponent -= static_cast<long>(frac_digits.size());
  Rational r;
  if (exponent >= 0) {
    r = Rational(mantissa * pow10(static_cast<unsigned long>(exponent)));
  } else {
    r = Rational(mantissa, pow10(static_cast<unsigned long>(-exponent)));
    r.canonicalize();
  }
  return negative ? Rational(-r) : r;
}

std::string rational_string(const Rational& r) { return r.get_str(); }

std::string rational_decimal(const Rational& r, int digits) {
  if (r == 0) return "0";
  Rational a = abs(r);
  // Find e with 10^e <= a < 10^(e+1).
  long e = static_cast<long>(mpz_sizeinbase(a.get_num_mpz_t(), 10)) -
           static_cast<long>(mpz_sizeinbase(a.get_den_mpz_t(), 10));
  auto scale = [](long k) {
    return k >= 0 ? Rational(pow10(static_cast<unsigned long>(k)))
                  : Rational(mpz_class(1), pow10(static_cast<unsigned long>(-k)));
  };
  while (scale(e) > a) --e;
  while (scale(e + 1) <= a) ++e;
  long decimals = std::max<long>(0, digits - 1 - e);
  Rational scaled = a * scale(decimals);
  // Round half away from zero.
  mpz_class q = scaled.get_num() / scaled.get_den();
  Rational rem = scaled - Rational(q);
  if (rem * 2 >= 1) q += 1;
  std::string s = q.get_str();
  if (decimals > 0) {
    if (static_cast<long>(s.size()) <= decimals) s.insert(0, static_cast<std::size_t>(decimals + 1 - static_cast<long>(s.size())), '0');
    s.insert(s.size() - static_cast<std::size_t>(decimals), ".");
  }
  return (r < 0 ? "-" : "") + s;
}

std::string rational_exact_decimal(const Rational& r) {
  mpz_class den = r.get_den();
  unsigned long twos = 0, fives = 0;
  while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) { den /= 2; ++twos; }
  while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) { den /= 5; ++fives; }
  if (den != 1) return rational_string(r);
  unsigned long places = std::max(twos, fives);
  if (places == 0) return r.get_num().get_str();
  Rational scaled = r * Rational(pow10(places));
  mpz_class v = abs(scaled.get_num());
  std::string s = v.get_str();
  if (s.size() <= places) s.insert(0, places + 1 - s.size(), '0');
  s.insert(s.size() - places, ".");
  return (r < 0 ? "-" : "") + s;
}

// ---------------------------------------------------------------------------

Monomial Monomial::variable(const std::string& name, unsigned exponent) {
  Monomial m;
  if (exponent > 0) m.powers_.emplace_back(name, exponent);
  return m;
}

unsigned Monomial::degree_in(const std::string& name) const {
  for (const auto& [v, e] : powers_)
    if (v == name) return e;
  return 0;
}

unsigned Monomial::total_degree() const {
  unsigned d = 0;
  for (const auto& p : powers_) d += p.second;
  return d;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r;
  auto a = powers_.begin(), b = other.powers_.begin();
  while (a != powers_.end() || b != other.powers_.end()) {
    if (b == other.powers_.end() || (a != powers_.end() && a->first < b->first)) {
      r.powers_.push_back(*a++);
    } else if (a == powers_.end() || b->first < a->first) {
      r.powers_.push_back(*b++);
    } else {
      r.powers_.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  return r;
}

std::optional<Monomial> Monomial::divide(const Monomial& other) const {
  Monomial r;
  auto a = powers_.begin();
  for (const auto& [v, e] : other.powers_) {
    while (a != powers_.end() && a->first < v) r.powers_.push_back(*a++);
    if (a == powers_.end() || a->first != v || a->second < e) return std::nullopt;
    if (a->second > e) r.powers_.emplace_back(v, a->second - e);
    ++a;
  }
  while (a != powers_.end()) r.powers_.push_back(*a++);
  return r;
}

Monomial Monomial::without(const std::string& name) const {
  Monomial r;
  for (const auto& p : powers_)
    if (p.first != name) r.powers_.push_back(p);
  return r;
}

int lex_compare(const Monomial& lhs, const Monomial& rhs) {
  const auto& a = lhs.powers();
  const auto& b = rhs.powers();
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) return 1;
    if (i == a.size() || b[j].first < a[i].first) return -1;
    if (a[i].second != b[j].second) return a[i].second > b[j].second ? 1 : -1;
    ++i;
    ++j;
  }
  return 0;
}

// ---------------------------------------------------------------------------

Polynomial::Polynomial(const Rational& c) {
  if (c != 0) terms_.push_back({Monomial{}, c});
}

Polynomial Polynomial::variable(const std::string& name) {
  Polynomial p;
  p.terms_.push_back({Monomial::variable(name), Rational(1)});
  return p;
}

Polynomial Polynomial::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& x, const Term& y) { return lex_compare(x.monomial, y.monomial) > 0; });
  std::vector<Term> merged;
  for (auto& t : terms) {
    if (!merged.empty() && merged.back().monomial == t.monomial) {
      merged.back().coeff += t.coeff;
    } else {
      merged.push_back(std::move(t));
    }
  }
  Polynomial p;
  for (auto& t : merged)
    if (t.coeff != 0) p.terms_.push_back(std::move(t));
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.front().monomial.is_one());
}

Rational Polynomial::constant_value() const {
  if (terms_.empty()) return 0;
  return terms_.back().monomial.is_one() ? terms_.back().coeff : Rational(0);
}

std::set<std::string> Polynomial::variables() const {
  std::set<std::string> vs;
  for (const auto& t : terms_)
    for (const auto& p : t.monomial.powers()) vs.insert(p.first);
  return vs;
}

unsigned Polynomial::degree_in(const std::string& name) const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.monomial.degree_in(name));
  return d;
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  Polynomial r;
  r.terms_.reserve(terms_.size() + other.terms_.size());
  auto a = terms_.begin(), b = other.terms_.begin();
  while (a != terms_.end() || b != other.terms_.end()) {
    int c = a == terms_.end() ? -1 : b == other.terms_.end() ? 1 : lex_compare(a->monomial, b->monomial);
    if (c > 0) {
      r.terms_.push_back(*a++);
    } else if (c < 0) {
      r.terms_.push_back(*b++);
    } else {
      Rational s = a->coeff + b->coeff;
      if (s != 0) r.terms_.push_back({a->monomial, s});
      ++a;
      ++b;
    }
  }
  return r;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& other) const { return *this + (-other); }

Polynomial Polynomial::operator*(const Polynomial& other) const {
  if (is_zero() || other.is_zero()) return {};
  std::vector<Term> prod;
  prod.reserve(terms_.size() * other.terms_.size());
  for (const auto& x : terms_)
    for (const auto& y : other.terms_) prod.push_back({x.monomial * y.monomial, x.coeff * y.coeff});
  return from_terms(std::move(prod));
}

Polynomial Polynomial::scaled(const Rational& c) const {
  if (c == 0) return {};
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coeff *= c;
  return r;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result(1), base = *this;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e > 0) base = base * base;
  }
  return result;
}

std::vector<Polynomial> Polynomial::coefficients_in(const std::string& name) const {
  std::vector<std::vector<Term>> buckets(degree_in(name) + 1);
  for (const auto& t : terms_) buckets[t.monomial.degree_in(name)].push_back({t.monomial.without(name), t.coeff});
  std::vector<Polynomial> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(from_terms(std::move(b)));
  return out;
}

Polynomial Polynomial::from_coefficients(const std::string& name, const std::vector<Polynomial>& coeffs) {
  std::vector<Term> terms;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    Monomial xk = Monomial::variable(name, static_cast<unsigned>(k));
    for (const auto& t : coeffs[k].terms_) terms.push_back({t.monomial * xk, t.coeff});
  }
  return from_terms(std::move(terms));
}

Polynomial Polynomial::divide_exact(const Polynomial& divisor) const {
  if (divisor.is_zero()) throw std::domain_error("polynomial division by zero");
  const Term& lead = divisor.leading_term();
  std::vector<Term> quotient;
  Polynomial rem = *this;
  while (!rem.is_zero()) {
    const Term& lt = rem.leading_term();
    auto m = lt.monomial.divide(lead.monomial);
    if (!m) throw std::domain_error("polynomial division is not exact");
    Rational c = lt.coeff / lead.coeff;
    Polynomial step;
    step.terms_.push_back({*m, c});
    quotient.push_back({*m, c});
    rem = rem - step * divisor;
  }
  return from_terms(std::move(quotient));
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return {};
  return scaled(1 / leading_term().coeff);
}

Rational Polynomial::evaluate(const std::map<std::string, Rational>& point) const {
  Rational sum = 0;
  for (const auto& t : terms_) {
    Rational v = t.coeff;
    for (const auto& [name, e] : t.monomial.powers()) {
      auto it = point.find(name);
      if (it == point.end()) throw Error(ErrorKind::ParameterMissing, "no value for parameter '" + name + "'");
      mpz_class num, den;
      mpz_pow_ui(num.get_mpz_t(), it->second.get_num_mpz_t(), e);
      mpz_pow_ui(den.get_mpz_t(), it->second.get_den_mpz_t(), e);
      v *= Rational(num, den);
    }
    sum += v;
  }
  sum.canonicalize();
  return sum;
}

Polynomial Polynomial::substitute(const std::map<std::string, Rational>& point) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    Rational c = t.coeff;
    Monomial rest;
    for (const auto& [name, e] : t.monomial.powers()) {
      auto it = point.find(name);
      if (it == point.end()) {
        rest = rest * Monomial::variable(name, e);
      } else {
        for (unsigned k = 0; k < e; ++k) c *= it->second;
      }
    }
    out.push_back({rest, c});
  }
  return from_terms(std::move(out));
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    Rational c = t.coeff;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    c = abs(c);
    bool unit = c == 1 && !t.monomial.is_one();
    if (!unit) os << rational_string(c);
    bool first_factor = unit;
    for (const auto& [name, e] : t.monomial.powers()) {
      if (!first_factor) os << "*";
      first_factor = false;
      os << name;
      if (e > 1) os << "^" << e;
    }
    first = false;
  }
  return os.str();
}

bool Polynomial::operator==(const Polynomial& other) const {
  if (terms_.size() != other.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (!(terms_[i].monomial == other.terms_[i].monomial) || terms_[i].coeff != other.terms_[i].coeff) return false;
  return true;
}

// ---------------------------------------------------------------------------
// GCD: recursive primitive polynomial remainder sequence, treating the
// alphabetically first parameter as the main variable.

namespace {

Polynomial pseudo_remainder(Polynomial a, const Polynomial& b, const std::string& x) {
  const unsigned db = b.degree_in(x);
  const Polynomial lcb = b.coefficients_in(x).back();
  while (!a.is_zero()) {
    unsigned da = a.degree_in(x);
    if (da < db) break;
    Polynomial lca = a.coefficients_in(x).back();
    Polynomial shift = Polynomial::from_terms({{Monomial::variable(x, da - db), Rational(1)}});
    a = lcb * a - lca * shift * b;
  }
  return a;
}

Polynomial content_in(const Polynomial& p, const std::string& x) {
  Polynomial g;
  for (const auto& c : p.coefficients_in(x)) {
    g = gcd(g, c);
    if (g.is_constant() && !g.is_zero()) return Polynomial(1);
  }
  return g;
}

// Scales p to integer coefficients without a common factor and a positive
// leading coefficient. Keeps PRS coefficients small compared to monic().
Polynomial integer_primitive(const Polynomial& p) {
  if (p.is_zero()) return p;
  mpz_class l = 1, g = 0;
  for (const auto& t : p.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.get_den_mpz_t());
  for (const auto& t : p.terms()) {
    mpz_class n = t.coeff.get_num() * (l / t.coeff.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
  }
  Rational s(l, g);
  s.canonicalize();
  if (p.leading_term().coeff < 0) s = -s;
  return p.scaled(s);
}

Polynomial primitive_part(const Polynomial& p, const std::string& x) {
  if (p.is_zero()) return p;
  return integer_primitive(p.divide_exact(content_in(p, x)));
}

// A common factor of positive degree in v survives specialising the other
// variables at any point where the leading coefficients in v stay nonzero.
// So if every such univariate gcd is constant, a and b are coprime.
bool coprime_by_specialization(const Polynomial& a, const Polynomial& b, const std::set<std::string>& vars) {
  static const long kPoints[][4] = {{3, 7, 11, 17}, {5, 2, 13, 19}, {-4, 9, 23, 6}};
  for (const auto& v : vars) {
    if (a.degree_in(v) == 0 || b.degree_in(v) == 0) continue;
    bool decided = false;
    for (const auto& pts : kPoints) {
      std::map<std::string, Rational> point;
      std::size_t k = 0;
      for (const auto& w : vars)
        if (w != v) {
          point[w] = Rational(pts[k % 4] + static_cast<long>(k / 4));
          ++k;
        }
      Polynomial sa = a.substitute(point), sb = b.substitute(point);
      if (sa.degree_in(v) != a.degree_in(v) || sb.degree_in(v) != b.degree_in(v)) continue;
      if (!gcd(sa, sb).is_constant()) return false;
      decided = true;
      break;
    }
    if (!decided) return false;
  }
  return true;
}

}  // namespace

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Polynomial(1);

  std::set<std::string> vars = a.variables();
  for (const auto& v : b.variables()) vars.insert(v);
  const std::string x = *vars.begin();
  if (vars.size() > 1 && coprime_by_specialization(a, b, vars)) return Polynomial(1);

  Polynomial ca = content_in(a, x), cb = content_in(b, x);
  Polynomial c = gcd(ca, cb);
  Polynomial p = integer_primitive(a.divide_exact(ca));
  Polynomial q = integer_primitive(b.divide_exact(cb));
  if (p.degree_in(x) < q.degree_in(x)) std::swap(p, q);

  Polynomial g;
  while (true) {
    if (q.is_zero()) {
      g = p;
      break;
    }
    if (q.degree_in(x) == 0) {
      g = Polynomial(1);
      break;
    }
    Polynomial r = pseudo_remainder(p, q, x);
    p = q;
    q = primitive_part(r, x);
  }
  return (c * primitive_part(g, x)).monic();
}

// ---------------------------------------------------------------------------

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, const std::set<std::string>& params) : s_(text), params_(params) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) {
    throw Error(ErrorKind::SyntaxError,
                "in expression \"" + std::string(s_) + "\" at column " + std::to_string(pos_ + 1) + ": " + msg);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    Polynomial acc;
    bool negate = eat('-');
    if (!negate) eat('+');
    acc = term();
    if (negate) acc = -acc;
    while (true) {
      if (eat('+')) {
        acc = acc + term();
      } else if (eat('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (eat('*')) acc = acc * factor();
    return acc;
  }

  Polynomial factor() {
    Polynomial base = atom();
    while (eat('^')) {
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected integer exponent");
      base = base.pow(static_cast<unsigned>(std::stoul(std::string(s_.substr(start, pos_ - start)))));
    }
    return base;
  }

  Polynomial atom() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial p = expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.' ||
                                  s_[pos_] == '/' || s_[pos_] == 'e' || s_[pos_] == 'E')) {
        if ((s_[pos_] == 'e' || s_[pos_] == 'E') && pos_ + 1 < s_.size() &&
            (s_[pos_ + 1] == '-' || s_[pos_ + 1] == '+'))
          ++pos_;
        ++pos_;
      }
      auto r = parse_rational(s_.substr(start, pos_ - start));
      if (!r) fail("malformed number");
      return Polynomial(*r);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      if (!params_.count(name)) throw Error(ErrorKind::UndeclaredParameter, "'" + name + "' is not a declared parameter");
      return Polynomial::variable(name);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  const std::set<std::string>& params_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, const std::set<std::string>& parameters) {
  return PolyParser(text, parameters).parse();
}

}  // namespace bnest
