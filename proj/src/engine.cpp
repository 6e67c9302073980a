#include "bnest/engine.hpp"

#include <random>

#include "bnest/error.hpp"
#include "bnest/iid.hpp"

namespace bnest {

namespace {

Coefficient single_value(const Expectation& e) {
  if (!e.is_constant()) throw std::logic_error("expected a constant expectation, got " + e.to_string());
  return e.constant_value();
}

Program translated(const Network& net, const ObservationMap& obs) {
  return with_observations(program_of(net), net, obs);
}

}  // namespace

EstReport est(const Network& net, const ObservationMap& obs) {
  Program p = translated(net, obs);
  Transformer tr(program_domain(net));
  EstReport r;
  r.est = single_value(tr.ert(p, Expectation(0)));
  r.observed = obs;
  r.program_size = p.size();
  return r;
}

Coefficient est_by_quotient(const Network& net, const ObservationMap& obs) {
  Program seq = program_of(net);
  Transformer tr(program_domain(net));
  return single_value(ert_repeat_until(tr, seq, observation_guard(net, obs), Expectation(0)));
}

Coefficient posterior(const Network& net, const Assignment& query, const ObservationMap& obs) {
  std::vector<Guard> atoms;
  for (const auto& [v, x] : query) {
    if (!net.is_node(v)) throw Error(ErrorKind::UnknownVariable, v + " is not a node");
    if (x < 0 || x >= static_cast<long>(net.arity(v)) || x.get_den() != 1)
      throw Error(ErrorKind::ValueOutOfDomain, rational_string(x) + " for " + v);
    atoms.push_back(Guard::eq(program_var(v), x));
  }
  Program p = translated(net, obs);
  Transformer tr(program_domain(net));
  return single_value(tr.wp(p, tr.iverson(Guard::conjunction(atoms))));
}

SoundnessReport soundness_check(const Network& net, const ObservationMap& obs, std::size_t trials,
                                std::uint64_t seed) {
  std::vector<std::string> free;
  for (const auto& v : net.nodes())
    if (!obs.count(v)) free.push_back(v);
  // One translation serves every query: the wp of the loop is linear in the
  // postexpectation, so reuse the transformer and program.
  Program p = translated(net, obs);
  Transformer tr(program_domain(net));
  std::mt19937_64 rng(seed);
  SoundnessReport rep;
  for (std::size_t t = 0; t < trials; ++t) {
    Assignment q;
    std::vector<Guard> atoms;
    for (const auto& v : free) {
      if (rng() % 2 == 0 && free.size() > 1) continue;
      Rational x(static_cast<long>(rng() % net.arity(v)));
      q[v] = x;
      atoms.push_back(Guard::eq(program_var(v), x));
    }
    Coefficient a = single_value(tr.wp(p, tr.iverson(Guard::conjunction(atoms))));
    Coefficient b = net.conditional_prob(q, obs);
    ++rep.checked;
    if (!(a == b)) rep.mismatches.push_back({q, a, b});
  }
  return rep;
}

namespace {

SweepPoint eval_point(const Coefficient& est, const std::string& param, const Rational& x,
                      const std::map<std::string, Rational>& fixed) {
  auto point = fixed;
  point[param] = x;
  SweepPoint sp{x, std::nullopt, ""};
  try {
    sp.value = est.eval_at(point);
  } catch (const Error& e) {
    switch (e.kind()) {
      case ErrorKind::PoleAtPoint: sp.error = "pole"; break;
      case ErrorKind::UndefinedAtPoint: sp.error = "undefined"; break;
      case ErrorKind::NegativeValue: sp.error = "negative"; break;
      default: throw;
    }
  }
  return sp;
}

void check_param(const Coefficient& est, const std::string& param, const std::map<std::string, Rational>& fixed) {
  for (const auto& p : est.parameters())
    if (p != param && !fixed.count(p))
      throw Error(ErrorKind::ParameterMissing, "no value for parameter " + p + " (use --param)");
}

}  // namespace

std::vector<SweepPoint> sweep_serial(const Coefficient& est, const std::string& param,
                                     const std::vector<Rational>& grid,
                                     const std::map<std::string, Rational>& fixed) {
  check_param(est, param, fixed);
  std::vector<SweepPoint> out;
  out.reserve(grid.size());
  for (const auto& x : grid) out.push_back(eval_point(est, param, x, fixed));
  return out;
}

std::vector<SweepPoint> sweep(const Coefficient& est, const std::string& param, const std::vector<Rational>& grid,
                              const std::map<std::string, Rational>& fixed) {
  check_param(est, param, fixed);
  std::vector<SweepPoint> out(grid.size());
  const long n = static_cast<long>(grid.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) out[i] = eval_point(est, param, grid[i], fixed);
  return out;
}

std::string sweep_csv(const std::vector<SweepPoint>& points) {
  std::string out = "param,est\n";
  for (const auto& p : points) {
    out += rational_exact_decimal(p.x) + ",";
    if (!p.value)
      out += "pole";
    else if (p.value->infinite)
      out += "inf";
    else
      out += rational_exact_decimal(p.value->value);
    out += "\n";
  }
  return out;
}

std::vector<Rational> parse_grid(const std::string& spec) {
  auto c1 = spec.find(':');
  auto c2 = c1 == std::string::npos ? std::string::npos : spec.find(':', c1 + 1);
  if (c2 == std::string::npos) throw Error(ErrorKind::InvalidArgument, "grid must be start:end:step, got " + spec);
  auto start = parse_rational(spec.substr(0, c1));
  auto end = parse_rational(spec.substr(c1 + 1, c2 - c1 - 1));
  auto step = parse_rational(spec.substr(c2 + 1));
  if (!start || !end || !step) throw Error(ErrorKind::InvalidArgument, "grid values must be rationals: " + spec);
  if (*step <= 0) throw Error(ErrorKind::InvalidArgument, "grid step must be positive");
  if (*end < *start) throw Error(ErrorKind::InvalidArgument, "grid end lies before its start: " + spec);
  std::vector<Rational> out;
  for (Rational x = *start; x <= *end; x += *step) {
    out.push_back(x);
    if (out.size() > 10000000) throw Error(ErrorKind::InvalidArgument, "grid too large");
  }
  return out;
}

std::string scientific(const Rational& r, int digits) {
  if (r == 0) return "0";
  Rational a = r < 0 ? Rational(-r) : r;
  int exp10 = 0;
  while (a >= 10) { a /= 10; ++exp10; }
  while (a < 1) { a *= 10; --exp10; }
  std::string mant = rational_decimal(a, digits);
  if (mant.rfind("10", 0) == 0) {  // rounding carried into a new digit
    ++exp10;
    mant = "1";
  }
  if (mant.find('.') == std::string::npos && digits > 1) mant += ".";
  while (static_cast<int>(mant.size()) < digits + 1) mant += "0";
  return (r < 0 ? "-" : "") + mant + "e" + std::to_string(exp10);
}

std::string fixed_decimal(const Rational& r, int places) {
  Rational a = r < 0 ? Rational(-r) : r;
  mpz_class scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  Rational scaled = a * Rational(scale);
  mpz_class q = scaled.get_num() / scaled.get_den();
  if ((scaled - Rational(q)) * 2 >= 1) q += 1;
  std::string s = q.get_str();
  if (places > 0) {
    if (static_cast<int>(s.size()) <= places) s.insert(0, static_cast<std::size_t>(places + 1 - s.size()), '0');
    s.insert(s.size() - static_cast<std::size_t>(places), ".");
  }
  return (r < 0 && q != 0 ? "-" : "") + s;
}

}  // namespace bnest
