#include "bnest/transformer.hpp"

#include "bnest/error.hpp"
#include "bnest/iid.hpp"

namespace bnest {

namespace {

template <typename Fn>
Expectation as_supported_loop(Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    switch (e.kind()) {
      case ErrorKind::NotFIID:
      case ErrorKind::BodyMayDiverge:
      case ErrorKind::VaryingIterationTime: throw Error(ErrorKind::UnsupportedLoop, e.what());
      default: throw;
    }
  }
}

}  // namespace

Expectation Transformer::wp(const Program& c, const Expectation& f) const {
  using K = Program::Kind;
  switch (c.kind()) {
    case K::Skip: return f;
    case K::Diverge: return Expectation(0);
    case K::Assign:
      for (const auto& o : c.dist().outcomes) domain_.index_of(c.var(), o.second);
      return f.expected_over_dist(c.var(), c.dist());
    case K::Seq: return wp(c.first(), wp(c.second(), f));
    case K::If: {
      Expectation g = iverson(c.guard());
      Expectation ng = iverson(!c.guard());
      return g * wp(c.first(), f) + ng * wp(c.second(), f);
    }
    case K::While: return as_supported_loop([&] { return wp_while_iid(*this, c.guard(), c.body(), f); });
    case K::RepeatUntil: {
      Expectation after = as_supported_loop([&] { return wp_while_iid(*this, !c.guard(), c.body(), f); });
      return wp(c.body(), after);
    }
  }
  throw std::logic_error("unreachable");
}

Expectation Transformer::ert(const Program& c, const Expectation& f) const {
  using K = Program::Kind;
  switch (c.kind()) {
    case K::Skip: return Expectation(1) + f;
    case K::Diverge: return Expectation(Coefficient::infinity());
    case K::Assign:
      for (const auto& o : c.dist().outcomes) domain_.index_of(c.var(), o.second);
      return Expectation(1) + f.expected_over_dist(c.var(), c.dist());
    case K::Seq: return ert(c.first(), ert(c.second(), f));
    case K::If: {
      Expectation g = iverson(c.guard());
      Expectation ng = iverson(!c.guard());
      return Expectation(1) + g * ert(c.first(), f) + ng * ert(c.second(), f);
    }
    case K::While: return as_supported_loop([&] { return ert_while_iid(*this, c.guard(), c.body(), f); });
    case K::RepeatUntil: {
      Expectation after = as_supported_loop([&] { return ert_while_iid(*this, !c.guard(), c.body(), f); });
      return ert(c.body(), after);
    }
  }
  throw std::logic_error("unreachable");
}

Expectation Transformer::orbit_wp(const Guard& phi, const Program& body, const Expectation& f, unsigned n) const {
  Expectation g = iverson(phi);
  Expectation exit = iverson(!phi) * f;
  Expectation x(0);
  for (unsigned i = 0; i < n; ++i) x = exit + g * wp(body, x);
  return x;
}

Expectation Transformer::orbit_ert(const Guard& phi, const Program& body, unsigned n) const {
  Expectation g = iverson(phi);
  Expectation x(0);
  for (unsigned i = 0; i < n; ++i) x = Expectation(1) + g * ert(body, x);
  return x;
}

}  // namespace bnest
