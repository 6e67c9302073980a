#ifndef BNEST_TRANSFORMER_HPP
#define BNEST_TRANSFORMER_HPP

#include "bnest/expectation.hpp"
#include "bnest/program.hpp"

namespace bnest {

/// Weakest-preexpectation and expected-runtime transformers over a fixed
/// variable domain. Loops are handled only through the closed-form i.i.d.
/// rules; a loop that fails their premises raises UnsupportedLoop.
///
/// Runtime model: skip, assignment and every guard evaluation cost 1.
class Transformer {
 public:
  explicit Transformer(VarDomain domain) : domain_(std::move(domain)) {}

  const VarDomain& domain() const { return domain_; }
  Expectation iverson(const Guard& g) const { return Expectation::iverson(g, domain_); }

  Expectation wp(const Program& c, const Expectation& f) const;
  Expectation ert(const Program& c, const Expectation& f) const;

  /// n-th iterate from 0 of X -> [¬φ]·f + [φ]·wp(body, X).
  Expectation orbit_wp(const Guard& phi, const Program& body, const Expectation& f, unsigned n) const;
  /// n-th iterate from 0 of X -> 1 + [φ]·ert(body, X).
  Expectation orbit_ert(const Guard& phi, const Program& body, unsigned n) const;

 private:
  VarDomain domain_;
};

}  // namespace bnest

#endif
