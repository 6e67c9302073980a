#ifndef BNEST_EXPECTATION_HPP
#define BNEST_EXPECTATION_HPP

#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bnest/coeff.hpp"
#include "bnest/guard.hpp"

namespace bnest {

/// Finite distribution over constant values: sum of p_i * <a_i>.
struct DistExpr {
  std::vector<std::pair<Coefficient, Rational>> outcomes;

  static DistExpr point(const Rational& v) { return {{{Coefficient(1), v}}}; }
  static DistExpr uniform(const std::vector<Rational>& values);
  /// Throws MassNotOne unless the probabilities sum to exactly 1, and
  /// InvalidArgument on repeated values or negative constant probabilities.
  void validate() const;
  std::set<std::string> parameters() const;
};

using Assignment = std::map<std::string, Rational>;

/// Dense table from assignments of the support variables to coefficients.
/// The support is canonical: a variable the table does not depend on is
/// never part of it, so support() coincides with the semantic Vars(f).
class Expectation {
 public:
  struct Axis {
    std::string name;
    VarDomain::Values values;
  };

  Expectation() : cells_{Coefficient(0)} {}
  Expectation(const Coefficient& c) : cells_{c} {}  // NOLINT(google-explicit-constructor)
  Expectation(int c) : cells_{Coefficient(c)} {}    // NOLINT(google-explicit-constructor)
  static Expectation constant(const Coefficient& c) { return Expectation(c); }
  /// Tabulates `fn` over the cross product of the given variables.
  static Expectation tabulate(const VarDomain& domain, std::vector<std::string> vars,
                              const std::function<Coefficient(const Assignment&)>& fn);
  /// The 0/1 indicator of g.
  static Expectation iverson(const Guard& g, const VarDomain& domain);

  std::vector<std::string> support() const;
  const std::vector<Axis>& axes() const { return axes_; }
  const std::vector<Coefficient>& cells() const { return cells_; }
  bool is_constant() const { return axes_.empty(); }
  /// Requires is_constant().
  const Coefficient& constant_value() const;
  bool has_parameters() const;
  std::set<std::string> parameters() const;

  Expectation operator+(const Expectation& o) const;
  Expectation operator*(const Expectation& o) const;
  /// Pointwise subtraction for symbolic intermediate values such as 1 - wp.
  Expectation operator-(const Expectation& o) const;
  Expectation scale(const Coefficient& c) const;
  Expectation divide(const Expectation& den) const;  // pointwise guarded_div
  Expectation map(const std::function<Coefficient(const Coefficient&)>& fn) const;
  Expectation substitute_parameters(const std::map<std::string, Rational>& point) const;

  /// f[x/v].
  Expectation substitute(const std::string& x, const Rational& v) const;
  /// sum_i p_i * f[x/a_i].
  Expectation expected_over_dist(const std::string& x, const DistExpr& mu) const;

  /// Throws IncompleteState if a support variable is missing from sigma.
  const Coefficient& point_eval(const Assignment& sigma) const;

  /// Pointwise <= on parameter-free expectations.
  bool leq(const Expectation& o) const;

  /// "[x=0 ∧ y=1]·1/2 + ..." in lexicographic assignment order; zero cells omitted.
  std::string to_string() const;

  bool operator==(const Expectation& o) const;

  /// Upper bound on table cells (BNEST_MAX_CELLS, default 2^26).
  static std::size_t max_cells();

 private:
  Expectation(std::vector<Axis> axes, std::vector<Coefficient> cells);
  static Expectation combine(const Expectation& a, const Expectation& b,
                             const std::function<Coefficient(const Coefficient&, const Coefficient&)>& op);
  void minimize();

  std::vector<Axis> axes_;  // sorted by name
  std::vector<Coefficient> cells_;  // row-major, first axis slowest
};

}  // namespace bnest

#endif
