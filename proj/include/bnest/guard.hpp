#ifndef BNEST_GUARD_HPP
#define BNEST_GUARD_HPP

#include <functional>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "bnest/polynomial.hpp"

namespace bnest {

/// Finite domains of program variables. Value order is declaration order.
class VarDomain {
 public:
  using Values = std::shared_ptr<const std::vector<Rational>>;

  void declare(const std::string& name, std::vector<Rational> values);
  bool contains(const std::string& name) const { return vars_.count(name) != 0; }
  const Values& values(const std::string& name) const;
  std::size_t index_of(const std::string& name, const Rational& value) const;
  const std::map<std::string, Values>& all() const { return vars_; }

 private:
  std::map<std::string, Values> vars_;
};

/// Boolean guard over (variable = value) atoms, or an extensional set of
/// satisfying tuples for predicates that are not conjunctions of equalities.
class Guard {
 public:
  static Guard truth();
  static Guard falsity();
  static Guard eq(const std::string& var, const Rational& value);
  /// Satisfying tuples over `vars`; `label` is used when printing.
  static Guard extensional(std::vector<std::string> vars, std::set<std::vector<Rational>> tuples,
                           std::string label);
  /// Tabulates `pred` over the cross product of the domains of `vars`.
  static Guard from_predicate(std::vector<std::string> vars, const VarDomain& domain,
                              const std::function<bool(std::span<const Rational>)>& pred, std::string label);
  static Guard conjunction(const std::vector<Guard>& parts);

  Guard operator!() const;
  Guard operator&&(const Guard& other) const;
  Guard operator||(const Guard& other) const;

  bool is_true() const;
  bool is_false() const;
  std::set<std::string> variables() const;
  /// `value_of` must return the current value of every mentioned variable.
  bool holds(const std::function<const Rational&(const std::string&)>& value_of) const;
  std::string to_string() const;

  /// Throws UnknownVariable / ValueOutOfDomain when the guard mentions
  /// something outside `domain`.
  void check_against(const VarDomain& domain) const;

  struct Node;
  const Node& node() const { return *node_; }

 private:
  explicit Guard(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct Guard::Node {
  enum class Kind { Const, Atom, Not, And, Or, Extensional };
  Kind kind = Kind::Const;
  bool constant = true;
  std::string var;
  Rational value;
  std::vector<Guard> children;
  std::vector<std::string> ext_vars;
  std::set<std::vector<Rational>> ext_tuples;
  std::string label;
};

}  // namespace bnest

#endif
