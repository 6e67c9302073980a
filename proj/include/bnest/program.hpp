#ifndef BNEST_PROGRAM_HPP
#define BNEST_PROGRAM_HPP

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "bnest/expectation.hpp"
#include "bnest/guard.hpp"

namespace bnest {

/// Immutable pGCL syntax tree.
class Program {
 public:
  enum class Kind { Skip, Diverge, Assign, Seq, If, While, RepeatUntil };

  static Program skip();
  static Program diverge();
  static Program assign(std::string var, DistExpr dist);
  static Program seq(Program first, Program second);
  /// Right-nested sequence; an empty list yields skip.
  static Program seq(const std::vector<Program>& parts);
  static Program ite(Guard guard, Program then_branch, Program else_branch);
  static Program loop(Guard guard, Program body);
  static Program repeat_until(Program body, Guard guard);

  Kind kind() const { return node_->kind; }
  const std::string& var() const { return node_->var; }
  const DistExpr& dist() const { return node_->dist; }
  const Guard& guard() const { return node_->guard; }
  /// Seq: first/second. If: then/else. While/RepeatUntil: body is first().
  const Program& first() const { return node_->children.at(0); }
  const Program& second() const { return node_->children.at(1); }
  const Program& body() const { return first(); }

  /// Variables on the left-hand side of some assignment.
  std::set<std::string> modified_vars() const;
  /// Variables read by some guard.
  std::set<std::string> guard_vars() const;
  bool is_loop_free() const;
  bool contains_diverge() const;
  /// Number of syntax-tree nodes.
  std::size_t size() const;

  /// Checks assignment values and guard atoms against `domain` and validates
  /// every distribution.
  void validate(const VarDomain& domain) const;

  /// Concrete syntax, e.g. "x := 1/2·⟨0⟩ + 1/2·⟨1⟩" and "repeat { ... } until (φ)".
  std::string to_string() const;

 private:
  struct Node {
    Kind kind = Kind::Skip;
    std::string var;
    DistExpr dist;
    Guard guard = Guard::truth();
    std::vector<Program> children;
  };
  explicit Program(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  void print(std::string& out, int indent) const;

  std::shared_ptr<const Node> node_;
};

std::string dist_string(const DistExpr& d);

}  // namespace bnest

#endif
