#ifndef BNEST_NETWORK_HPP
#define BNEST_NETWORK_HPP

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bnest/coeff.hpp"
#include "bnest/expectation.hpp"
#include "bnest/guard.hpp"

namespace bnest {

/// Partial map from observed nodes to values.
using ObservationMap = std::map<std::string, Rational>;

/// Extended Bayesian network (V, I, E, Vals, dep, cpt). Every variable
/// takes the values 0..n-1; the original value labels are kept for I/O.
class Network {
 public:
  struct Variable {
    std::string name;
    std::vector<std::string> labels;
  };

  /// Declares a node or input. Declaration order is preserved.
  void add_variable(const std::string& name, std::vector<std::string> labels, bool is_input = false);
  /// Sets dep(node) and adds edges from every parent that is a node.
  /// `rows` is indexed by the parent value combination in row-major order
  /// (first parent slowest); each row lists probabilities per node value.
  void set_cpt(const std::string& node, std::vector<std::string> parents, std::vector<std::vector<Coefficient>> rows);
  void set_parameters(std::vector<std::string> params) { parameters_ = std::move(params); }

  /// Structural and numeric checks: acyclicity, dep consistency, complete
  /// CPTs, exact unit row mass.
  void validate() const;

  const std::vector<std::string>& nodes() const { return nodes_; }
  const std::vector<std::string>& inputs() const { return inputs_; }
  const std::set<std::pair<std::string, std::string>>& edges() const { return edges_; }
  const std::vector<std::string>& parameters() const { return parameters_; }
  bool is_node(const std::string& v) const;
  bool is_input(const std::string& v) const;
  const std::vector<std::string>& dep(const std::string& node) const;
  const std::vector<std::string>& labels(const std::string& var) const;
  std::size_t arity(const std::string& var) const { return labels(var).size(); }
  /// Distribution of `node` given parent values (one per dep entry).
  const std::vector<Coefficient>& cpt_row(const std::string& node, const std::vector<Rational>& parent_values) const;
  const std::vector<std::vector<Coefficient>>& cpt_rows(const std::string& node) const;
  /// Program variable domains for nodes and inputs.
  VarDomain domain() const;
  /// Looks a value up by label, falling back to a numeric index.
  Rational value_of(const std::string& var, const std::string& label) const;

  /// Nodes without an incoming edge from another node, in name order.
  std::vector<std::string> roots() const;
  /// Turns the nodes in s into inputs and drops the edges touching them.
  Network peel(const std::set<std::string>& s) const;

  /// Product of CPT entries; `full` must assign every node (and input).
  Coefficient joint_prob(const Assignment& full) const;
  /// Sum of joint probabilities over completions of `partial`.
  Coefficient marginal(const Assignment& partial) const;
  /// P(query | obs) by enumeration; 0/0 = 0.
  Coefficient conditional_prob(const Assignment& query, const ObservationMap& obs) const;

  std::vector<std::string> parents(const std::string& node) const;
  std::vector<std::string> children(const std::string& node) const;
  Rational markov_blanket_avg() const;

  /// Replaces parameters by values; the result must be parameter-free only
  /// if `point` covers every parameter.
  Network substitute_parameters(const std::map<std::string, Rational>& point) const;
  bool has_parameters() const;

  /// Checks that `obs` names nodes and in-domain values.
  void check_observations(const ObservationMap& obs) const;

 private:
  std::size_t row_index(const std::string& node, const std::vector<Rational>& parent_values) const;

  std::vector<std::string> nodes_;
  std::vector<std::string> inputs_;
  std::map<std::string, Variable> vars_;
  std::set<std::pair<std::string, std::string>> edges_;
  std::map<std::string, std::vector<std::string>> dep_;
  std::map<std::string, std::vector<std::vector<Coefficient>>> cpt_;
  std::vector<std::string> parameters_;
};

struct ParseOptions {
  /// Rescale rows whose mass is within 1e-6 of 1.
  bool normalize = false;
};

/// Parses the supported BIF subset and validates the result.
Network parse_bif(std::string_view text, const ParseOptions& opts = {});
std::string render_bif(const Network& net);

/// Parses the JSON parameterized-network format:
///   {"parameters": [...], "variables": [{"name", "values"}],
///    "cpt": [{"node", "parents", "rows": [{"given", "dist"}]}]}
Network load_param_network(std::string_view text, const ParseOptions& opts = {});
std::string render_param_network(const Network& net);

/// Dispatches on extension: ".bif" or ".json".
Network load_network_file(const std::string& path, const ParseOptions& opts = {});

}  // namespace bnest

#endif
