#include "bnest/network.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

#include "bnest/error.hpp"

namespace bnest {

namespace {

std::string join(const std::vector<std::string>& xs, const char* sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

}  // namespace

void Network::add_variable(const std::string& name, std::vector<std::string> labels, bool is_input) {
  if (vars_.count(name)) throw Error(ErrorKind::InvalidNetwork, "variable " + name + " declared twice");
  if (labels.empty()) throw Error(ErrorKind::InvalidNetwork, "variable " + name + " has no values");
  std::set<std::string> seen(labels.begin(), labels.end());
  if (seen.size() != labels.size()) throw Error(ErrorKind::InvalidNetwork, "variable " + name + " repeats a value");
  vars_[name] = Variable{name, std::move(labels)};
  (is_input ? inputs_ : nodes_).push_back(name);
}

bool Network::is_node(const std::string& v) const {
  return std::find(nodes_.begin(), nodes_.end(), v) != nodes_.end();
}

bool Network::is_input(const std::string& v) const {
  return std::find(inputs_.begin(), inputs_.end(), v) != inputs_.end();
}

void Network::set_cpt(const std::string& node, std::vector<std::string> parents,
                      std::vector<std::vector<Coefficient>> rows) {
  if (!is_node(node)) throw Error(ErrorKind::InvalidNetwork, "probability for undeclared node " + node);
  if (cpt_.count(node)) throw Error(ErrorKind::InvalidNetwork, "two probability blocks for " + node);
  std::size_t combos = 1;
  for (const auto& p : parents) {
    if (!vars_.count(p)) throw Error(ErrorKind::InvalidNetwork, node + " depends on undeclared variable " + p);
    if (p == node) throw Error(ErrorKind::CycleDetected, node + " depends on itself");
    combos *= arity(p);
  }
  if (rows.size() != combos)
    throw Error(ErrorKind::MissingCptRow, node + " has " + std::to_string(rows.size()) + " rows, expected " +
                                              std::to_string(combos));
  for (const auto& p : parents)
    if (is_node(p)) edges_.insert({p, node});
  dep_[node] = std::move(parents);
  cpt_[node] = std::move(rows);
}

const std::vector<std::string>& Network::dep(const std::string& node) const {
  auto it = dep_.find(node);
  if (it == dep_.end()) throw Error(ErrorKind::InvalidNetwork, "no probability block for " + node);
  return it->second;
}

const std::vector<std::string>& Network::labels(const std::string& var) const {
  auto it = vars_.find(var);
  if (it == vars_.end()) throw Error(ErrorKind::UnknownVariable, var);
  return it->second.labels;
}

const std::vector<std::vector<Coefficient>>& Network::cpt_rows(const std::string& node) const {
  auto it = cpt_.find(node);
  if (it == cpt_.end()) throw Error(ErrorKind::InvalidNetwork, "no probability block for " + node);
  return it->second;
}

std::size_t Network::row_index(const std::string& node, const std::vector<Rational>& parent_values) const {
  const auto& d = dep(node);
  if (parent_values.size() != d.size())
    throw Error(ErrorKind::ArityMismatch, node + " has " + std::to_string(d.size()) + " parents, got " +
                                              std::to_string(parent_values.size()) + " values");
  std::size_t idx = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const Rational& v = parent_values[i];
    std::size_t n = arity(d[i]);
    if (v < 0 || v >= static_cast<long>(n) || v.get_den() != 1)
      throw Error(ErrorKind::ValueOutOfDomain, rational_string(v) + " for " + d[i]);
    idx = idx * n + v.get_num().get_ui();
  }
  return idx;
}

const std::vector<Coefficient>& Network::cpt_row(const std::string& node,
                                                 const std::vector<Rational>& parent_values) const {
  return cpt_rows(node).at(row_index(node, parent_values));
}

void Network::validate() const {
  for (const auto& v : nodes_) {
    if (!cpt_.count(v)) throw Error(ErrorKind::MissingCptRow, "no probability block for " + v);
    for (const auto& p : dep(v))
      if (!is_input(p) && !edges_.count({p, v}))
        throw Error(ErrorKind::InvalidNetwork, "dependency " + p + " of " + v + " is neither an input nor a parent");
    const auto& rows = cpt_rows(v);
    const std::size_t n = arity(v);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != n)
        throw Error(ErrorKind::ArityMismatch, "row " + std::to_string(r) + " of " + v + " has " +
                                                  std::to_string(rows[r].size()) + " entries, expected " +
                                                  std::to_string(n));
      Coefficient sum(0);
      for (const auto& c : rows[r]) {
        if (c.is_infinite() || (c.is_rational() && c.rational() < 0))
          throw Error(ErrorKind::InvalidNetwork, "row " + std::to_string(r) + " of " + v +
                                                     " has invalid probability " + c.to_string());
        sum += c;
      }
      if (!sum.is_one()) {
        std::string row;
        for (const auto& c : rows[r]) row += (row.empty() ? "" : ", ") + c.to_string();
        throw Error(ErrorKind::RowMassNotOne, v + " row (" + row + ") sums to " + sum.to_string());
      }
    }
  }
  for (const auto& [from, to] : edges_)
    if (!is_node(from) || !is_node(to)) throw Error(ErrorKind::InvalidNetwork, "edge " + from + " -> " + to);

  // Kahn's algorithm; leftover nodes lie on a cycle.
  std::map<std::string, int> indeg;
  for (const auto& v : nodes_) indeg[v] = 0;
  for (const auto& e : edges_) ++indeg[e.second];
  std::vector<std::string> ready;
  for (const auto& [v, d] : indeg)
    if (d == 0) ready.push_back(v);
  std::size_t seen = 0;
  while (!ready.empty()) {
    std::string v = ready.back();
    ready.pop_back();
    ++seen;
    for (const auto& e : edges_)
      if (e.first == v && --indeg[e.second] == 0) ready.push_back(e.second);
  }
  if (seen != nodes_.size()) {
    std::vector<std::string> cyc;
    for (const auto& [v, d] : indeg)
      if (d > 0) cyc.push_back(v);
    throw Error(ErrorKind::CycleDetected, "cycle through " + join(cyc));
  }
}

VarDomain Network::domain() const {
  VarDomain d;
  for (const auto& [name, var] : vars_) {
    std::vector<Rational> vals;
    for (std::size_t i = 0; i < var.labels.size(); ++i) vals.emplace_back(static_cast<long>(i));
    d.declare(name, std::move(vals));
  }
  return d;
}

Rational Network::value_of(const std::string& var, const std::string& label) const {
  const auto& ls = labels(var);
  auto it = std::find(ls.begin(), ls.end(), label);
  if (it != ls.end()) return Rational(static_cast<long>(it - ls.begin()));
  if (auto r = parse_rational(label); r && r->get_den() == 1 && *r >= 0 && *r < static_cast<long>(ls.size()))
    return *r;
  throw Error(ErrorKind::ValueOutOfDomain, "\"" + label + "\" is not a value of " + var);
}

std::vector<std::string> Network::roots() const {
  std::vector<std::string> out;
  for (const auto& v : nodes_) {
    bool has_parent = false;
    for (const auto& e : edges_)
      if (e.second == v) has_parent = true;
    if (!has_parent) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Network Network::peel(const std::set<std::string>& s) const {
  for (const auto& v : s)
    if (!is_node(v)) throw Error(ErrorKind::InvalidArgument, "cannot peel " + v + ": not a node");
  Network out = *this;
  out.nodes_.clear();
  for (const auto& v : nodes_) {
    if (s.count(v))
      out.inputs_.push_back(v);
    else
      out.nodes_.push_back(v);
  }
  out.edges_.clear();
  for (const auto& e : edges_)
    if (!s.count(e.first) && !s.count(e.second)) out.edges_.insert(e);
  return out;
}

std::vector<std::string> Network::parents(const std::string& node) const {
  std::vector<std::string> out;
  for (const auto& e : edges_)
    if (e.second == node) out.push_back(e.first);
  return out;
}

std::vector<std::string> Network::children(const std::string& node) const {
  std::vector<std::string> out;
  for (const auto& e : edges_)
    if (e.first == node) out.push_back(e.second);
  return out;
}

Rational Network::markov_blanket_avg() const {
  if (nodes_.empty()) return 0;
  long total = 0;
  for (const auto& v : nodes_) {
    std::set<std::string> mb;
    for (const auto& p : parents(v)) mb.insert(p);
    for (const auto& c : children(v)) {
      mb.insert(c);
      for (const auto& p : parents(c)) mb.insert(p);
    }
    mb.erase(v);
    total += static_cast<long>(mb.size());
  }
  Rational avg(total, static_cast<long>(nodes_.size()));
  avg.canonicalize();
  return avg;
}

Coefficient Network::joint_prob(const Assignment& full) const {
  Coefficient p(1);
  for (const auto& v : inputs_)
    if (!full.count(v)) throw Error(ErrorKind::IncompleteAssignment, "no value for input " + v);
  for (const auto& v : nodes_) {
    auto it = full.find(v);
    if (it == full.end()) throw Error(ErrorKind::IncompleteAssignment, "no value for " + v);
    std::vector<Rational> pv;
    for (const auto& u : dep(v)) {
      auto jt = full.find(u);
      if (jt == full.end()) throw Error(ErrorKind::IncompleteAssignment, "no value for " + u);
      pv.push_back(jt->second);
    }
    const auto& row = cpt_row(v, pv);
    const Rational& x = it->second;
    if (x < 0 || x >= static_cast<long>(row.size()) || x.get_den() != 1)
      throw Error(ErrorKind::ValueOutOfDomain, rational_string(x) + " for " + v);
    p *= row[x.get_num().get_ui()];
    if (p.is_zero()) return p;
  }
  return p;
}

Coefficient Network::marginal(const Assignment& partial) const {
  for (const auto& [v, x] : partial) {
    if (!vars_.count(v)) throw Error(ErrorKind::UnknownVariable, v);
    if (x < 0 || x >= static_cast<long>(arity(v)) || x.get_den() != 1)
      throw Error(ErrorKind::ValueOutOfDomain, rational_string(x) + " for " + v);
  }
  for (const auto& v : inputs_)
    if (!partial.count(v)) throw Error(ErrorKind::IncompleteAssignment, "no value for input " + v);

  // Enumerate nodes in topological order so every CPT factor can be applied
  // as soon as its node is fixed, pruning zero-probability prefixes.
  std::vector<std::string> order;
  {
    std::set<std::string> done(inputs_.begin(), inputs_.end());
    while (order.size() < nodes_.size()) {
      bool progress = false;
      for (const auto& v : nodes_) {
        if (done.count(v)) continue;
        bool ok = true;
        for (const auto& u : dep(v))
          if (!done.count(u)) ok = false;
        if (ok) {
          order.push_back(v);
          done.insert(v);
          progress = true;
        }
      }
      if (!progress) throw Error(ErrorKind::CycleDetected, "network is not acyclic");
    }
  }
  Assignment cur = partial;
  std::function<Coefficient(std::size_t)> rec = [&](std::size_t i) -> Coefficient {
    if (i == order.size()) return Coefficient(1);
    const std::string& v = order[i];
    std::vector<Rational> pv;
    for (const auto& u : dep(v)) pv.push_back(cur.at(u));
    const auto& row = cpt_row(v, pv);
    auto fixed = partial.find(v);
    if (fixed != partial.end()) {
      const Coefficient& p = row[fixed->second.get_num().get_ui()];
      if (p.is_zero()) return Coefficient(0);
      return p * rec(i + 1);
    }
    Coefficient sum(0);
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (row[k].is_zero()) continue;
      cur[v] = Rational(static_cast<long>(k));
      sum += row[k] * rec(i + 1);
    }
    cur.erase(v);
    return sum;
  };
  return rec(0);
}

Coefficient Network::conditional_prob(const Assignment& query, const ObservationMap& obs) const {
  Assignment both = obs;
  for (const auto& [v, x] : query) {
    auto it = obs.find(v);
    if (it != obs.end() && it->second != x)
      throw Error(ErrorKind::InconsistentQuery, "query and observation disagree on " + v);
    both[v] = x;
  }
  return guarded_div(marginal(both), marginal(obs));
}

Network Network::substitute_parameters(const std::map<std::string, Rational>& point) const {
  Network out = *this;
  for (auto& [v, rows] : out.cpt_)
    for (auto& row : rows)
      for (auto& c : row) c = c.substitute(point);
  std::vector<std::string> left;
  for (const auto& p : parameters_)
    if (!point.count(p)) left.push_back(p);
  out.parameters_ = left;
  return out;
}

bool Network::has_parameters() const {
  for (const auto& [v, rows] : cpt_)
    for (const auto& row : rows)
      for (const auto& c : row)
        if (c.is_symbolic()) return true;
  return false;
}

void Network::check_observations(const ObservationMap& obs) const {
  for (const auto& [v, x] : obs) {
    if (!is_node(v)) throw Error(ErrorKind::InvalidObservation, v + " is not a node");
    if (x < 0 || x >= static_cast<long>(arity(v)) || x.get_den() != 1)
      throw Error(ErrorKind::InvalidObservation, rational_string(x) + " is not a value of " + v);
  }
}

Network load_network_file(const std::string& path, const ParseOptions& opts) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();
  auto ends_with = [&](const char* suf) {
    std::string s(suf);
    return path.size() >= s.size() && path.compare(path.size() - s.size(), s.size(), s) == 0;
  };
  if (ends_with(".json")) return load_param_network(text, opts);
  return parse_bif(text, opts);
}

}  // namespace bnest
