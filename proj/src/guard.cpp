#include "bnest/guard.hpp"

#include <algorithm>

#include "bnest/error.hpp"

namespace bnest {

void VarDomain::declare(const std::string& name, std::vector<Rational> values) {
  if (values.empty()) throw Error(ErrorKind::InvalidArgument, "domain of '" + name + "' is empty");
  for (std::size_t i = 0; i < values.size(); ++i)
    for (std::size_t j = i + 1; j < values.size(); ++j)
      if (values[i] == values[j])
        throw Error(ErrorKind::InvalidArgument, "domain of '" + name + "' repeats " + rational_string(values[i]));
  vars_[name] = std::make_shared<const std::vector<Rational>>(std::move(values));
}

const VarDomain::Values& VarDomain::values(const std::string& name) const {
  auto it = vars_.find(name);
  if (it == vars_.end()) throw Error(ErrorKind::UnknownVariable, "'" + name + "' has no declared domain");
  return it->second;
}

std::size_t VarDomain::index_of(const std::string& name, const Rational& value) const {
  const auto& vs = *values(name);
  auto it = std::find(vs.begin(), vs.end(), value);
  if (it == vs.end())
    throw Error(ErrorKind::ValueOutOfDomain, rational_string(value) + " is not in the domain of '" + name + "'");
  return static_cast<std::size_t>(it - vs.begin());
}

// ---------------------------------------------------------------------------

namespace {

std::shared_ptr<Guard::Node> make(Guard::Node::Kind k) {
  auto n = std::make_shared<Guard::Node>();
  n->kind = k;
  return n;
}

}  // namespace

Guard Guard::truth() {
  static const Guard t([] {
    auto n = make(Node::Kind::Const);
    n->constant = true;
    return n;
  }());
  return t;
}

Guard Guard::falsity() {
  static const Guard f([] {
    auto n = make(Node::Kind::Const);
    n->constant = false;
    return n;
  }());
  return f;
}

Guard Guard::eq(const std::string& var, const Rational& value) {
  auto n = make(Node::Kind::Atom);
  n->var = var;
  n->value = value;
  return Guard(n);
}

Guard Guard::extensional(std::vector<std::string> vars, std::set<std::vector<Rational>> tuples, std::string label) {
  for (const auto& t : tuples)
    if (t.size() != vars.size()) throw Error(ErrorKind::InvalidArgument, "extensional guard tuple has wrong arity");
  auto n = make(Node::Kind::Extensional);
  n->ext_vars = std::move(vars);
  n->ext_tuples = std::move(tuples);
  n->label = std::move(label);
  return Guard(n);
}

Guard Guard::from_predicate(std::vector<std::string> vars, const VarDomain& domain,
                            const std::function<bool(std::span<const Rational>)>& pred, std::string label) {
  std::vector<const std::vector<Rational>*> doms;
  for (const auto& v : vars) doms.push_back(domain.values(v).get());
  std::set<std::vector<Rational>> tuples;
  std::vector<std::size_t> idx(vars.size(), 0);
  std::vector<Rational> cur(vars.size());
  while (true) {
    for (std::size_t i = 0; i < vars.size(); ++i) cur[i] = (*doms[i])[idx[i]];
    if (pred(cur)) tuples.insert(cur);
    std::size_t k = vars.size();
    while (k > 0) {
      --k;
      if (++idx[k] < doms[k]->size()) break;
      idx[k] = 0;
      if (k == 0) return extensional(std::move(vars), std::move(tuples), std::move(label));
    }
    if (vars.empty()) return extensional(std::move(vars), std::move(tuples), std::move(label));
  }
}

Guard Guard::conjunction(const std::vector<Guard>& parts) {
  if (parts.empty()) return truth();
  if (parts.size() == 1) return parts.front();
  auto n = make(Node::Kind::And);
  n->children = parts;
  return Guard(n);
}

Guard Guard::operator!() const {
  if (node_->kind == Node::Kind::Const) return node_->constant ? falsity() : truth();
  if (node_->kind == Node::Kind::Not) return node_->children.front();
  auto n = make(Node::Kind::Not);
  n->children = {*this};
  return Guard(n);
}

Guard Guard::operator&&(const Guard& other) const {
  if (is_false() || other.is_false()) return falsity();
  if (is_true()) return other;
  if (other.is_true()) return *this;
  auto n = make(Node::Kind::And);
  for (const Guard* g : {this, &other}) {
    if (g->node_->kind == Node::Kind::And) {
      n->children.insert(n->children.end(), g->node_->children.begin(), g->node_->children.end());
    } else {
      n->children.push_back(*g);
    }
  }
  return Guard(n);
}

Guard Guard::operator||(const Guard& other) const {
  if (is_true() || other.is_true()) return truth();
  if (is_false()) return other;
  if (other.is_false()) return *this;
  auto n = make(Node::Kind::Or);
  for (const Guard* g : {this, &other}) {
    if (g->node_->kind == Node::Kind::Or) {
      n->children.insert(n->children.end(), g->node_->children.begin(), g->node_->children.end());
    } else {
      n->children.push_back(*g);
    }
  }
  return Guard(n);
}

bool Guard::is_true() const { return node_->kind == Node::Kind::Const && node_->constant; }
bool Guard::is_false() const { return node_->kind == Node::Kind::Const && !node_->constant; }

std::set<std::string> Guard::variables() const {
  std::set<std::string> out;
  switch (node_->kind) {
    case Node::Kind::Const: break;
    case Node::Kind::Atom: out.insert(node_->var); break;
    case Node::Kind::Extensional: out.insert(node_->ext_vars.begin(), node_->ext_vars.end()); break;
    default:
      for (const auto& c : node_->children) {
        auto vs = c.variables();
        out.insert(vs.begin(), vs.end());
      }
  }
  return out;
}

bool Guard::holds(const std::function<const Rational&(const std::string&)>& value_of) const {
  switch (node_->kind) {
    case Node::Kind::Const: return node_->constant;
    case Node::Kind::Atom: return value_of(node_->var) == node_->value;
    case Node::Kind::Not: return !node_->children.front().holds(value_of);
    case Node::Kind::And:
      return std::all_of(node_->children.begin(), node_->children.end(),
                         [&](const Guard& g) { return g.holds(value_of); });
    case Node::Kind::Or:
      return std::any_of(node_->children.begin(), node_->children.end(),
                         [&](const Guard& g) { return g.holds(value_of); });
    case Node::Kind::Extensional: {
      std::vector<Rational> t;
      t.reserve(node_->ext_vars.size());
      for (const auto& v : node_->ext_vars) t.push_back(value_of(v));
      return node_->ext_tuples.count(t) != 0;
    }
  }
  return false;
}

std::string Guard::to_string() const {
  auto paren = [](const Guard& g) {
    auto k = g.node().kind;
    std::string s = g.to_string();
    return (k == Node::Kind::And || k == Node::Kind::Or) ? "(" + s + ")" : s;
  };
  switch (node_->kind) {
    case Node::Kind::Const: return node_->constant ? "true" : "false";
    case Node::Kind::Atom: return node_->var + " = " + rational_string(node_->value);
    case Node::Kind::Not: return "¬" + (node_->children.front().node().kind == Node::Kind::Atom
                                            ? "(" + node_->children.front().to_string() + ")"
                                            : paren(node_->children.front()));
    case Node::Kind::And:
    case Node::Kind::Or: {
      std::string sep = node_->kind == Node::Kind::And ? " ∧ " : " ∨ ";
      std::string s;
      for (std::size_t i = 0; i < node_->children.size(); ++i) {
        if (i) s += sep;
        s += paren(node_->children[i]);
      }
      return s;
    }
    case Node::Kind::Extensional: return node_->label.empty() ? "<extensional>" : node_->label;
  }
  return "?";
}

void Guard::check_against(const VarDomain& domain) const {
  switch (node_->kind) {
    case Node::Kind::Const: return;
    case Node::Kind::Atom: domain.index_of(node_->var, node_->value); return;
    case Node::Kind::Extensional:
      for (const auto& t : node_->ext_tuples)
        for (std::size_t i = 0; i < t.size(); ++i) domain.index_of(node_->ext_vars[i], t[i]);
      for (const auto& v : node_->ext_vars) domain.values(v);
      return;
    default:
      for (const auto& c : node_->children) c.check_against(domain);
  }
}

}  // namespace bnest
