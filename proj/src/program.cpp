#include "bnest/program.hpp"

#include "bnest/error.hpp"

namespace bnest {

Program Program::skip() {
  static const Program p(std::make_shared<const Node>(Node{Kind::Skip, {}, {}, Guard::truth(), {}}));
  return p;
}

Program Program::diverge() {
  static const Program p(std::make_shared<const Node>(Node{Kind::Diverge, {}, {}, Guard::truth(), {}}));
  return p;
}

Program Program::assign(std::string var, DistExpr dist) {
  dist.validate();
  return Program(std::make_shared<const Node>(Node{Kind::Assign, std::move(var), std::move(dist), Guard::truth(), {}}));
}

Program Program::seq(Program first, Program second) {
  return Program(std::make_shared<const Node>(
      Node{Kind::Seq, {}, {}, Guard::truth(), {std::move(first), std::move(second)}}));
}

Program Program::seq(const std::vector<Program>& parts) {
  if (parts.empty()) return skip();
  Program acc = parts.back();
  for (std::size_t i = parts.size() - 1; i-- > 0;) acc = seq(parts[i], acc);
  return acc;
}

Program Program::ite(Guard guard, Program then_branch, Program else_branch) {
  return Program(std::make_shared<const Node>(
      Node{Kind::If, {}, {}, std::move(guard), {std::move(then_branch), std::move(else_branch)}}));
}

Program Program::loop(Guard guard, Program body) {
  return Program(std::make_shared<const Node>(Node{Kind::While, {}, {}, std::move(guard), {std::move(body)}}));
}

Program Program::repeat_until(Program body, Guard guard) {
  return Program(
      std::make_shared<const Node>(Node{Kind::RepeatUntil, {}, {}, std::move(guard), {std::move(body)}}));
}

std::set<std::string> Program::modified_vars() const {
  std::set<std::string> out;
  if (kind() == Kind::Assign) out.insert(var());
  for (const auto& c : node_->children) {
    auto m = c.modified_vars();
    out.insert(m.begin(), m.end());
  }
  return out;
}

std::set<std::string> Program::guard_vars() const {
  std::set<std::string> out;
  if (kind() == Kind::If || kind() == Kind::While || kind() == Kind::RepeatUntil) out = guard().variables();
  for (const auto& c : node_->children) {
    auto m = c.guard_vars();
    out.insert(m.begin(), m.end());
  }
  return out;
}

bool Program::is_loop_free() const {
  if (kind() == Kind::While || kind() == Kind::RepeatUntil) return false;
  for (const auto& c : node_->children)
    if (!c.is_loop_free()) return false;
  return true;
}

bool Program::contains_diverge() const {
  if (kind() == Kind::Diverge) return true;
  for (const auto& c : node_->children)
    if (c.contains_diverge()) return true;
  return false;
}

std::size_t Program::size() const {
  std::size_t n = 1;
  for (const auto& c : node_->children) n += c.size();
  return n;
}

void Program::validate(const VarDomain& domain) const {
  switch (kind()) {
    case Kind::Assign:
      dist().validate();
      for (const auto& o : dist().outcomes) domain.index_of(var(), o.second);
      break;
    case Kind::If:
    case Kind::While:
    case Kind::RepeatUntil: guard().check_against(domain); break;
    default: break;
  }
  for (const auto& c : node_->children) c.validate(domain);
}

std::string dist_string(const DistExpr& d) {
  std::string s;
  for (std::size_t i = 0; i < d.outcomes.size(); ++i) {
    const auto& [p, v] = d.outcomes[i];
    if (i) s += " + ";
    std::string ps = p.to_string();
    if (p.is_symbolic() && ps.front() != '(') ps = "(" + ps + ")";
    s += ps + "·⟨" + rational_string(v) + "⟩";
  }
  return s;
}

namespace {

void pad(std::string& out, int indent) { out.append(static_cast<std::size_t>(indent) * 2, ' '); }

}  // namespace

void Program::print(std::string& out, int indent) const {
  switch (kind()) {
    case Kind::Skip: pad(out, indent); out += "skip"; return;
    case Kind::Diverge: pad(out, indent); out += "diverge"; return;
    case Kind::Assign:
      pad(out, indent);
      out += var() + " := " + dist_string(dist());
      return;
    case Kind::Seq:
      first().print(out, indent);
      out += ";\n";
      second().print(out, indent);
      return;
    case Kind::If: {
      pad(out, indent);
      const Program* cur = this;
      out += "if (" + cur->guard().to_string() + ") {\n";
      while (true) {
        cur->first().print(out, indent + 1);
        out += "\n";
        pad(out, indent);
        const Program& rest = cur->second();
        if (rest.kind() == Kind::If) {
          out += "} else if (" + rest.guard().to_string() + ") {\n";
          cur = &rest;
          continue;
        }
        out += "} else {\n";
        rest.print(out, indent + 1);
        out += "\n";
        pad(out, indent);
        out += "}";
        return;
      }
    }
    case Kind::While:
      pad(out, indent);
      out += "while (" + guard().to_string() + ") {\n";
      body().print(out, indent + 1);
      out += "\n";
      pad(out, indent);
      out += "}";
      return;
    case Kind::RepeatUntil:
      pad(out, indent);
      out += "repeat {\n";
      body().print(out, indent + 1);
      out += "\n";
      pad(out, indent);
      out += "} until (" + guard().to_string() + ")";
      return;
  }
}

std::string Program::to_string() const {
  std::string out;
  print(out, 0);
  return out;
}

}  // namespace bnest
