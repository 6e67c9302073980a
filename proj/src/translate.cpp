#include "bnest/translate.hpp"

#include "bnest/error.hpp"

namespace bnest {

std::string program_var(const std::string& node) { return "x_" + node; }

VarDomain program_domain(const Network& net) {
  VarDomain d;
  auto declare = [&](const std::string& v) {
    std::vector<Rational> vals;
    for (std::size_t i = 0; i < net.arity(v); ++i) vals.emplace_back(static_cast<long>(i));
    d.declare(program_var(v), std::move(vals));
  };
  for (const auto& v : net.nodes()) declare(v);
  for (const auto& v : net.inputs()) declare(v);
  return d;
}

namespace {

void check_tuple(const Network& net, const std::string& v, const std::vector<Rational>& z) {
  const auto& dep = net.dep(v);
  if (z.size() != dep.size())
    throw Error(ErrorKind::ArityMismatch, v + " has " + std::to_string(dep.size()) + " dependencies, got " +
                                              std::to_string(z.size()) + " values");
  for (std::size_t i = 0; i < z.size(); ++i)
    if (z[i] < 0 || z[i] >= static_cast<long>(net.arity(dep[i])) || z[i].get_den() != 1)
      throw Error(ErrorKind::ValueOutOfDomain, rational_string(z[i]) + " for " + dep[i]);
}

}  // namespace

Guard guard_of(const Network& net, const std::string& v, const std::vector<Rational>& z) {
  check_tuple(net, v, z);
  const auto& dep = net.dep(v);
  std::vector<Guard> atoms;
  for (std::size_t i = 0; i < z.size(); ++i) atoms.push_back(Guard::eq(program_var(dep[i]), z[i]));
  return Guard::conjunction(atoms);
}

Program assign_of(const Network& net, const std::string& v, const std::vector<Rational>& z) {
  check_tuple(net, v, z);
  const auto& row = net.cpt_row(v, z);
  DistExpr mu;
  for (std::size_t k = 0; k < row.size(); ++k)
    if (!row[k].is_zero()) mu.outcomes.emplace_back(row[k], Rational(static_cast<long>(k)));
  return Program::assign(program_var(v), std::move(mu));
}

Program block_of(const Network& net, const std::string& v) {
  const auto& dep = net.dep(v);
  if (dep.empty()) return assign_of(net, v, {});
  std::size_t combos = 1;
  for (const auto& d : dep) combos *= net.arity(d);
  std::vector<std::vector<Rational>> tuples;
  for (std::size_t r = 0; r < combos; ++r) {
    std::vector<Rational> z(dep.size());
    std::size_t rest = r;
    for (std::size_t i = dep.size(); i-- > 0;) {
      std::size_t n = net.arity(dep[i]);
      z[i] = Rational(static_cast<long>(rest % n));
      rest /= n;
    }
    tuples.push_back(std::move(z));
  }
  Program out = assign_of(net, v, tuples.back());
  for (std::size_t i = tuples.size() - 1; i-- > 0;)
    out = Program::ite(guard_of(net, v, tuples[i]), assign_of(net, v, tuples[i]), out);
  return out;
}

Program program_of(const Network& net) {
  if (!net.inputs().empty()) throw Error(ErrorKind::InvalidNetwork, "program_of needs a network without inputs");
  std::vector<Program> blocks;
  Network rest = net;
  while (!rest.nodes().empty()) {
    auto rs = rest.roots();
    for (const auto& v : rs) blocks.push_back(block_of(net, v));
    rest = rest.peel(std::set<std::string>(rs.begin(), rs.end()));
  }
  if (blocks.empty()) return Program::skip();
  return Program::seq(blocks);
}

Guard observation_guard(const Network& net, const ObservationMap& obs) {
  net.check_observations(obs);
  std::vector<Guard> atoms;
  for (const auto& [v, x] : obs) atoms.push_back(Guard::eq(program_var(v), x));
  return Guard::conjunction(atoms);
}

Program with_observations(const Program& p, const Network& net, const ObservationMap& obs) {
  return Program::repeat_until(p, observation_guard(net, obs));
}

}  // namespace bnest
