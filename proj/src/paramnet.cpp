#include <optional>

#include <json.hpp>

#include "bnest/error.hpp"
#include "bnest/network.hpp"
#include "netio.hpp"

namespace bnest {

namespace {

using nlohmann::json;

std::string scalar_text(const json& j, const std::string& where) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number()) return j.dump();
  throw Error(ErrorKind::SyntaxError, where + ": expected a string or number, found " + j.dump());
}

const json& field(const json& obj, const char* name, const std::string& where) {
  if (!obj.is_object() || !obj.contains(name))
    throw Error(ErrorKind::SyntaxError, where + ": missing field \"" + name + "\"");
  return obj.at(name);
}

const json& array_field(const json& obj, const char* name, const std::string& where) {
  const json& a = field(obj, name, where);
  if (!a.is_array()) throw Error(ErrorKind::SyntaxError, where + ": \"" + name + "\" must be an array");
  return a;
}

}  // namespace

Network load_param_network(std::string_view text, const ParseOptions& opts) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::SyntaxError, std::string("invalid JSON at byte ") + std::to_string(e.byte) + ": " + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorKind::SyntaxError, "top level must be an object");

  Network net;
  std::vector<std::string> params;
  if (doc.contains("parameters")) {
    for (const auto& p : array_field(doc, "parameters", "network")) {
      if (!p.is_string()) throw Error(ErrorKind::SyntaxError, "parameter names must be strings");
      params.push_back(p.get<std::string>());
    }
  }
  std::set<std::string> param_set(params.begin(), params.end());
  if (param_set.size() != params.size()) throw Error(ErrorKind::InvalidNetwork, "parameter declared twice");
  net.set_parameters(params);

  for (const auto& v : array_field(doc, "variables", "network")) {
    std::string name = scalar_text(field(v, "name", "variable"), "variable name");
    std::vector<std::string> labels;
    for (const auto& l : array_field(v, "values", "variable " + name)) labels.push_back(scalar_text(l, name));
    net.add_variable(name, std::move(labels));
  }

  for (const auto& entry : array_field(doc, "cpt", "network")) {
    std::string node = scalar_text(field(entry, "node", "cpt entry"), "cpt node");
    std::string where = "cpt of " + node;
    if (!net.is_node(node)) throw Error(ErrorKind::InvalidNetwork, where + ": undeclared node");
    std::vector<std::string> parents;
    if (entry.contains("parents"))
      for (const auto& p : array_field(entry, "parents", where)) parents.push_back(scalar_text(p, where));
    std::size_t combos = 1;
    for (const auto& p : parents) {
      if (!net.is_node(p)) throw Error(ErrorKind::InvalidNetwork, where + ": undeclared parent " + p);
      combos *= net.arity(p);
    }
    std::vector<std::optional<std::vector<Coefficient>>> rows(combos);
    for (const auto& row : array_field(entry, "rows", where)) {
      std::vector<std::string> given;
      if (row.contains("given"))
        for (const auto& g : array_field(row, "given", where)) given.push_back(scalar_text(g, where));
      if (given.size() != parents.size())
        throw Error(ErrorKind::ArityMismatch, where + ": row gives " + std::to_string(given.size()) +
                                                  " parent values, expected " + std::to_string(parents.size()));
      std::size_t idx = 0;
      for (std::size_t i = 0; i < parents.size(); ++i)
        idx = idx * net.arity(parents[i]) + net.value_of(parents[i], given[i]).get_num().get_ui();
      if (rows[idx]) throw Error(ErrorKind::InvalidNetwork, where + ": duplicate row");
      std::vector<Coefficient> dist;
      for (const auto& d : array_field(row, "dist", where)) {
        std::string s = scalar_text(d, where);
        dist.push_back(Coefficient::parse(s, param_set));
      }
      if (opts.normalize) detail::normalize_row(dist);
      rows[idx] = std::move(dist);
    }
    std::vector<std::vector<Coefficient>> dense;
    for (std::size_t r = 0; r < combos; ++r) {
      if (!rows[r]) throw Error(ErrorKind::MissingCptRow, where + ": missing row " + std::to_string(r));
      dense.push_back(std::move(*rows[r]));
    }
    net.set_cpt(node, std::move(parents), std::move(dense));
  }
  net.validate();
  return net;
}

std::string render_param_network(const Network& net) {
  json doc;
  doc["parameters"] = net.parameters();
  doc["variables"] = json::array();
  for (const auto& v : net.nodes()) doc["variables"].push_back({{"name", v}, {"values", net.labels(v)}});
  doc["cpt"] = json::array();
  for (const auto& v : net.nodes()) {
    const auto& dep = net.dep(v);
    json rows = json::array();
    const auto& cpt = net.cpt_rows(v);
    for (std::size_t r = 0; r < cpt.size(); ++r) {
      std::vector<std::string> given(dep.size());
      std::size_t rest = r;
      for (std::size_t i = dep.size(); i-- > 0;) {
        std::size_t n = net.arity(dep[i]);
        given[i] = net.labels(dep[i])[rest % n];
        rest /= n;
      }
      std::vector<std::string> dist;
      for (const auto& c : cpt[r]) dist.push_back(c.to_string());
      rows.push_back({{"given", given}, {"dist", dist}});
    }
    doc["cpt"].push_back({{"node", v}, {"parents", dep}, {"rows", rows}});
  }
  return doc.dump(2) + "\n";
}

}  // namespace bnest
