// Command-line front end: exact ESTs, posteriors, sweeps, simulation and
// network statistics for Bayesian networks compiled to BNL programs.
#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

#include "bnest/engine.hpp"
#include "bnest/error.hpp"
#include "bnest/sim.hpp"

using namespace bnest;

namespace {

struct Common {
  std::string file;
  std::vector<std::string> observe;
  std::vector<std::string> params;
  bool normalize = false;
};

void add_common(CLI::App* cmd, Common& c, bool with_observe = true) {
  cmd->add_option("file", c.file, "network file (.bif or .json)")->required();
  if (with_observe) cmd->add_option("--observe", c.observe, "observation VAR=VALUE (repeatable)");
  cmd->add_option("--param", c.params, "parameter NAME=RATIONAL (repeatable)");
  cmd->add_flag("--normalize", c.normalize, "rescale CPT rows that sum to 1 within 1e-6");
}

std::pair<std::string, std::string> split_eq(const std::string& s, const char* what) {
  auto eq = s.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == s.size())
    throw Error(ErrorKind::InvalidArgument, std::string(what) + " must look like NAME=VALUE, got \"" + s + "\"");
  return {s.substr(0, eq), s.substr(eq + 1)};
}

Assignment parse_values(const Network& net, const std::vector<std::string>& items, const char* what) {
  Assignment out;
  for (const auto& s : items) {
    auto [name, label] = split_eq(s, what);
    if (!net.is_node(name)) throw Error(ErrorKind::InvalidObservation, name + " is not a node of the network");
    Rational v = net.value_of(name, label);
    if (out.count(name) && out[name] != v) throw Error(ErrorKind::InvalidObservation, "conflicting values for " + name);
    out[name] = v;
  }
  return out;
}

std::map<std::string, Rational> parse_params(const std::vector<std::string>& items) {
  std::map<std::string, Rational> out;
  for (const auto& s : items) {
    auto [name, text] = split_eq(s, "--param");
    auto r = parse_rational(text);
    if (!r) throw Error(ErrorKind::InvalidArgument, "parameter value \"" + text + "\" is not a rational");
    out[name] = *r;
  }
  return out;
}

struct Loaded {
  Network net;
  ObservationMap obs;
};

Loaded load(const Common& c, const std::map<std::string, Rational>& point) {
  Network net = load_network_file(c.file, ParseOptions{c.normalize});
  for (const auto& [name, v] : point) {
    const auto& ps = net.parameters();
    if (std::find(ps.begin(), ps.end(), name) == ps.end())
      throw Error(ErrorKind::UndeclaredParameter, name + " is not a parameter of " + c.file);
  }
  if (!point.empty()) net = net.substitute_parameters(point);
  ObservationMap obs = parse_values(net, c.observe, "--observe");
  net.check_observations(obs);
  return {std::move(net), std::move(obs)};
}

std::string describe(const Coefficient& c) {
  if (!c.is_rational()) return c.to_string();
  return c.to_string() + " (" + fixed_decimal(c.rational(), 6) + ")";
}

std::string assignment_string(const Network& net, const Assignment& a) {
  std::string out;
  for (const auto& [v, x] : a) {
    if (!out.empty()) out += ",";
    out += v + "=" + net.labels(v)[x.get_num().get_ui()];
  }
  return out;
}

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::UnsupportedLoop:
    case ErrorKind::NotFIID:
    case ErrorKind::BodyMayDiverge:
    case ErrorKind::VaryingIterationTime:
    case ErrorKind::TableTooLarge: return 3;
    case ErrorKind::AllTrialsTruncated: return 4;
    default: return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact expected sampling times for Bayesian networks"};
  app.require_subcommand(1);

  Common est_o, prob_o, tr_o, sw_o, sim_o, st_o, ck_o;
  std::vector<std::string> query;
  std::string grid;
  std::uint64_t seed = 1, trials = 100000, max_steps = 10000000, check_trials = 8;

  auto* est_cmd = app.add_subcommand("est", "exact expected sampling time");
  add_common(est_cmd, est_o);
  auto* prob_cmd = app.add_subcommand("prob", "posterior probability via wp");
  add_common(prob_cmd, prob_o);
  prob_cmd->add_option("--query", query, "query VAR=VALUE (repeatable)")->required();
  auto* tr_cmd = app.add_subcommand("translate", "print the BNL program");
  add_common(tr_cmd, tr_o);
  auto* sw_cmd = app.add_subcommand("sweep", "evaluate the symbolic EST over a parameter grid (CSV)");
  add_common(sw_cmd, sw_o);
  sw_cmd->add_option("--grid", grid, "start:end:step")->required();
  auto* sim_cmd = app.add_subcommand("simulate", "rejection-sampling simulation");
  add_common(sim_cmd, sim_o);
  sim_cmd->add_option("--seed", seed, "random seed");
  sim_cmd->add_option("--trials", trials, "number of trials");
  sim_cmd->add_option("--max-steps", max_steps, "per-trial step budget");
  auto* st_cmd = app.add_subcommand("stats", "node, edge and Markov blanket statistics");
  add_common(st_cmd, st_o, false);
  auto* ck_cmd = app.add_subcommand("check", "compare wp posteriors with enumeration");
  add_common(ck_cmd, ck_o);
  ck_cmd->add_option("--trials", check_trials, "number of random queries");
  ck_cmd->add_option("--seed", seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Usage errors share the exit status of other input errors.
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (est_cmd->parsed()) {
      auto [net, obs] = load(est_o, parse_params(est_o.params));
      EstReport r = est(net, obs);
      std::cout << describe(r.est) << "\n";
      if (r.est.is_rational()) std::cout << "scientific=" << scientific(r.est.rational()) << "\n";
      std::cout << "program_size=" << r.program_size << " branch_order=" << r.branch_order << "\n";
    } else if (prob_cmd->parsed()) {
      auto [net, obs] = load(prob_o, parse_params(prob_o.params));
      Assignment q = parse_values(net, query, "--query");
      std::cout << describe(posterior(net, q, obs)) << "\n";
    } else if (tr_cmd->parsed()) {
      auto [net, obs] = load(tr_o, parse_params(tr_o.params));
      std::cout << with_observations(program_of(net), net, obs).to_string() << "\n";
    } else if (sw_cmd->parsed()) {
      // The swept parameter is the one --param given without a value.
      std::string swept;
      std::vector<std::string> fixed_items;
      for (const auto& p : sw_o.params) {
        if (p.find('=') == std::string::npos) {
          if (!swept.empty()) throw Error(ErrorKind::InvalidArgument, "sweep takes exactly one --param NAME");
          swept = p;
        } else {
          fixed_items.push_back(p);
        }
      }
      if (swept.empty()) throw Error(ErrorKind::InvalidArgument, "sweep needs --param NAME for the swept parameter");
      auto fixed = parse_params(fixed_items);
      auto [net, obs] = load(sw_o, {});
      const auto& ps = net.parameters();
      if (std::find(ps.begin(), ps.end(), swept) == ps.end())
        throw Error(ErrorKind::UndeclaredParameter, swept + " is not a parameter of " + sw_o.file);
      EstReport r = est(net, obs);
      std::cout << sweep_csv(sweep(r.est, swept, parse_grid(grid), fixed));
    } else if (sim_cmd->parsed()) {
      auto [net, obs] = load(sim_o, parse_params(sim_o.params));
      SimOptions so;
      so.seed = seed;
      so.trials = trials;
      so.max_steps = max_steps;
      SimResult r = simulate(with_observations(program_of(net), net, obs), program_domain(net), so);
      std::cout << summary_line(r) << "\n";
      if (r.truncated > 0) return 4;
    } else if (st_cmd->parsed()) {
      auto [net, obs] = load(st_o, parse_params(st_o.params));
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.2f", net.markov_blanket_avg().get_d());
      std::cout << "nodes=" << net.nodes().size() << " edges=" << net.edges().size() << " avg_mb=" << buf << "\n";
    } else if (ck_cmd->parsed()) {
      auto [net, obs] = load(ck_o, parse_params(ck_o.params));
      if (net.has_parameters()) throw Error(ErrorKind::InvalidArgument, "check needs a parameter-free network (use --param)");
      SoundnessReport r = soundness_check(net, obs, check_trials, seed);
      for (const auto& m : r.mismatches)
        std::cout << "mismatch " << assignment_string(net, m.query) << ": wp=" << m.via_wp.to_string()
                  << " enumeration=" << m.via_enumeration.to_string() << "\n";
      std::cout << "checked=" << r.checked << " mismatches=" << r.mismatches.size() << "\n";
      if (!r.mismatches.empty()) return 1;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  }
  return 0;
}
