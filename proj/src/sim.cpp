#include "bnest/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "bnest/error.hpp"

namespace bnest {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct CGuard {
  Guard::Node::Kind kind;
  bool constant = false;
  std::uint32_t var = 0, value = 0;
  bool value_in_domain = true;
  std::vector<CGuard> children;
  // Extensional: satisfying index tuples flattened with mixed-radix strides.
  std::vector<std::uint32_t> vars;
  std::vector<std::size_t> strides;
  std::vector<bool> table;
};

struct CProg {
  Program::Kind kind;
  std::uint32_t var = 0;
  std::vector<std::uint64_t> thresholds;  // one per outcome except the last
  std::vector<std::uint32_t> values;
  CGuard guard;
  std::vector<CProg> children;
};

class Compiler {
 public:
  explicit Compiler(const VarDomain& d) : domain_(d) {
    for (const auto& [name, vals] : d.all()) {
      index_[name] = static_cast<std::uint32_t>(names_.size());
      names_.push_back(name);
    }
  }

  std::uint32_t var(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw Error(ErrorKind::UnknownVariable, name);
    return it->second;
  }

  std::size_t size() const { return names_.size(); }

  CGuard guard(const Guard& g) const {
    using K = Guard::Node::Kind;
    const auto& n = g.node();
    CGuard c;
    c.kind = n.kind;
    switch (n.kind) {
      case K::Const: c.constant = n.constant; break;
      case K::Atom: {
        c.var = var(n.var);
        const auto& vals = *domain_.values(n.var);
        auto it = std::find(vals.begin(), vals.end(), n.value);
        c.value_in_domain = it != vals.end();
        c.value = static_cast<std::uint32_t>(it - vals.begin());
        break;
      }
      case K::Not:
      case K::And:
      case K::Or:
        for (const auto& ch : n.children) c.children.push_back(guard(ch));
        break;
      case K::Extensional: {
        std::size_t total = 1;
        c.strides.assign(n.ext_vars.size(), 0);
        for (std::size_t i = n.ext_vars.size(); i-- > 0;) {
          c.strides[i] = total;
          total *= domain_.values(n.ext_vars[i])->size();
        }
        for (const auto& v : n.ext_vars) c.vars.push_back(var(v));
        c.table.assign(total, false);
        for (const auto& tup : n.ext_tuples) {
          std::size_t idx = 0;
          bool ok = true;
          for (std::size_t i = 0; i < tup.size(); ++i) {
            const auto& vals = *domain_.values(n.ext_vars[i]);
            auto it = std::find(vals.begin(), vals.end(), tup[i]);
            if (it == vals.end()) ok = false;
            else idx += static_cast<std::size_t>(it - vals.begin()) * c.strides[i];
          }
          if (ok) c.table[idx] = true;
        }
        break;
      }
    }
    return c;
  }

  CProg program(const Program& p) const {
    using K = Program::Kind;
    CProg c;
    c.kind = p.kind();
    switch (p.kind()) {
      case K::Skip:
      case K::Diverge: break;
      case K::Assign: {
        c.var = var(p.var());
        Rational cum = 0;
        const mpz_class two64 = mpz_class(1) << 64;
        const auto& outs = p.dist().outcomes;
        for (std::size_t i = 0; i < outs.size(); ++i) {
          if (!outs[i].first.is_rational())
            throw Error(ErrorKind::InvalidArgument, "simulation needs parameter-free probabilities, got " +
                                                        outs[i].first.to_string());
          c.values.push_back(static_cast<std::uint32_t>(domain_.index_of(p.var(), outs[i].second)));
          cum += outs[i].first.rational();
          if (i + 1 < outs.size()) {
            Rational scaled = cum * Rational(two64);
            mpz_class t = scaled.get_num() / scaled.get_den();
            if (t >= two64) t = two64 - 1;
            static_assert(sizeof(unsigned long) == 8);
            c.thresholds.push_back(t.get_ui());
          }
        }
        break;
      }
      case K::Seq:
      case K::If:
        c.children.push_back(program(p.first()));
        c.children.push_back(program(p.second()));
        if (p.kind() == K::If) c.guard = guard(p.guard());
        break;
      case K::While:
      case K::RepeatUntil:
        c.children.push_back(program(p.body()));
        c.guard = guard(p.guard());
        break;
    }
    return c;
  }

  std::vector<std::uint32_t> initial(const Assignment& init) const {
    std::vector<std::uint32_t> s(names_.size(), 0);
    for (const auto& [name, v] : init) s[var(name)] = static_cast<std::uint32_t>(domain_.index_of(name, v));
    return s;
  }

  const std::vector<Rational>& values_of(const std::string& name) const { return *domain_.values(name); }

 private:
  const VarDomain& domain_;
  std::map<std::string, std::uint32_t> index_;
  std::vector<std::string> names_;
};

bool holds(const CGuard& g, const std::vector<std::uint32_t>& s) {
  using K = Guard::Node::Kind;
  switch (g.kind) {
    case K::Const: return g.constant;
    case K::Atom: return g.value_in_domain && s[g.var] == g.value;
    case K::Not: return !holds(g.children[0], s);
    case K::And:
      for (const auto& c : g.children)
        if (!holds(c, s)) return false;
      return true;
    case K::Or:
      for (const auto& c : g.children)
        if (holds(c, s)) return true;
      return false;
    case K::Extensional: {
      std::size_t idx = 0;
      for (std::size_t i = 0; i < g.vars.size(); ++i) idx += s[g.vars[i]] * g.strides[i];
      return g.table[idx];
    }
  }
  return false;
}

struct Run {
  std::vector<std::uint32_t> state;
  std::mt19937_64* rng;
  std::uint64_t steps = 0;
  std::uint64_t limit = 0;

  // Charges one step; false once the budget is exhausted.
  bool tick() { return ++steps <= limit; }

  bool exec(const CProg& p) {
    using K = Program::Kind;
    switch (p.kind) {
      case K::Skip: return tick();
      case K::Diverge: steps = limit + 1; return false;
      case K::Assign: {
        std::uint64_t u = (*rng)();
        std::size_t i = 0;
        while (i < p.thresholds.size() && u >= p.thresholds[i]) ++i;
        state[p.var] = p.values[i];
        return tick();
      }
      case K::Seq: return exec(p.children[0]) && exec(p.children[1]);
      case K::If:
        if (!tick()) return false;
        return exec(holds(p.guard, state) ? p.children[0] : p.children[1]);
      case K::While:
        while (true) {
          if (!tick()) return false;
          if (!holds(p.guard, state)) return true;
          if (!exec(p.children[0])) return false;
        }
      case K::RepeatUntil:
        // C; while (¬ψ) { C }
        if (!exec(p.children[0])) return false;
        while (true) {
          if (!tick()) return false;
          if (holds(p.guard, state)) return true;
          if (!exec(p.children[0])) return false;
        }
    }
    return false;
  }
};

struct ShardStats {
  std::uint64_t completed = 0, truncated = 0;
  unsigned __int128 sum = 0, sumsq = 0;
  std::map<std::vector<std::uint32_t>, std::uint64_t> freq;
};

struct Plan {
  Compiler comp;
  CProg prog;
  std::vector<std::uint32_t> init;
  std::vector<std::uint32_t> query;
  std::vector<std::string> query_names;
  SimOptions opts;

  Plan(const Program& p, const VarDomain& d, const SimOptions& o, const std::vector<std::string>& q)
      : comp(d), prog(comp.program(p)), init(comp.initial(o.initial)), query_names(q), opts(o) {
    if (o.trials == 0) throw Error(ErrorKind::InvalidArgument, "trials must be positive");
    if (o.shards == 0) throw Error(ErrorKind::InvalidArgument, "shards must be positive");
    for (const auto& v : q) query.push_back(comp.var(v));
  }

  std::uint64_t shard_trials(unsigned s) const {
    return opts.trials / opts.shards + (s < opts.trials % opts.shards ? 1 : 0);
  }

  ShardStats run_shard(unsigned s) const {
    std::mt19937_64 rng(splitmix64(opts.seed ^ splitmix64(s)));
    ShardStats st;
    Run r{init, &rng, 0, opts.max_steps};
    std::vector<std::uint32_t> key(query.size());
    for (std::uint64_t t = shard_trials(s); t > 0; --t) {
      r.state = init;
      r.steps = 0;
      if (!r.exec(prog)) {
        ++st.truncated;
        continue;
      }
      ++st.completed;
      st.sum += r.steps;
      st.sumsq += static_cast<unsigned __int128>(r.steps) * r.steps;
      if (!query.empty()) {
        for (std::size_t i = 0; i < query.size(); ++i) key[i] = r.state[query[i]];
        ++st.freq[key];
      }
    }
    return st;
  }

  SimResult combine(const std::vector<ShardStats>& shards) const {
    auto to_mpz = [](unsigned __int128 v) {
      mpz_class hi(static_cast<unsigned long>(v >> 64)), lo(static_cast<unsigned long>(v));
      return mpz_class((hi << 64) + lo);
    };
    SimResult res;
    res.requested = opts.trials;
    res.query_vars = query_names;
    mpz_class sum = 0, sumsq = 0;
    for (const auto& st : shards) {
      res.completed += st.completed;
      res.truncated += st.truncated;
      sum += to_mpz(st.sum);
      sumsq += to_mpz(st.sumsq);
      for (const auto& [k, n] : st.freq) {
        std::vector<Rational> vals;
        for (std::size_t i = 0; i < k.size(); ++i) vals.push_back(comp.values_of(query_names[i])[k[i]]);
        res.frequencies[vals] += n;
      }
    }
    if (res.completed == 0)
      throw Error(ErrorKind::AllTrialsTruncated,
                  "all " + std::to_string(res.requested) + " trials exceeded " + std::to_string(opts.max_steps) + " steps");
    Rational n(mpz_class(static_cast<unsigned long>(res.completed)));
    res.mean = Rational(sum) / n;
    res.mean.canonicalize();
    if (res.completed > 1) {
      res.variance = (Rational(sumsq) - Rational(sum) * Rational(sum) / n) / (n - 1);
      res.variance.canonicalize();
    }
    res.half_width_99 = 2.5758293035489 * std::sqrt(res.variance.get_d() / res.completed);
    return res;
  }
};

}  // namespace

SimResult simulate_serial(const Program& p, const VarDomain& domain, const SimOptions& opts,
                          const std::vector<std::string>& query_vars) {
  Plan plan(p, domain, opts, query_vars);
  std::vector<ShardStats> shards(opts.shards);
  for (unsigned s = 0; s < opts.shards; ++s) shards[s] = plan.run_shard(s);
  return plan.combine(shards);
}

SimResult simulate(const Program& p, const VarDomain& domain, const SimOptions& opts,
                   const std::vector<std::string>& query_vars) {
  Plan plan(p, domain, opts, query_vars);
  std::vector<ShardStats> shards(opts.shards);
  const int n = static_cast<int>(opts.shards);
#pragma omp parallel for schedule(dynamic, 1)
  for (int s = 0; s < n; ++s) shards[s] = plan.run_shard(static_cast<unsigned>(s));
  return plan.combine(shards);
}

std::map<std::vector<Rational>, std::uint64_t> sample_posterior(const Program& p, const VarDomain& domain,
                                                                const std::vector<std::string>& query_vars,
                                                                const SimOptions& opts) {
  return simulate(p, domain, opts, query_vars).frequencies;
}

std::string summary_line(const SimResult& r) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", r.half_width_99);
  return "trials=" + std::to_string(r.completed) + " mean=" + rational_decimal(r.mean, 7) +
         " var=" + rational_decimal(r.variance, 7) + " ci99=" + buf + " truncated=" + std::to_string(r.truncated);
}

}  // namespace bnest
