#ifndef BNEST_SIM_HPP
#define BNEST_SIM_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bnest/program.hpp"

namespace bnest {

struct SimOptions {
  std::uint64_t seed = 1;
  std::uint64_t trials = 100000;
  std::uint64_t max_steps = 10000000;
  /// Trials are split over this many independently seeded shards. The
  /// result depends on the shard count, never on the thread count.
  unsigned shards = 64;
  /// Initial values; unlisted variables start at their first domain value.
  Assignment initial;
};

struct SimResult {
  std::uint64_t requested = 0;
  std::uint64_t completed = 0;
  std::uint64_t truncated = 0;
  Rational mean;      // over completed trials
  Rational variance;  // sample variance over completed trials
  double half_width_99 = 0;
  std::vector<std::string> query_vars;
  std::map<std::vector<Rational>, std::uint64_t> frequencies;  // final values of query_vars

  bool operator==(const SimResult&) const = default;
};

/// Runs `trials` executions of p charging steps as the ert calculus does:
/// 1 per skip, assignment and guard evaluation. Uses one PRNG
/// (std::mt19937_64) per shard, seeded from (seed, shard) via splitmix64.
/// An outcome with cumulative probability c_i is chosen when the 64-bit
/// draw is below floor(c_i * 2^64). Throws AllTrialsTruncated.
SimResult simulate(const Program& p, const VarDomain& domain, const SimOptions& opts,
                   const std::vector<std::string>& query_vars = {});
/// Serial reference; identical output to simulate().
SimResult simulate_serial(const Program& p, const VarDomain& domain, const SimOptions& opts,
                          const std::vector<std::string>& query_vars = {});

/// Frequencies of the final values of query_vars over completed trials.
std::map<std::vector<Rational>, std::uint64_t> sample_posterior(const Program& p, const VarDomain& domain,
                                                                const std::vector<std::string>& query_vars,
                                                                const SimOptions& opts);

/// `trials=… mean=… var=… ci99=… truncated=…`
std::string summary_line(const SimResult& r);

}  // namespace bnest

#endif
