#ifndef BNEST_ENGINE_HPP
#define BNEST_ENGINE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bnest/network.hpp"
#include "bnest/translate.hpp"

namespace bnest {

struct EstReport {
  Coefficient est;
  ObservationMap observed;
  std::size_t program_size = 0;
  std::string branch_order = kBranchOrder;
};

/// ert of the translated program with observations, at f = 0.
EstReport est(const Network& net, const ObservationMap& obs);
/// The same value via the repeat-until quotient (1 + ert(Seq,[ψ]·0)) / wp(Seq,[ψ]).
Coefficient est_by_quotient(const Network& net, const ObservationMap& obs);

/// wp of the translated program on [⋀ x_v = query(v)].
Coefficient posterior(const Network& net, const Assignment& query, const ObservationMap& obs);

struct SoundnessReport {
  struct Mismatch {
    Assignment query;
    Coefficient via_wp, via_enumeration;
  };
  std::size_t checked = 0;
  std::vector<Mismatch> mismatches;
};

/// Compares posterior with conditional_prob on `trials` random queries over
/// the unobserved nodes.
SoundnessReport soundness_check(const Network& net, const ObservationMap& obs, std::size_t trials,
                                std::uint64_t seed = 1);

struct SweepPoint {
  Rational x;
  std::optional<ExtRational> value;  // empty when evaluation failed
  std::string error;                 // "pole", "undefined" or "negative"
};

/// Evaluates `est` at each grid value of `param`, other parameters taken
/// from `fixed`. Points are independent and evaluated in parallel.
std::vector<SweepPoint> sweep(const Coefficient& est, const std::string& param, const std::vector<Rational>& grid,
                              const std::map<std::string, Rational>& fixed = {});
std::vector<SweepPoint> sweep_serial(const Coefficient& est, const std::string& param,
                                     const std::vector<Rational>& grid,
                                     const std::map<std::string, Rational>& fixed = {});
/// CSV with header `param,est`; `inf` for infinity and `pole` for failed points.
std::string sweep_csv(const std::vector<SweepPoint>& points);

/// Parses `start:end:step` into an inclusive exact grid.
std::vector<Rational> parse_grid(const std::string& spec);

/// "2.347e1": scientific rendering with `digits` significant digits.
std::string scientific(const Rational& r, int digits = 4);
/// Rounded (half away from zero) to a fixed number of decimal places.
std::string fixed_decimal(const Rational& r, int places = 6);

}  // namespace bnest

#endif
