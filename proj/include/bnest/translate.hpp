#ifndef BNEST_TRANSLATE_HPP
#define BNEST_TRANSLATE_HPP

#include <string>
#include <vector>

#include "bnest/network.hpp"
#include "bnest/program.hpp"

namespace bnest {

/// Program variable holding the value of node v.
std::string program_var(const std::string& node);
/// Domains of the program variables of every node and input.
VarDomain program_domain(const Network& net);

/// x_{dep[0]} = z[0] ∧ ... in dep order; true for an empty tuple.
Guard guard_of(const Network& net, const std::string& v, const std::vector<Rational>& z);
/// x_v := Σ_a cpt_v(z)(a)·⟨a⟩, omitting zero-probability values.
Program assign_of(const Network& net, const std::string& v, const std::vector<Rational>& z);
/// Nested if-else over the parent tuples in lexicographic order; the last
/// tuple becomes the unguarded else branch.
Program block_of(const Network& net, const std::string& v);
/// Blocks in peeling order; roots of each round in name order.
Program program_of(const Network& net);
/// The loop-free part wrapped in repeat ... until (⋀ x_o = cond(o)).
Program with_observations(const Program& p, const Network& net, const ObservationMap& obs);
Guard observation_guard(const Network& net, const ObservationMap& obs);

/// Tag describing how block branches are ordered.
inline constexpr const char* kBranchOrder = "lexicographic";

}  // namespace bnest

#endif
