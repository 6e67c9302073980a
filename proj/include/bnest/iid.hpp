#ifndef BNEST_IID_HPP
#define BNEST_IID_HPP

#include "bnest/transformer.hpp"

namespace bnest {

/// f ⋈ C: no variable f depends on is modified by C.
bool unaffected(const Expectation& f, const Program& c);

/// Both premises of f-independence: wp(body,[φ]) ⋈ body and wp(body,[¬φ]·f) ⋈ body.
bool is_f_iid(const Transformer& tr, const Guard& phi, const Program& body, const Expectation& f);

/// wp of while(φ){body}: [φ]·wp(body,[¬φ]·f)/(1 - wp(body,[φ])) + [¬φ]·f with 0/0 = 0.
/// Throws NotFIID.
Expectation wp_while_iid(const Transformer& tr, const Guard& phi, const Program& body, const Expectation& f);

/// ert of while(φ){body}: 1 + [φ]·(1 + ert(body,[¬φ]·f))/(1 - wp(body,[φ])) + [¬φ]·f.
/// Throws NotFIID, BodyMayDiverge, VaryingIterationTime.
Expectation ert_while_iid(const Transformer& tr, const Guard& phi, const Program& body, const Expectation& f);

/// ert of repeat{body}until(ψ) as the quotient (1 + ert(body,[ψ]·f)) / wp(body,[ψ]).
Expectation ert_repeat_until(const Transformer& tr, const Program& body, const Guard& psi, const Expectation& f);

/// wp of repeat{body}until(ψ) as the quotient wp(body,[ψ]·f) / wp(body,[ψ]), 0/0 = 0.
Expectation wp_repeat_until(const Transformer& tr, const Program& body, const Guard& psi, const Expectation& f);

}  // namespace bnest

#endif
