#include "bnest/iid.hpp"

#include "bnest/error.hpp"

namespace bnest {

bool unaffected(const Expectation& f, const Program& c) {
  auto mod = c.modified_vars();
  for (const auto& v : f.support())
    if (mod.count(v)) return false;
  return true;
}

namespace {

struct LoopParts {
  Expectation stay;      // wp(body, [φ])
  Expectation leave_f;   // wp(body, [¬φ]·f)
};

LoopParts check_f_iid(const Transformer& tr, const Guard& phi, const Program& body, const Expectation& f) {
  Expectation stay = tr.wp(body, tr.iverson(phi));
  if (!unaffected(stay, body))
    throw Error(ErrorKind::NotFIID, "premise wp(body,[φ]) ⋈ body fails for loop guard " + phi.to_string());
  Expectation leave_f = tr.wp(body, tr.iverson(!phi) * f);
  if (!unaffected(leave_f, body))
    throw Error(ErrorKind::NotFIID, "premise wp(body,[¬φ]·f) ⋈ body fails for loop guard " + phi.to_string());
  return {std::move(stay), std::move(leave_f)};
}

void check_ert_premises(const Transformer& tr, const Guard& phi, const Program& body) {
  if (!(tr.wp(body, Expectation(1)) == Expectation(1)))
    throw Error(ErrorKind::BodyMayDiverge, "premise wp(body,1) = 1 fails for loop guard " + phi.to_string());
  if (!unaffected(tr.ert(body, Expectation(0)), body))
    throw Error(ErrorKind::VaryingIterationTime,
                "premise ert(body,0) ⋈ body fails for loop guard " + phi.to_string());
}

}  // namespace

bool is_f_iid(const Transformer& tr, const Guard& phi, const Program& body, const Expectation& f) {
  try {
    check_f_iid(tr, phi, body, f);
    return true;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NotFIID) return false;
    throw;
  }
}

Expectation wp_while_iid(const Transformer& tr, const Guard& phi, const Program& body, const Expectation& f) {
  auto parts = check_f_iid(tr, phi, body, f);
  Expectation one(1);
  return tr.iverson(phi) * parts.leave_f.divide(one - parts.stay) + tr.iverson(!phi) * f;
}

Expectation ert_while_iid(const Transformer& tr, const Guard& phi, const Program& body, const Expectation& f) {
  auto parts = check_f_iid(tr, phi, body, f);
  check_ert_premises(tr, phi, body);
  Expectation one(1);
  Expectation per_exit = one + tr.ert(body, tr.iverson(!phi) * f);
  return one + tr.iverson(phi) * per_exit.divide(one - parts.stay) + tr.iverson(!phi) * f;
}

Expectation ert_repeat_until(const Transformer& tr, const Program& body, const Guard& psi, const Expectation& f) {
  auto parts = check_f_iid(tr, !psi, body, f);
  check_ert_premises(tr, !psi, body);
  Expectation accept = tr.wp(body, tr.iverson(psi));
  return (Expectation(1) + tr.ert(body, tr.iverson(psi) * f)).divide(accept);
}

Expectation wp_repeat_until(const Transformer& tr, const Program& body, const Guard& psi, const Expectation& f) {
  check_f_iid(tr, !psi, body, f);
  Expectation accept = tr.wp(body, tr.iverson(psi));
  return tr.wp(body, tr.iverson(psi) * f).divide(accept);
}

}  // namespace bnest
