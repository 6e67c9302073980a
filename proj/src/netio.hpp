#ifndef BNEST_SRC_NETIO_HPP
#define BNEST_SRC_NETIO_HPP

#include <vector>

#include "bnest/coeff.hpp"

namespace bnest::detail {

// Rescales a parameter-free row whose mass is within 1e-6 of 1.
inline void normalize_row(std::vector<Coefficient>& row) {
  Coefficient sum(0);
  for (const auto& c : row) {
    if (!c.is_rational()) return;
    sum += c;
  }
  if (sum.is_zero()) return;
  Rational diff = sum.rational() - 1;
  if (diff < 0) diff = -diff;
  if (diff > Rational(1, 1000000)) return;
  for (auto& c : row) c = Coefficient(c.rational() / sum.rational());
}

}  // namespace bnest::detail

#endif
