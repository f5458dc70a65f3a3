#pragma once

#include <optional>

#include "crtrans/mpoly.hpp"

namespace crtrans {

struct DivisionResult {
  MPoly quotient;
  MPoly remainder;
};

/// Multivariate division of f by a single divisor g under grevlex. Terms of f
/// not divisible by LT(g) move to the remainder.
inline DivisionResult divide_with_remainder(const MPoly& f, const MPoly& g) {
  require_same_universe(f, g);
  if (g.is_zero()) throw DivisionByZero();
  const Monomial& lm = g.leading_monomial();
  const GaussRat inv = GaussRat(1) / g.leading_coefficient();
  MPoly q(f.universe()), r(f.universe()), p = f;
  while (!p.is_zero()) {
    const Monomial m = p.leading_monomial();
    const GaussRat c = p.leading_coefficient();
    if (lm.divides(m)) {
      MPoly t = MPoly::term(f.universe(), m.quotient(lm), c * inv);
      q += t;
      p -= t * g;
    } else {
      r.add_term(m, c);
      p.add_term(m, -c);
    }
  }
  return {std::move(q), std::move(r)};
}

/// Returns q with f = q*g, or nothing when g does not divide f. Since leading
/// terms are multiplicative, the division stops at the first leading term of
/// the running dividend that LT(g) fails to divide.
inline std::optional<MPoly> exact_divide(const MPoly& f, const MPoly& g) {
  require_same_universe(f, g);
  if (g.is_zero()) throw DivisionByZero();
  const Monomial& lm = g.leading_monomial();
  const GaussRat inv = GaussRat(1) / g.leading_coefficient();
  MPoly q(f.universe()), p = f;
  while (!p.is_zero()) {
    const Monomial& m = p.leading_monomial();
    if (!lm.divides(m)) return std::nullopt;
    MPoly t = MPoly::term(f.universe(), m.quotient(lm), p.leading_coefficient() * inv);
    q += t;
    p -= t * g;
  }
  return q;
}

inline bool divides(const MPoly& g, const MPoly& f) { return exact_divide(f, g).has_value(); }

// exact_divide for callers that already know the division is exact.
inline MPoly divide_exactly(const MPoly& f, const MPoly& g) {
  auto q = exact_divide(f, g);
  if (!q) throw InternalConsistencyError("expected exact division failed: (" + f.to_string() + ") / (" + g.to_string() + ")");
  return *std::move(q);
}

}  // namespace crtrans
