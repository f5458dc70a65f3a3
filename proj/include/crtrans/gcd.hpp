#pragma once

#include <span>
#include <vector>

#include "crtrans/division.hpp"
#include "crtrans/mpoly.hpp"

namespace crtrans {

namespace detail {

inline MPoly leading_coefficient_in(const MPoly& f, std::size_t v) {
  return coefficients_in(f, v).back();
}

inline MPoly var_power(const Universe& u, std::size_t v, std::uint32_t k) {
  Monomial m(u->size());
  m.set(v, k);
  return MPoly::term(u, std::move(m), GaussRat(1));
}

// lc(B)^(deg A - deg B + 1) * A  reduced modulo B, as polynomials in v.
inline MPoly pseudo_remainder(const MPoly& a, const MPoly& b, std::size_t v) {
  const std::uint32_t nb = b.degree_in(v);
  const MPoly lcb = leading_coefficient_in(b, v);
  MPoly r = a;
  int e = static_cast<int>(a.degree_in(v)) - static_cast<int>(nb) + 1;
  while (!r.is_zero() && r.degree_in(v) >= nb) {
    const std::uint32_t dr = r.degree_in(v);
    MPoly lcr = leading_coefficient_in(r, v);
    r = lcb * r - lcr * var_power(a.universe(), v, dr - nb) * b;
    --e;
  }
  return e > 0 ? lcb.pow(static_cast<unsigned>(e)) * r : r;
}

inline MPoly gcd_rec(const MPoly& f, const MPoly& g);

// gcd of the coefficients of f viewed as a polynomial in v.
inline MPoly content_in(const MPoly& f, std::size_t v) {
  MPoly c(f.universe());
  for (const MPoly& coef : coefficients_in(f, v)) {
    if (coef.is_zero()) continue;
    c = c.is_zero() ? coef : gcd_rec(c, coef);
    if (c.is_constant()) return MPoly(f.universe(), GaussRat(1));
  }
  return c;
}

inline MPoly primitive_part_in(const MPoly& f, std::size_t v) {
  return divide_exactly(f, content_in(f, v));
}

// Subresultant PRS for two polynomials primitive in v with positive degree.
inline MPoly subresultant_gcd(MPoly a, MPoly b, std::size_t v) {
  const Universe& u = a.universe();
  if (a.degree_in(v) < b.degree_in(v)) std::swap(a, b);
  MPoly g(u, GaussRat(1)), h(u, GaussRat(1));
  for (;;) {
    const unsigned d = a.degree_in(v) - b.degree_in(v);
    MPoly r = pseudo_remainder(a, b, v);
    if (r.is_zero()) break;
    if (r.degree_in(v) == 0) return MPoly(u, GaussRat(1));
    a = std::move(b);
    b = divide_exactly(r, g * h.pow(d));
    g = leading_coefficient_in(a, v);
    if (d == 1) {
      h = g;
    } else if (d > 1) {
      h = divide_exactly(g.pow(d), h.pow(d - 1));
    }
  }
  return primitive_part_in(b, v);
}

// Some associate of gcd(f, g); recursion over the lowest-index variable present.
inline MPoly gcd_rec(const MPoly& f, const MPoly& g) {
  if (f.is_zero()) return g;
  if (g.is_zero()) return f;
  if (f.is_constant() || g.is_constant()) return MPoly(f.universe(), GaussRat(1));
  std::size_t v = 0;
  while (!f.depends_on(v) && !g.depends_on(v)) ++v;
  if (!f.depends_on(v)) return gcd_rec(f, content_in(g, v));
  if (!g.depends_on(v)) return gcd_rec(content_in(f, v), g);
  MPoly cf = content_in(f, v);
  MPoly cg = content_in(g, v);
  MPoly c = gcd_rec(cf, cg);
  MPoly h = subresultant_gcd(divide_exactly(f, cf), divide_exactly(g, cg), v);
  return c * h;
}

}  // namespace detail

/// Greatest common divisor with leading coefficient 1 under grevlex. Zero
/// inputs are ignored; at least one input must be nonzero.
inline MPoly multivar_gcd(std::span<const MPoly> fs) {
  if (fs.empty()) throw InvalidArgument("multivar_gcd: empty input");
  MPoly g(fs.front().universe());
  for (const MPoly& f : fs) {
    require_same_universe(g, f);
    if (f.is_zero()) continue;
    g = g.is_zero() ? f : detail::gcd_rec(g, f);
    if (g.is_constant()) return MPoly(g.universe(), GaussRat(1));
  }
  if (g.is_zero()) throw InvalidArgument("multivar_gcd: all inputs are zero");
  return g.monic();
}

inline MPoly multivar_gcd(const std::vector<MPoly>& fs) { return multivar_gcd(std::span<const MPoly>(fs)); }

inline MPoly gcd(const MPoly& f, const MPoly& g) { return multivar_gcd(std::vector<MPoly>{f, g}); }

/// Product of the distinct irreducible factors of f, monic.
/// f / gcd(f, df/dx_1, ..., df/dx_m).
inline MPoly squarefree_part(const MPoly& f) {
  if (f.is_zero()) throw InvalidArgument("squarefree_part of the zero polynomial");
  if (f.is_constant()) return MPoly(f.universe(), GaussRat(1));
  std::vector<MPoly> parts{f};
  for (std::size_t v = 0; v < f.nvars(); ++v)
    if (f.depends_on(v)) parts.push_back(differentiate(f, v));
  return divide_exactly(f, multivar_gcd(parts)).monic();
}

// True when every irreducible factor of g divides f: squarefree(g) | f^k
// for k large enough, tested as squarefree(g) | squarefree(f).
inline bool radical_divides(const MPoly& g, const MPoly& f) {
  if (g.is_constant()) return true;
  if (f.is_zero()) return true;
  return divides(squarefree_part(g), squarefree_part(f));
}

}  // namespace crtrans
