#pragma once

#include <optional>
#include <string>
#include <vector>

#include "crtrans/gcd.hpp"
#include "crtrans/groebner.hpp"
#include "crtrans/linalg.hpp"
#include "crtrans/mpoly.hpp"

namespace crtrans {

/// Polynomial holomorphic map (C^{n+1}, 0) -> (C^{N+1}, 0). Components live in
/// the source universe and use Z-block variables only.
class HoloMap {
 public:
  HoloMap(std::size_t source_dim, std::size_t target_dim, std::vector<MPoly> components)
      : n_(source_dim), N_(target_dim), comps_(std::move(components)) {
    if (comps_.size() != N_ + 1)
      throw InvalidArgument("map needs " + std::to_string(N_ + 1) + " components, got " + std::to_string(comps_.size()));
    for (const MPoly& c : comps_) {
      require_same_universe(c, comps_.front());
      if (!c.z_only()) throw InvalidArgument("map component depends on xi variables: " + c.to_string());
      if (!c.constant_term().is_zero()) throw InvalidArgument("map does not send 0 to 0: " + c.to_string());
    }
    if (comps_.front().universe()->z_count() != n_ + 1)
      throw InvalidArgument("map universe does not match the source dimension");
  }

  std::size_t source_dim() const { return n_; }
  std::size_t target_dim() const { return N_; }
  const std::vector<MPoly>& components() const { return comps_; }
  const Universe& universe() const { return comps_.front().universe(); }

 private:
  std::size_t n_;
  std::size_t N_;
  std::vector<MPoly> comps_;
};

/// (N+1) x (n+1) matrix of partials dH_i / dZ_j.
inline PolyMatrix jacobian(const HoloMap& H) {
  PolyMatrix J;
  for (const MPoly& c : H.components()) {
    std::vector<MPoly> row;
    for (std::size_t j = 0; j <= H.source_dim(); ++j) row.push_back(differentiate(c, j));
    J.push_back(std::move(row));
  }
  return J;
}

struct Minor {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
  MPoly value;
  bool nonzero() const { return !value.is_zero(); }
};

/// All k x k minors of the Jacobian, k = 1..n+1, sorted by (rows, cols).
struct MinorTable {
  std::size_t n = 0;
  std::size_t N = 0;
  std::vector<std::vector<Minor>> by_size;  // by_size[k-1]

  const std::vector<Minor>& of_size(std::size_t k) const { return by_size.at(k - 1); }

  std::vector<MPoly> nonzero_values(std::size_t k) const {
    std::vector<MPoly> out;
    for (const Minor& m : of_size(k))
      if (m.nonzero()) out.push_back(m.value);
    return out;
  }
};

inline MinorTable minor_table(const PolyMatrix& J, std::size_t n, std::size_t N) {
  MinorTable t;
  t.n = n;
  t.N = N;
  for (std::size_t k = 1; k <= n + 1; ++k) {
    std::vector<Minor> minors;
    for (const auto& rows : k_subsets(N + 1, k))
      for (const auto& cols : k_subsets(n + 1, k))
        minors.push_back({rows, cols, determinant(submatrix(J, rows, cols))});
    t.by_size.push_back(std::move(minors));
  }
  return t;
}

inline MinorTable minor_table(const HoloMap& H) {
  return minor_table(jacobian(H), H.source_dim(), H.target_dim());
}

/// Largest k with a k x k minor not identically zero (0 for a constant map).
inline std::size_t generic_rank(const MinorTable& t) {
  for (std::size_t k = t.n + 1; k >= 1; --k)
    for (const Minor& m : t.of_size(k))
      if (m.nonzero()) return k;
  return 0;
}

inline std::size_t generic_rank(const HoloMap& H) { return generic_rank(minor_table(H)); }

/// Outcome of the germ criterion "codimension >= 2 at 0": the gcd of the
/// minors does not vanish at the origin. When it does, `witness` holds its
/// square-free part, the reduced equation of the codimension-one part.
struct CodimResult {
  bool codim_ge2 = false;
  MPoly gcd;
  std::optional<MPoly> witness;
};

class DegenerateRank : public Error {
 public:
  using Error::Error;
};

namespace detail {
inline CodimResult codim_from_gcd(MPoly g) {
  CodimResult r;
  r.codim_ge2 = !g.constant_term().is_zero();
  if (!r.codim_ge2) r.witness = squarefree_part(g);
  r.gcd = std::move(g);
  return r;
}
}  // namespace detail

/// W_H^s = {rank H_Z < s}: gcd-at-origin test over all s x s minors.
inline CodimResult whs_codim_ge2(const MinorTable& t, std::size_t s) {
  if (s < 1 || s > t.n + 1) throw InvalidArgument("s must lie in 1..n+1");
  const auto minors = t.nonzero_values(s);
  if (minors.empty())
    throw DegenerateRank("all " + std::to_string(s) + "x" + std::to_string(s) + " minors vanish identically");
  return detail::codim_from_gcd(multivar_gcd(minors));
}

/// W_H = W_H^{n+1}; requires generic rank n+1.
inline CodimResult wh_codim_ge2(const MinorTable& t) {
  if (generic_rank(t) != t.n + 1) throw PreconditionViolated("wh_codim_ge2: generic rank is below n+1");
  return whs_codim_ge2(t, t.n + 1);
}

struct MixedMinorResult {
  bool holds = false;
  MPoly gcd;
  std::optional<MPoly> witness;
};

/// gcd over the nonzero (n+1)-minors together with every nonzero k x k minor,
/// k >= s. Holds iff the gcd does not vanish at the origin, i.e. no
/// irreducible common divisor of the maximal minors through 0 divides all
/// minors of size >= s.
inline MixedMinorResult mixed_minor_condition(const MinorTable& t, std::size_t s) {
  if (s < 1 || s > t.n + 1) throw InvalidArgument("s must lie in 1..n+1");
  if (generic_rank(t) != t.n + 1) throw PreconditionViolated("mixed_minor_condition: generic rank is below n+1");
  std::vector<MPoly> all = t.nonzero_values(t.n + 1);
  for (std::size_t k = s; k <= t.n; ++k)
    for (MPoly& m : t.nonzero_values(k)) all.push_back(std::move(m));
  MixedMinorResult r;
  r.gcd = multivar_gcd(all);
  r.holds = !r.gcd.constant_term().is_zero();
  if (!r.holds) r.witness = squarefree_part(r.gcd);
  return r;
}

enum class FiniteMapVerdict { Finite, NotFinite, Inconclusive };
enum class FiniteMapCertificate { None, JacobianRank, ComponentGcd, ZeroDimensionalGroebner, AxisInFiber };

inline const char* to_string(FiniteMapVerdict v) {
  switch (v) {
    case FiniteMapVerdict::Finite: return "Finite";
    case FiniteMapVerdict::NotFinite: return "NotFinite";
    case FiniteMapVerdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

inline const char* to_string(FiniteMapCertificate c) {
  switch (c) {
    case FiniteMapCertificate::None: return "none";
    case FiniteMapCertificate::JacobianRank: return "jacobian_rank";
    case FiniteMapCertificate::ComponentGcd: return "component_gcd";
    case FiniteMapCertificate::ZeroDimensionalGroebner: return "zero_dimensional_groebner";
    case FiniteMapCertificate::AxisInFiber: return "axis_in_fiber";
  }
  return "?";
}

struct FiniteMapResult {
  FiniteMapVerdict verdict = FiniteMapVerdict::Inconclusive;
  FiniteMapCertificate certificate = FiniteMapCertificate::None;
  std::string detail;
  std::optional<MPoly> gcd;   // ComponentGcd
  std::vector<MPoly> basis;   // Groebner certificates
  std::optional<std::size_t> axis;
};

namespace detail {

inline std::size_t jacobian_rank_at_origin(const HoloMap& H) {
  return rank(evaluate(jacobian(H), origin(H.universe())));
}

// Z_v-axis {Z_k = 0, k != v} lies in the zero set of every polynomial.
inline bool axis_in_zero_set(const std::vector<MPoly>& polys, std::size_t v, std::size_t z_count) {
  const Universe& u = polys.front().universe();
  std::vector<std::optional<MPoly>> repl(u->size());
  for (std::size_t k = 0; k < z_count; ++k)
    if (k != v) repl[k] = MPoly(u);
  for (const MPoly& p : polys)
    if (!substitute(p, repl).is_zero()) return false;
  return true;
}

}  // namespace detail

/// Three-way finiteness test for the germ of H at 0. Paths, in order:
/// invertible Jacobian at 0; a common factor of the components vanishing at
/// 0; a Groebner basis either containing a pure power of every variable in
/// its leading terms, or vanishing on a coordinate axis. Every certificate is
/// re-verified before it is returned.
inline FiniteMapResult finite_map_test(const HoloMap& H, int degree_cap = 20) {
  FiniteMapResult out;
  const std::size_t m = H.source_dim() + 1;

  if (detail::jacobian_rank_at_origin(H) == m) {
    out.verdict = FiniteMapVerdict::Finite;
    out.certificate = FiniteMapCertificate::JacobianRank;
    out.detail = "H_Z(0) has rank " + std::to_string(m) + ": local embedding";
    return out;
  }

  std::vector<MPoly> comps;
  for (const MPoly& c : H.components())
    if (!c.is_zero()) comps.push_back(c);
  if (comps.empty()) {
    out.verdict = FiniteMapVerdict::NotFinite;
    out.certificate = FiniteMapCertificate::ComponentGcd;
    out.detail = "all components vanish identically";
    return out;
  }
  MPoly g = multivar_gcd(comps);
  if (!g.is_constant() && g.constant_term().is_zero()) {
    for (const MPoly& c : comps)
      if (!divides(g, c)) throw InternalConsistencyError("finite_map_test: component gcd does not divide a component");
    out.verdict = FiniteMapVerdict::NotFinite;
    out.certificate = FiniteMapCertificate::ComponentGcd;
    out.detail = "components share the factor " + g.to_string() + " vanishing at 0";
    out.gcd = std::move(g);
    return out;
  }

  GroebnerResult gb = buchberger(comps, degree_cap);
  if (!gb.complete) {
    out.detail = "Groebner basis not completed: " + gb.reason;
    return out;
  }
  if (!verify_groebner_basis(gb.basis, comps))
    throw InternalConsistencyError("finite_map_test: Groebner basis failed re-reduction");

  std::size_t pure = 0;
  for (std::size_t v = 0; v < m; ++v) {
    for (const MPoly& b : gb.basis) {
      const Monomial& lm = b.leading_monomial();
      if (lm[v] > 0 && lm.degree() == lm[v]) {
        ++pure;
        break;
      }
    }
  }
  if (pure == m) {
    out.verdict = FiniteMapVerdict::Finite;
    out.certificate = FiniteMapCertificate::ZeroDimensionalGroebner;
    out.detail = "leading terms contain a pure power of every variable";
    out.basis = std::move(gb.basis);
    return out;
  }
  for (std::size_t v = 0; v < m; ++v) {
    if (detail::axis_in_zero_set(gb.basis, v, m)) {
      if (!detail::axis_in_zero_set(comps, v, m))
        throw InternalConsistencyError("finite_map_test: axis certificate does not hold on the generators");
      out.verdict = FiniteMapVerdict::NotFinite;
      out.certificate = FiniteMapCertificate::AxisInFiber;
      out.axis = v;
      out.detail = "the " + H.universe()->name(v) + "-axis lies in H^{-1}(0)";
      out.basis = std::move(gb.basis);
      return out;
    }
  }
  out.detail = "no certificate found";
  out.basis = std::move(gb.basis);
  return out;
}

}  // namespace crtrans
