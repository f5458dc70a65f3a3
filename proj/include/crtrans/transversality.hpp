#pragma once

#include <optional>
#include <string>
#include <vector>

#include "crtrans/geometry.hpp"
#include "crtrans/maps.hpp"

namespace crtrans {

class MapDoesNotPreserve : public Error {
 public:
  explicit MapDoesNotPreserve(MPoly remainder)
      : Error("the map does not send the source into the target: pullback mod rho = " + remainder.to_string()),
        remainder_(std::move(remainder)) {}
  const MPoly& remainder() const { return remainder_; }

 private:
  MPoly remainder_;
};

/// The factor a in rho'(H(Z), Hbar(xi)) = a(Z, xi) * rho(Z, xi).
struct TransFactor {
  Hypersurface source;
  Hypersurface target;
  HoloMap map;
  MPoly pullback;
  MPoly a;
};

/// rho'(H(Z), Hbar(xi)) as a polynomial in the source universe.
inline MPoly pullback(const Hypersurface& target, const HoloMap& H) {
  const Universe& tu = target.universe();
  std::vector<std::optional<MPoly>> repl(tu->size());
  for (std::size_t k = 0; k < H.components().size(); ++k) {
    repl[k] = H.components()[k];
    repl[tu->partner(k)] = bar_involution(H.components()[k]);
  }
  return substitute(target.rho(), repl);
}

inline TransFactor compute_a(const Hypersurface& M, const Hypersurface& Mp, const HoloMap& H) {
  if (H.source_dim() != M.dim() || H.target_dim() != Mp.dim())
    throw InvalidArgument("compute_a: map dimensions do not match the hypersurfaces");
  if (!same_universe(H.universe(), M.universe())) throw UniverseMismatch("compute_a: map and source universes differ");
  MPoly pb = pullback(Mp, H);
  auto a = exact_divide(pb, M.rho());
  if (!a) throw MapDoesNotPreserve(divide_with_remainder(pb, M.rho()).remainder);
  if (!is_hermitian(*a)) throw InternalConsistencyError("compute_a: the factor a is not Hermitian");
  return TransFactor{M, Mp, H, std::move(pb), *std::move(a)};
}

enum class Transversality { Transversal, NotTransversal };

inline const char* to_string(Transversality t) {
  return t == Transversality::Transversal ? "Transversal" : "NotTransversal";
}

/// Transversal at 0 iff a(0, 0) != 0.
inline Transversality transversal_at_origin(const TransFactor& T) {
  return T.a.constant_term().is_zero() ? Transversality::NotTransversal : Transversality::Transversal;
}

/// a evaluated at (p, conj p) for a point p of M, given in source coordinates.
inline Transversality transversal_at_point(const TransFactor& T, std::span<const GaussRat> p) {
  const std::size_t m = T.source.dim() + 1;
  if (p.size() != m) throw InvalidArgument("transversal_at_point: point has wrong dimension");
  std::vector<GaussRat> full(p.begin(), p.end());
  for (const auto& c : p) full.push_back(c.conj());
  if (!evaluate(T.source.rho(), full).is_zero()) throw PointNotOnHypersurface("point does not lie on M");
  return evaluate(T.a, full).is_zero() ? Transversality::NotTransversal : Transversality::Transversal;
}

/// a is not a multiple of rho: its restriction to the Segre graph is nonzero.
/// Exact for polynomial graphs and tau-free a; otherwise through order K.
inline bool nonvanishing_mod_rho(const TransFactor& T, int K = 8) {
  return !segre_substitute_truncated(T.source, T.a, K).poly().is_zero();
}

/// a restricted to the Segre graph, written as B(Z) * Cbar(xi) * cofactor.
struct LocusDecomposition {
  MPoly restricted_a;
  MPoly B;
  MPoly Cbar;
  MPoly cofactor;
  GaussRat cofactor_at_origin;
  bool split_ok = false;  // cofactor is a unit at the origin
  std::string note;
  // 2N - r <= 2n - 2 and H of generic rank n+1: the locus structure theorem applies.
  bool hypotheses_hold = false;
  std::optional<bool> B_divides_minors;
  std::optional<bool> C_divides_minors;
  std::optional<bool> hermitian_symmetric;  // sqf(B) == sqf(bar Cbar)
  std::vector<std::string> components;
};

inline int codim_excess(std::size_t N, std::size_t r) { return 2 * static_cast<int>(N) - static_cast<int>(r); }

/// Splits the Segre restriction of a by content extraction: B is the gcd of
/// its coefficients as a polynomial in xi, Cbar the gcd of the remaining
/// coefficients as a polynomial in Z. Divisibility of the maximal minors by
/// the square-free parts of B and C = bar(Cbar) is checked and reported.
inline LocusDecomposition decompose_locus(const TransFactor& T, const MinorTable& minors) {
  if (transversal_at_origin(T) == Transversality::Transversal)
    throw PreconditionViolated("decompose_locus: the map is transversal at 0");
  if (!nonvanishing_mod_rho(T)) throw PreconditionViolated("decompose_locus: a is a multiple of rho");
  const Universe& u = T.source.universe();
  const std::size_t n = T.source.dim();
  LocusDecomposition out;
  const std::size_t r = levi_rank(T.target).restricted_rank;
  out.hypotheses_hold = codim_excess(T.target.dim(), r) <= 2 * static_cast<int>(n) - 2 && generic_rank(minors) == n + 1;

  const MPoly one(u, GaussRat(1));
  if (T.a.depends_on(T.source.tau_index()) && !T.source.polynomial_graph()) {
    out.restricted_a = T.a;
    out.B = one;
    out.Cbar = one;
    out.cofactor = T.a;
    out.cofactor_at_origin = T.a.constant_term();
    out.note = "a depends on tau and the Segre graph is not polynomial; no split attempted";
    return out;
  }
  out.restricted_a = segre_substitute(T.source, T.a);

  const auto by_xi = split_variables(out.restricted_a, [&](std::size_t v) { return u->is_xi(v); });
  std::vector<MPoly> z_coeffs;
  for (const auto& [key, coeff] : by_xi) z_coeffs.push_back(coeff);
  out.B = multivar_gcd(z_coeffs);
  const MPoly rest = divide_exactly(out.restricted_a, out.B);
  const auto by_z = split_variables(rest, [&](std::size_t v) { return u->is_z(v); });
  std::vector<MPoly> xi_coeffs;
  for (const auto& [key, coeff] : by_z) xi_coeffs.push_back(coeff);
  out.Cbar = multivar_gcd(xi_coeffs);
  out.cofactor = divide_exactly(rest, out.Cbar);
  if (out.B * out.Cbar * out.cofactor != out.restricted_a)
    throw InternalConsistencyError("decompose_locus: product identity fails");
  out.cofactor_at_origin = out.cofactor.constant_term();
  out.split_ok = !out.cofactor_at_origin.is_zero();
  if (!out.split_ok) out.note = "cofactor vanishes at the origin: no B(Z)*Cbar(xi) split";

  const MPoly C = bar_involution(out.Cbar);
  const auto deltas = minors.nonzero_values(n + 1);
  if (!deltas.empty()) {
    const MPoly sb = squarefree_part(out.B);
    const MPoly sc = squarefree_part(C);
    out.B_divides_minors = true;
    out.C_divides_minors = true;
    for (const MPoly& d : deltas) {
      if (!divides(sb, d)) out.B_divides_minors = false;
      if (!divides(sc, d)) out.C_divides_minors = false;
    }
    out.hermitian_symmetric = sb == sc;
    if (!sb.is_constant())
      out.components.push_back("{(Z,xi): " + sb.to_string() + " = 0, xi in conjugate Segre variety of Z}");
    if (!out.Cbar.is_constant())
      out.components.push_back("{(Z,xi): " + squarefree_part(out.Cbar).to_string() +
                               " = 0, Z in Segre variety of conj(xi)}");
  }
  return out;
}

enum class TheoremId { T1_1, T1_3, T1_5, T3_6, T4_1 };

inline std::string to_string(TheoremId id) {
  switch (id) {
    case TheoremId::T1_1: return "T1.1";
    case TheoremId::T1_3: return "T1.3";
    case TheoremId::T1_5: return "T1.5";
    case TheoremId::T3_6: return "T3.6";
    case TheoremId::T4_1: return "T4.1";
  }
  return "?";
}

enum class Outcome { Holds, Fails, Inconclusive };

inline const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Holds: return "holds";
    case Outcome::Fails: return "fails";
    case Outcome::Inconclusive: return "inconclusive";
  }
  return "?";
}

struct Hypothesis {
  std::string name;
  Outcome outcome = Outcome::Inconclusive;
  std::string detail;
};

struct TheoremVerdict {
  TheoremId id = TheoremId::T1_1;
  std::optional<std::size_t> s;
  std::vector<Hypothesis> hypotheses;
  bool guaranteed = false;  // every hypothesis holds, so transversality at 0 is implied
  Transversality direct = Transversality::NotTransversal;

  std::string label() const { return to_string(id) + (s ? "(s=" + std::to_string(*s) + ")" : ""); }
};

struct AnalysisOptions {
  int trunc = 8;
  int degree_cap = 20;
};

/// Everything the theorem checks consume, computed once.
struct TransReport {
  std::size_t n = 0;
  std::size_t N = 0;
  TransFactor factor;
  Transversality at_origin = Transversality::NotTransversal;
  LeviData levi_source{};
  LeviData levi_target{};
  int two_N_minus_r = 0;
  MinorTable minors{};
  std::size_t generic_rank = 0;
  std::optional<CodimResult> wh{};  // set when generic rank is n+1
  std::vector<std::optional<CodimResult>> whs{};  // index s-1; nullopt when s exceeds the generic rank
  std::vector<std::optional<MixedMinorResult>> mixed{};  // index s-1
  FiniteTypeResult finite_type{};
  FiniteMapResult finite_map{};
  bool nonvanishing_mod_rho = false;
  std::optional<LocusDecomposition> locus{};
  std::optional<std::string> locus_skipped{};
  std::vector<TheoremVerdict> theorems{};
};

namespace detail {

inline Hypothesis inequality(const std::string& text, int lhs, int rhs) {
  return {text, lhs <= rhs ? Outcome::Holds : Outcome::Fails,
          "2N-r = " + std::to_string(lhs) + ", bound = " + std::to_string(rhs)};
}

inline Hypothesis finite_type_hypothesis(const FiniteTypeResult& ft) {
  if (ft.verdict == FiniteTypeVerdict::FiniteType) return {"M of finite type at p", Outcome::Holds, "Q(z,chi,0) != 0"};
  return {"M of finite type at p", ft.exact ? Outcome::Fails : Outcome::Inconclusive,
          "Q(z,chi,0) = 0 through order " + std::to_string(ft.order)};
}

inline Hypothesis generic_rank_hypothesis(const TransReport& r) {
  return {"generic rank n+1", r.generic_rank == r.n + 1 ? Outcome::Holds : Outcome::Fails,
          "generic rank = " + std::to_string(r.generic_rank)};
}

inline std::string codim_detail(const MPoly& gcd, const std::optional<MPoly>& witness) {
  return "gcd = " + gcd.to_string() + (witness ? ", witness = " + witness->to_string() : "");
}

}  // namespace detail

/// Hypotheses and verdict of one theorem on precomputed data. Throws
/// InternalConsistencyError if a guarantee contradicts the direct check.
inline TheoremVerdict evaluate_theorem(TheoremId id, const TransReport& r, std::optional<std::size_t> s = std::nullopt) {
  TheoremVerdict v;
  v.id = id;
  v.direct = r.at_origin;
  const int n = static_cast<int>(r.n);
  const int excess = r.two_N_minus_r;
  auto& hs = v.hypotheses;
  if ((id == TheoremId::T1_5 || id == TheoremId::T4_1)) {
    if (!s || *s < 1 || *s > r.n + 1) throw InvalidArgument(to_string(id) + " needs s in 1..n+1");
    v.s = s;
  }

  switch (id) {
    case TheoremId::T1_1:
      hs.push_back(detail::inequality("2N-r <= 2n-2", excess, 2 * n - 2));
      hs.push_back(detail::generic_rank_hypothesis(r));
      if (r.wh) {
        hs.push_back({"W_H has codimension >= 2 at p", r.wh->codim_ge2 ? Outcome::Holds : Outcome::Fails,
                      detail::codim_detail(r.wh->gcd, r.wh->witness)});
      } else {
        hs.push_back({"W_H has codimension >= 2 at p", Outcome::Fails, "W_H is not a proper subvariety"});
      }
      break;
    case TheoremId::T1_3: {
      hs.push_back(detail::inequality("2N-r <= 2n-3", excess, 2 * n - 3));
      hs.push_back(detail::finite_type_hypothesis(r.finite_type));
      Outcome o = r.finite_map.verdict == FiniteMapVerdict::Finite      ? Outcome::Holds
                  : r.finite_map.verdict == FiniteMapVerdict::NotFinite ? Outcome::Fails
                                                                        : Outcome::Inconclusive;
      hs.push_back({"H finite at p", o, r.finite_map.detail});
      break;
    }
    case TheoremId::T1_5: {
      hs.push_back(detail::finite_type_hypothesis(r.finite_type));
      hs.push_back(detail::inequality("2N-r <= n+s-3", excess, n + static_cast<int>(*s) - 3));
      hs.push_back(detail::generic_rank_hypothesis(r));
      const auto& c = r.whs[*s - 1];
      if (c) {
        hs.push_back({"W_H^s has codimension >= 2 at p", c->codim_ge2 ? Outcome::Holds : Outcome::Fails,
                      detail::codim_detail(c->gcd, c->witness)});
      } else {
        hs.push_back({"W_H^s has codimension >= 2 at p", Outcome::Fails, "all s x s minors vanish identically"});
      }
      break;
    }
    case TheoremId::T3_6:
      hs.push_back(detail::inequality("2N-r <= 2n-2", excess, 2 * n - 2));
      hs.push_back(detail::generic_rank_hypothesis(r));
      if (r.wh) {
        hs.push_back({"maximal minors have no common divisor vanishing at p",
                      r.wh->codim_ge2 ? Outcome::Holds : Outcome::Fails, detail::codim_detail(r.wh->gcd, r.wh->witness)});
      } else {
        hs.push_back({"maximal minors have no common divisor vanishing at p", Outcome::Fails, "no nonzero maximal minor"});
      }
      break;
    case TheoremId::T4_1: {
      hs.push_back(detail::inequality("2N-r <= n+s-3", excess, n + static_cast<int>(*s) - 3));
      hs.push_back(detail::finite_type_hypothesis(r.finite_type));
      hs.push_back(detail::generic_rank_hypothesis(r));
      const auto& m = r.mixed[*s - 1];
      if (m) {
        hs.push_back({"some minor of size >= s is prime to every common divisor of the maximal minors",
                      m->holds ? Outcome::Holds : Outcome::Fails, detail::codim_detail(m->gcd, m->witness)});
      } else {
        hs.push_back({"some minor of size >= s is prime to every common divisor of the maximal minors", Outcome::Fails,
                      "generic rank below n+1"});
      }
      break;
    }
  }
  v.guaranteed = true;
  for (const auto& h : hs)
    if (h.outcome != Outcome::Holds) v.guaranteed = false;
  if (v.guaranteed && v.direct != Transversality::Transversal)
    throw InternalConsistencyError(v.label() + " guarantees transversality but a(0,0) = 0");
  return v;
}

/// Runs every analysis on (M, M', H) and evaluates all theorem checks
/// (T1.5 and T4.1 for each s = 1..n+1).
inline TransReport full_report(const Hypersurface& M, const Hypersurface& Mp, const HoloMap& H,
                               const AnalysisOptions& opts = {}) {
  TransReport r{.factor = compute_a(M, Mp, H)};
  r.n = M.dim();
  r.N = Mp.dim();
  r.at_origin = transversal_at_origin(r.factor);
  r.levi_source = levi_rank(M);
  r.levi_target = levi_rank(Mp);
  r.two_N_minus_r = codim_excess(r.N, r.levi_target.restricted_rank);
  r.minors = minor_table(H);
  r.generic_rank = generic_rank(r.minors);
  const bool full_rank = r.generic_rank == r.n + 1;
  if (full_rank) r.wh = wh_codim_ge2(r.minors);
  for (std::size_t s = 1; s <= r.n + 1; ++s) {
    if (s <= r.generic_rank) {
      r.whs.push_back(whs_codim_ge2(r.minors, s));
    } else {
      r.whs.push_back(std::nullopt);
    }
    r.mixed.push_back(full_rank ? std::optional(mixed_minor_condition(r.minors, s)) : std::nullopt);
  }
  r.finite_type = finite_type_check(M, opts.trunc);
  r.finite_map = finite_map_test(H, opts.degree_cap);
  r.nonvanishing_mod_rho = nonvanishing_mod_rho(r.factor, opts.trunc);
  if (r.at_origin == Transversality::NotTransversal) {
    if (r.nonvanishing_mod_rho) {
      r.locus = decompose_locus(r.factor, r.minors);
    } else {
      r.locus_skipped = "a vanishes on the complexified source";
    }
  }
  r.theorems.push_back(evaluate_theorem(TheoremId::T1_1, r));
  r.theorems.push_back(evaluate_theorem(TheoremId::T1_3, r));
  for (std::size_t s = 1; s <= r.n + 1; ++s) r.theorems.push_back(evaluate_theorem(TheoremId::T1_5, r, s));
  r.theorems.push_back(evaluate_theorem(TheoremId::T3_6, r));
  for (std::size_t s = 1; s <= r.n + 1; ++s) r.theorems.push_back(evaluate_theorem(TheoremId::T4_1, r, s));
  return r;
}

inline TheoremVerdict evaluate_theorem(TheoremId id, const Hypersurface& M, const Hypersurface& Mp, const HoloMap& H,
                                       std::optional<std::size_t> s = std::nullopt, const AnalysisOptions& opts = {}) {
  return evaluate_theorem(id, full_report(M, Mp, H, opts), s);
}

}  // namespace crtrans
