#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "crtrans/linalg.hpp"
#include "crtrans/mpoly.hpp"
#include "crtrans/series.hpp"

namespace crtrans {

enum class HypersurfaceDefect { WrongUniverse, NotHermitian, NotThroughOrigin, ZeroGradient };

inline const char* to_string(HypersurfaceDefect d) {
  switch (d) {
    case HypersurfaceDefect::WrongUniverse: return "WrongUniverse";
    case HypersurfaceDefect::NotHermitian: return "NotHermitian";
    case HypersurfaceDefect::NotThroughOrigin: return "NotThroughOrigin";
    case HypersurfaceDefect::ZeroGradient: return "ZeroGradient";
  }
  return "?";
}

class InvalidHypersurface : public Error {
 public:
  InvalidHypersurface(HypersurfaceDefect d, const std::string& detail)
      : Error(std::string(to_string(d)) + ": " + detail), defect_(d) {}
  HypersurfaceDefect defect() const { return defect_; }

 private:
  HypersurfaceDefect defect_;
};

class PointNotOnHypersurface : public Error {
 public:
  using Error::Error;
};

class NonPolynomialGraph : public Error {
 public:
  NonPolynomialGraph()
      : Error("Segre substitution: the hypersurface is not a polynomial graph over the solve variable") {}
};

// dRho/dZ_j at the origin, j = 1..m.
inline Vector z_gradient_at_origin(const MPoly& rho) {
  Vector g;
  for (std::size_t j = 0; j < rho.universe()->z_count(); ++j) g.push_back(differentiate(rho, j).constant_term());
  return g;
}

/// Complexified real hypersurface through the origin of C^{n+1}: a Hermitian
/// rho(Z, xi) with nonzero holomorphic gradient at 0.
class Hypersurface {
 public:
  std::size_t dim() const { return n_; }
  const MPoly& rho() const { return rho_; }
  const Universe& universe() const { return rho_.universe(); }

  // Z-block index j with dRho/dZ_j(0) != 0, the last one if several.
  std::size_t solve_index() const { return solve_; }
  // xi-block partner of solve_index(): the variable tau solved for in the
  // Segre substitution.
  std::size_t tau_index() const { return universe()->partner(solve_); }
  // Set when rho is affine-linear in Z_{solve_index}.
  std::optional<std::size_t> distinguished_w() const { return w_; }
  // rho = A*tau + B with A a nonzero constant: Segre substitution is polynomial.
  bool polynomial_graph() const { return polynomial_graph_; }

  friend Hypersurface validate_hypersurface(const MPoly& rho, std::size_t dim);

 private:
  Hypersurface(MPoly rho, std::size_t n) : rho_(std::move(rho)), n_(n) {}

  MPoly rho_;
  std::size_t n_;
  std::size_t solve_ = 0;
  std::optional<std::size_t> w_;
  bool polynomial_graph_ = false;
};

inline Hypersurface validate_hypersurface(const MPoly& rho, std::size_t dim) {
  const auto& u = *rho.universe();
  if (u.z_count() != dim + 1 || u.xi_count() != dim + 1)
    throw InvalidHypersurface(HypersurfaceDefect::WrongUniverse,
                              "universe must have " + std::to_string(dim + 1) + " Z and xi variables");
  if (!is_hermitian(rho)) throw InvalidHypersurface(HypersurfaceDefect::NotHermitian, "rho != bar(rho)");
  if (!rho.constant_term().is_zero())
    throw InvalidHypersurface(HypersurfaceDefect::NotThroughOrigin, "rho(0,0) = " + rho.constant_term().to_string());
  const Vector g = z_gradient_at_origin(rho);
  std::optional<std::size_t> pivot;
  for (std::size_t j = 0; j < g.size(); ++j)
    if (!g[j].is_zero()) pivot = j;
  if (!pivot) throw InvalidHypersurface(HypersurfaceDefect::ZeroGradient, "d_Z rho(0) = 0");

  Hypersurface m(rho, dim);
  m.solve_ = *pivot;
  if (rho.degree_in(*pivot) == 1) {
    m.w_ = *pivot;
    const auto coeffs = coefficients_in(rho, u.partner(*pivot));
    m.polynomial_graph_ = coeffs.size() == 2 && coeffs[1].is_constant();
  }
  return m;
}

/// rho(Z + p, xi + conj(p)) for a point p with rho(p, conj p) = 0.
inline MPoly translate_to_point(const MPoly& rho, std::span<const GaussRat> p) {
  const Universe& u = rho.universe();
  if (!u->symmetric() || p.size() != u->z_count()) throw InvalidArgument("translate: point has wrong dimension");
  std::vector<GaussRat> full;
  for (const auto& c : p) full.push_back(c);
  for (const auto& c : p) full.push_back(c.conj());
  if (!evaluate(rho, full).is_zero())
    throw PointNotOnHypersurface("base point does not lie on the hypersurface");
  std::vector<std::optional<MPoly>> repl(u->size());
  for (std::size_t v = 0; v < u->size(); ++v) repl[v] = MPoly::variable(u, v) + MPoly(u, full[v]);
  return substitute(rho, repl);
}

/// Levi data at the origin: the full (n+1)x(n+1) matrix rho_{Z xi}(0,0), a
/// basis of ker rho_Z(0), and the rank of the form restricted to it.
struct LeviData {
  Matrix full_matrix;
  std::vector<Vector> tangent_basis;
  Matrix restricted_matrix;
  std::size_t restricted_rank = 0;
};

inline LeviData levi_rank(const Hypersurface& M) {
  const MPoly& rho = M.rho();
  const auto& u = *rho.universe();
  const std::size_t m = u.z_count();
  LeviData out;
  out.full_matrix.assign(m, Vector(m, GaussRat(0)));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      Monomial mono(u.size());
      mono.set(i, 1);
      mono.set(u.xi_index(j), 1);
      out.full_matrix[i][j] = rho.coefficient(mono);
    }
  out.tangent_basis = kernel_of_covector(z_gradient_at_origin(rho));
  const auto& V = out.tangent_basis;
  out.restricted_matrix.assign(V.size(), Vector(V.size(), GaussRat(0)));
  for (std::size_t k = 0; k < V.size(); ++k)
    for (std::size_t l = 0; l < V.size(); ++l) {
      GaussRat s(0);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) s += V[k][i] * out.full_matrix[i][j] * V[l][j].conj();
      out.restricted_matrix[k][l] = s;
    }
  out.restricted_rank = rank(out.restricted_matrix);
  return out;
}

/// Graph form w = Q(z, chi, tau) in normal coordinates, to order K.
/// Coordinates: z = Z-slots 0..n-1, w = Z-slot n, chi = xi-slots, tau = last.
struct NormalForm {
  Universe universe;
  std::size_t n = 0;
  int order = 0;
  TruncSeries Q;
  Matrix linear_change;  // Z_old = L * (z', w')
  TruncSeries curve;     // t -> g(t) straightening M inside {z = 0}
  TruncSeries w_change;  // w_old' = W(z, w)
  bool exact = false;    // every series above is an exact polynomial solution

  std::size_t w_slot() const { return n; }
  std::size_t tau_slot() const { return 2 * n + 1; }
};

struct NormalFormCheck {
  bool z_side = false;   // Q(z, 0, tau) = tau
  bool chi_side = false; // Q(0, chi, tau) = tau
  bool reality = false;  // Q(z, chi, Qbar(chi, z, w)) = w
  bool ok() const { return z_side && chi_side && reality; }
};

inline NormalFormCheck check_normal_form(const MPoly& Q, std::size_t n, int K) {
  const Universe& u = Q.universe();
  const MPoly tau = MPoly::variable(u, 2 * n + 1);
  const MPoly w = MPoly::variable(u, n);
  NormalFormCheck c;
  std::vector<std::optional<MPoly>> chi_zero(u->size()), z_zero(u->size()), reality(u->size());
  for (std::size_t k = 0; k < n; ++k) {
    chi_zero[n + 1 + k] = MPoly(u);
    z_zero[k] = MPoly(u);
  }
  c.z_side = substitute(Q, chi_zero).truncated(K) == tau;
  c.chi_side = substitute(Q, z_zero).truncated(K) == tau;
  reality[2 * n + 1] = bar_involution(Q);
  c.reality = trunc_substitute(Q, reality, K) == w;
  return c;
}

namespace detail {

inline Universe normal_universe(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t k = 1; k <= n; ++k) names.push_back("z" + std::to_string(k));
  names.push_back("w");
  for (std::size_t k = 1; k <= n; ++k) names.push_back("chi" + std::to_string(k));
  names.push_back("tau");
  return std::make_shared<const VarUniverse>(n + 1, n + 1, std::move(names));
}

// Exactness probes substitute without truncation; skip them when the series
// are too large for that to be cheap.
inline bool small_enough(const MPoly& p) { return p.term_count() <= 64; }

}  // namespace detail

/// Normal coordinates to order K. Steps: a linear change putting the
/// gradient on w (scaled so its coefficient is imaginary); a curve
/// t -> g(t) with rho(0, g(t), 0, conj-g(t)) = 0; the change w = W(z, w')
/// solving rho(z, W, 0, conj-g(w')) = 0; then the implicit solve for w.
/// The result satisfies Q(z,0,tau) = Q(0,chi,tau) = tau and the reality
/// identity through degree K, checked before returning.
inline NormalForm normalize(const Hypersurface& M, int K) {
  if (K < 1) throw InvalidArgument("normalize: order must be positive");
  const std::size_t n = M.dim();
  const MPoly& rho = M.rho();
  const Universe& src = rho.universe();
  const Universe U = detail::normal_universe(n);
  const std::size_t w = n, tau = 2 * n + 1;

  // Linear change.
  const Vector g = z_gradient_at_origin(rho);
  const std::size_t pivot = M.solve_index();
  const GaussRat c = g[pivot];
  const GaussRat lambda = c.is_imaginary() ? GaussRat(1) : GaussRat::i() / c;
  Matrix L(n + 1, Vector(n + 1, GaussRat(0)));
  std::vector<std::optional<MPoly>> lin(src->size());
  {
    MPoly wz = MPoly::variable(U, w) * lambda;
    MPoly wx = MPoly::variable(U, tau) * lambda.conj();
    L[pivot][n] = lambda;
    std::size_t pos = 0;
    for (std::size_t k = 0; k <= n; ++k) {
      if (k == pivot) continue;
      const GaussRat ratio = g[k] / c;
      lin[k] = MPoly::variable(U, pos);
      lin[src->partner(k)] = MPoly::variable(U, n + 1 + pos);
      wz -= MPoly::variable(U, pos) * ratio;
      wx -= MPoly::variable(U, n + 1 + pos) * ratio.conj();
      L[k][pos] = GaussRat(1);
      L[pivot][pos] = -ratio;
      ++pos;
    }
    lin[pivot] = wz;
    lin[src->partner(pivot)] = wx;
  }
  const MPoly rho1 = substitute(rho, lin);
  const GaussRat lin_w = differentiate(rho1, w).constant_term();
  if (!lin_w.is_imaginary() || lin_w.is_zero())
    throw InternalConsistencyError("normalize: linear change did not produce an imaginary w-coefficient");
  const mpq_class y = lin_w.im();

  // Straighten the curve M ∩ {z = 0}.
  std::vector<std::optional<MPoly>> kill_z_chi(U->size());
  for (std::size_t k = 0; k < n; ++k) {
    kill_z_chi[k] = MPoly(U);
    kill_z_chi[n + 1 + k] = MPoly(U);
  }
  const MPoly r = substitute(rho1, kill_z_chi);
  MPoly curve = MPoly::variable(U, w);
  for (int d = 2; d <= K; ++d) {
    std::vector<std::optional<MPoly>> on_curve(U->size());
    on_curve[w] = curve;
    on_curve[tau] = conjugate_coefficients(curve);
    const MPoly R = trunc_substitute(r, on_curve, d);
    Monomial td(U->size());
    td.set(w, static_cast<std::uint32_t>(d));
    const GaussRat e = R.coefficient(td);
    if (!e.is_real()) throw InternalConsistencyError("normalize: curve residual is not real");
    curve += MPoly::term(U, td, GaussRat::i() * e / GaussRat(mpq_class(2 * y)));
  }
  bool exact = false;
  if (detail::small_enough(curve)) {
    std::vector<std::optional<MPoly>> on_curve(U->size());
    on_curve[w] = curve;
    on_curve[tau] = conjugate_coefficients(curve);
    exact = substitute(r, on_curve).is_zero();
  }

  // w = W(z, w'): solve rho1(z, W, 0, conj-g(t)) = 0 with t carried by the tau slot.
  std::vector<std::size_t> swap_w_tau(U->size());
  for (std::size_t v = 0; v < U->size(); ++v) swap_w_tau[v] = v;
  std::swap(swap_w_tau[w], swap_w_tau[tau]);
  std::vector<std::optional<MPoly>> to_curve(U->size());
  for (std::size_t k = 0; k < n; ++k) to_curve[n + 1 + k] = MPoly(U);
  to_curve[tau] = reembed(conjugate_coefficients(curve), U, swap_w_tau);
  const MPoly s = substitute(rho1, to_curve);
  const TruncSeries W_tau = implicit_solve(s, w, K);
  if (exact) exact = detail::small_enough(W_tau.poly()) && exact_residual(s, w, W_tau.poly()).is_zero();
  const MPoly W = reembed(W_tau.poly(), U, swap_w_tau);

  // Pull rho back and solve for w.
  std::vector<std::optional<MPoly>> change(U->size());
  change[w] = W;
  change[tau] = bar_involution(W);
  const MPoly rho2 = trunc_substitute(rho1, change, K);
  const TruncSeries Q = implicit_solve(rho2, w, K);
  if (exact) {
    const MPoly rho2_full = substitute(rho1, change);
    exact = detail::small_enough(Q.poly()) && exact_residual(rho2_full, w, Q.poly()).is_zero();
  }

  if (!check_normal_form(Q.poly(), n, K).ok())
    throw InternalConsistencyError("normalize: normal-form identities fail through order " + std::to_string(K));

  return NormalForm{U, n, K, Q, L, TruncSeries(curve, K), TruncSeries(W, K), exact};
}

enum class FiniteTypeVerdict { FiniteType, InfiniteTypeUpToOrder };

struct FiniteTypeResult {
  FiniteTypeVerdict verdict = FiniteTypeVerdict::InfiniteTypeUpToOrder;
  int order = 0;
  // FiniteType is always definitive; InfiniteTypeUpToOrder is definitive
  // when the normal form is an exact polynomial.
  bool exact = false;
  MPoly q_at_tau_zero;  // Q(z, chi, 0) through order K
};

/// Finite type at 0 iff Q(z, chi, 0) has a nonzero term of degree <= K.
inline FiniteTypeResult finite_type_check(const Hypersurface& M, int K) {
  const NormalForm nf = normalize(M, K);
  std::vector<std::optional<MPoly>> tau_zero(nf.universe->size());
  tau_zero[nf.tau_slot()] = MPoly(nf.universe);
  FiniteTypeResult out;
  out.order = K;
  out.q_at_tau_zero = substitute(nf.Q.poly(), tau_zero);
  if (!out.q_at_tau_zero.is_zero()) {
    out.verdict = FiniteTypeVerdict::FiniteType;
    out.exact = true;
  } else {
    out.verdict = FiniteTypeVerdict::InfiniteTypeUpToOrder;
    out.exact = nf.exact;
  }
  return out;
}

/// tau = theta(Z, chi) solving rho = 0 exactly; requires a polynomial graph.
inline MPoly segre_graph(const Hypersurface& M) {
  if (!M.polynomial_graph()) throw NonPolynomialGraph();
  const auto coeffs = coefficients_in(M.rho(), M.tau_index());
  return -coeffs[0] * (GaussRat(1) / coeffs[1].constant_term());
}

/// f restricted to the complexified hypersurface: tau replaced by the Segre
/// graph. Exact; throws NonPolynomialGraph when f involves tau and the graph
/// is not polynomial.
inline MPoly segre_substitute(const Hypersurface& M, const MPoly& f) {
  require_same_universe(M.rho(), f);
  if (!f.depends_on(M.tau_index())) return f;
  std::vector<std::optional<MPoly>> repl(f.nvars());
  repl[M.tau_index()] = segre_graph(M);
  return substitute(f, repl);
}

/// Segre substitution through order K for any valid hypersurface.
inline TruncSeries segre_substitute_truncated(const Hypersurface& M, const MPoly& f, int K) {
  require_same_universe(M.rho(), f);
  if (!f.depends_on(M.tau_index())) return {f, K};
  if (M.polynomial_graph()) return {segre_substitute(M, f), K};
  std::vector<std::optional<MPoly>> repl(f.nvars());
  repl[M.tau_index()] = implicit_solve(M.rho(), M.tau_index(), K).poly();
  return {trunc_substitute(f, repl, K), K};
}

}  // namespace crtrans
