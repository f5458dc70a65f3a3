#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "crtrans/mpoly.hpp"

namespace crtrans {

/// Product of a and b with every monomial of total degree > K discarded
/// before it is formed.
inline MPoly trunc_mul(const MPoly& a, const MPoly& b, int K) {
  require_same_universe(a, b);
  MPoly r(a.universe());
  if (a.is_zero() || b.is_zero() || K < 0) return r;
  std::vector<std::vector<std::pair<const Monomial*, const GaussRat*>>> by_degree(K + 1);
  for (const auto& [m, c] : b.terms())
    if (static_cast<int>(m.degree()) <= K) by_degree[m.degree()].emplace_back(&m, &c);
  for (const auto& [ma, ca] : a.terms()) {
    const int room = K - static_cast<int>(ma.degree());
    for (int d = 0; d <= room; ++d)
      for (const auto& [mb, cb] : by_degree[d]) r.add_term(ma * *mb, ca * *cb);
  }
  return r;
}

/// Polynomial carrying a truncation order: only monomials of total degree
/// <= order are meaningful.
class TruncSeries {
 public:
  TruncSeries(MPoly poly, int order) : poly_(poly.truncated(order)), order_(order) {}

  const MPoly& poly() const { return poly_; }
  int order() const { return order_; }
  const Universe& universe() const { return poly_.universe(); }

  friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
    return {a.poly_ + b.poly_, std::min(a.order_, b.order_)};
  }
  friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) {
    return {a.poly_ - b.poly_, std::min(a.order_, b.order_)};
  }
  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
    const int k = std::min(a.order_, b.order_);
    return {trunc_mul(a.poly_, b.poly_, k), k};
  }

  // Equality up to the common order.
  friend bool operator==(const TruncSeries& a, const TruncSeries& b) {
    const int k = std::min(a.order_, b.order_);
    return a.poly_.truncated(k) == b.poly_.truncated(k);
  }

 private:
  MPoly poly_;
  int order_;
};

inline MPoly trunc_pow(const MPoly& f, unsigned e, int K) {
  MPoly r(f.universe(), GaussRat(1));
  for (unsigned k = 0; k < e; ++k) r = trunc_mul(r, f, K);
  return r.truncated(K);
}

/// substitute() followed by truncation at degree K, computed without forming
/// the high-degree terms. Replacements should have no constant term for the
/// truncation to be compatible with composition.
inline MPoly trunc_substitute(const MPoly& f, const std::vector<std::optional<MPoly>>& repl, int K) {
  if (repl.size() != f.nvars()) throw InvalidArgument("trunc_substitute: assignment size mismatch");
  for (const auto& r : repl)
    if (r && !same_universe(r->universe(), f.universe()))
      throw UniverseMismatch("trunc_substitute: replacements must share the universe of f");
  const Universe& u = f.universe();
  std::vector<std::vector<MPoly>> powers(repl.size());
  auto power = [&](std::size_t v, std::uint32_t e) -> const MPoly& {
    auto& cache = powers[v];
    if (cache.empty()) cache.emplace_back(u, GaussRat(1));
    while (cache.size() <= e) cache.push_back(trunc_mul(cache.back(), *repl[v], K));
    return cache[e];
  };
  MPoly result(u);
  for (const auto& [m, c] : f.terms()) {
    Monomial kept(u->size());
    for (std::size_t v = 0; v < m.size(); ++v)
      if (!repl[v] && m[v]) kept.set(v, m[v]);
    if (static_cast<int>(kept.degree()) > K) continue;
    MPoly t = MPoly::term(u, kept, c);
    for (std::size_t v = 0; v < m.size() && !t.is_zero(); ++v)
      if (repl[v] && m[v]) t = trunc_mul(t, power(v, m[v]), K);
    result += t;
  }
  return result;
}

class DegenerateLinearCoefficient : public Error {
 public:
  DegenerateLinearCoefficient() : Error("implicit solve: linear coefficient of the solve variable vanishes at 0") {}
};

class NotThroughZero : public Error {
 public:
  NotThroughZero() : Error("implicit solve: polynomial does not vanish at the origin") {}
};

/// Solves rho(..., x_v = theta, ...) = 0 for a series theta in the remaining
/// variables, correct through total degree K. Degree d of theta is fixed at
/// step d from the degree-d part of the residual.
inline TruncSeries implicit_solve(const MPoly& rho, std::size_t solve_var, int K) {
  if (!rho.constant_term().is_zero()) throw NotThroughZero();
  const GaussRat lin = differentiate(rho, solve_var).constant_term();
  if (lin.is_zero()) throw DegenerateLinearCoefficient();
  const GaussRat inv = GaussRat(1) / lin;
  std::vector<std::optional<MPoly>> repl(rho.nvars());
  MPoly theta(rho.universe());
  for (int d = 1; d <= K; ++d) {
    repl[solve_var] = theta;
    MPoly residual = trunc_substitute(rho, repl, d);
    theta -= residual.homogeneous_part(d) * inv;
  }
  return {theta, K};
}

// rho(x_v := theta) without truncation; zero iff theta solves rho exactly.
inline MPoly exact_residual(const MPoly& rho, std::size_t solve_var, const MPoly& theta) {
  std::vector<std::optional<MPoly>> repl(rho.nvars());
  repl[solve_var] = theta;
  return substitute(rho, repl);
}

}  // namespace crtrans
