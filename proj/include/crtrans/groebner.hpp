#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "crtrans/mpoly.hpp"

namespace crtrans {

/// Full reduction of f modulo a list of polynomials (grevlex).
inline MPoly normal_form(const MPoly& f, const std::vector<MPoly>& basis) {
  MPoly p = f, r(f.universe());
  while (!p.is_zero()) {
    const Monomial m = p.leading_monomial();
    const GaussRat c = p.leading_coefficient();
    bool reduced = false;
    for (const MPoly& g : basis) {
      if (g.leading_monomial().divides(m)) {
        p -= MPoly::term(f.universe(), m.quotient(g.leading_monomial()), c / g.leading_coefficient()) * g;
        reduced = true;
        break;
      }
    }
    if (!reduced) {
      r.add_term(m, c);
      p.add_term(m, -c);
    }
  }
  return r;
}

inline MPoly s_polynomial(const MPoly& f, const MPoly& g) {
  const Monomial l = f.leading_monomial().lcm(g.leading_monomial());
  const Universe& u = f.universe();
  return MPoly::term(u, l.quotient(f.leading_monomial()), GaussRat(1) / f.leading_coefficient()) * f -
         MPoly::term(u, l.quotient(g.leading_monomial()), GaussRat(1) / g.leading_coefficient()) * g;
}

struct GroebnerResult {
  std::vector<MPoly> basis;  // reduced and monic when complete
  bool complete = false;
  std::string reason;        // why the computation stopped early
};

/// Buchberger's algorithm with normal (lowest lcm degree first) pair selection,
/// the coprime-leading-monomial criterion, and a cap on basis-element degree.
inline GroebnerResult buchberger(const std::vector<MPoly>& generators, int degree_cap = 20) {
  GroebnerResult out;
  std::vector<MPoly> g;
  for (const MPoly& f : generators)
    if (!f.is_zero()) g.push_back(f.monic());
  if (g.empty()) {
    out.complete = true;
    return out;
  }
  for (const MPoly& f : g)
    if (f.total_degree() > degree_cap) {
      out.reason = "generator degree exceeds cap " + std::to_string(degree_cap);
      return out;
    }

  struct Pair {
    std::size_t i, j;
    std::uint32_t degree;
  };
  std::vector<Pair> pairs;
  auto add_pairs_for = [&](std::size_t k) {
    for (std::size_t i = 0; i < k; ++i)
      pairs.push_back({i, k, g[i].leading_monomial().lcm(g[k].leading_monomial()).degree()});
  };
  for (std::size_t k = 1; k < g.size(); ++k) add_pairs_for(k);

  while (!pairs.empty()) {
    auto best = std::min_element(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
      if (a.degree != b.degree) return a.degree < b.degree;
      if (a.j != b.j) return a.j < b.j;
      return a.i < b.i;
    });
    const Pair p = *best;
    pairs.erase(best);
    if (g[p.i].leading_monomial().coprime(g[p.j].leading_monomial())) continue;
    MPoly r = normal_form(s_polynomial(g[p.i], g[p.j]), g);
    if (r.is_zero()) continue;
    if (r.total_degree() > degree_cap) {
      out.reason = "basis element degree exceeds cap " + std::to_string(degree_cap);
      out.basis = g;
      return out;
    }
    g.push_back(r.monic());
    add_pairs_for(g.size() - 1);
  }

  // Minimal basis, then tail-reduce.
  std::vector<MPoly> minimal;
  for (std::size_t i = 0; i < g.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < g.size() && !redundant; ++j) {
      if (i == j) continue;
      const auto& li = g[i].leading_monomial();
      const auto& lj = g[j].leading_monomial();
      if (lj.divides(li) && (lj != li || j < i)) redundant = true;
    }
    if (!redundant) minimal.push_back(g[i]);
  }
  std::vector<MPoly> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<MPoly> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    const MPoly lead = MPoly::term(minimal[i].universe(), minimal[i].leading_monomial(), GaussRat(1));
    reduced.push_back(lead + normal_form(minimal[i] - lead, others));
  }
  std::sort(reduced.begin(), reduced.end(), [](const MPoly& a, const MPoly& b) {
    return grevlex_compare(a.leading_monomial(), b.leading_monomial()) < 0;
  });
  out.basis = std::move(reduced);
  out.complete = true;
  return out;
}

/// Checks the Buchberger criterion: every S-pair reduces to zero, and every
/// generator reduces to zero modulo the basis.
inline bool verify_groebner_basis(const std::vector<MPoly>& basis, const std::vector<MPoly>& generators) {
  for (const MPoly& f : generators)
    if (!normal_form(f, basis).is_zero()) return false;
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j)
      if (!normal_form(s_polynomial(basis[i], basis[j]), basis).is_zero()) return false;
  return true;
}

}  // namespace crtrans
