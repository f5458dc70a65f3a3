#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "crtrans/geometry.hpp"
#include "crtrans/maps.hpp"

namespace crtrans {

/// A linear map between diagonal quadrics
///   rho  = (w - tau)/(2i) - sum eps_j z_j chi_j            in C^{n+1}
///   rho' = (W' - T')/(2i) - sum eps'_k Z'_k xi'_k           in C^{N+1}
/// built block by block so that rho'(H, Hbar) = lambda * rho exactly.
struct QuadricCase {
  std::size_t n = 0;
  std::size_t N = 0;
  std::vector<int> source_signs;  // eps_j in {+1, -1}
  std::vector<int> target_signs;  // eps'_k in {+1, -1, 0}
  GaussRat lambda;
  MPoly source_rho;
  MPoly target_rho;
  std::vector<MPoly> map;

  std::size_t target_levi_rank() const {
    return static_cast<std::size_t>(std::count_if(target_signs.begin(), target_signs.end(), [](int e) { return e != 0; }));
  }
  int two_N_minus_r() const { return 2 * static_cast<int>(N) - static_cast<int>(target_levi_rank()); }
};

inline MPoly diagonal_quadric(const Universe& u, const std::vector<int>& signs) {
  const std::size_t w = signs.size();
  const GaussRat half_inv_i = GaussRat(1) / (GaussRat(2) * GaussRat::i());
  MPoly rho = (MPoly::variable(u, w) - MPoly::variable(u, u->partner(w))) * half_inv_i;
  for (std::size_t j = 0; j < signs.size(); ++j)
    if (signs[j] != 0) rho -= MPoly::variable(u, j) * MPoly::variable(u, u->partner(j)) * GaussRat(signs[j]);
  return rho;
}

namespace detail {

inline long pick(std::mt19937_64& rng, long lo, long hi) {
  return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline GaussRat small_gauss(std::mt19937_64& rng) {
  return GaussRat(mpq_class(pick(rng, -2, 2)), mpq_class(pick(rng, -2, 2)));
}

}  // namespace detail

/// One random case with n <= max_n and N <= max_N.
inline QuadricCase random_quadric_case(std::mt19937_64& rng, std::size_t max_n = 3, std::size_t max_N = 6) {
  using detail::pick;
  QuadricCase c;
  c.n = static_cast<std::size_t>(pick(rng, 1, static_cast<long>(max_n)));
  const std::size_t n = c.n;
  for (std::size_t j = 0; j < n; ++j) c.source_signs.push_back(pick(rng, 0, 1) ? 1 : -1);
  const long lambdas[] = {1, -1, 2, 0, 1, -1};
  const long lam = lambdas[pick(rng, 0, 5)];
  c.lambda = GaussRat(lam);

  const auto su = VarUniverse::hermitian(n + 1);
  const MPoly w = MPoly::variable(su, n);
  auto z = [&](std::size_t j) { return MPoly::variable(su, j); };

  // Blocks of (sign, component) in target order before the shuffle.
  std::vector<std::pair<int, MPoly>> coords;
  const GaussRat scale = (lam == 2 || lam == -2) ? GaussRat(mpq_class(1), mpq_class(1)) : GaussRat(1);
  if (lam != 0) {
    for (std::size_t j = 0; j < n; ++j) {
      const int s = static_cast<int>(lam > 0 ? 1 : -1) * c.source_signs[j];
      const std::size_t left = max_N - coords.size();
      const std::size_t still_needed = n - j;  // one slot per remaining coordinate at least
      if (left >= still_needed + 1 && pick(rng, 0, 1)) {
        // alpha^2 - beta^2 = 1 with alpha = (m^2+1)/2m, beta = (m^2-1)/2m
        const long m = pick(rng, 2, 3);
        const GaussRat alpha(mpq_class(m * m + 1, 2 * m)), beta(mpq_class(m * m - 1, 2 * m));
        coords.emplace_back(s, z(j) * (alpha * scale));
        coords.emplace_back(-s, z(j) * (beta * scale));
      } else {
        coords.emplace_back(s, z(j) * scale);
      }
    }
  }
  // Extras: null pairs carrying w, degenerate coordinates, unused coordinates.
  while (coords.size() < max_N && pick(rng, 0, 2) != 0) {
    const long kind = pick(rng, 0, 2);
    if (kind == 0 && coords.size() + 2 <= max_N) {
      MPoly l = w * detail::small_gauss(rng);
      for (std::size_t j = 0; j < n; ++j) l += z(j) * detail::small_gauss(rng);
      const int s = pick(rng, 0, 1) ? 1 : -1;
      coords.emplace_back(s, l);
      coords.emplace_back(-s, l);
    } else if (kind == 1) {
      MPoly l = w * detail::small_gauss(rng);
      for (std::size_t j = 0; j < n; ++j) l += z(j) * detail::small_gauss(rng);
      coords.emplace_back(0, l);
    } else {
      coords.emplace_back(static_cast<int>(pick(rng, -1, 1)), MPoly(su));
    }
  }
  if (coords.empty()) coords.emplace_back(0, MPoly(su));
  std::shuffle(coords.begin(), coords.end(), rng);

  c.N = coords.size();
  for (auto& [s, l] : coords) {
    c.target_signs.push_back(s);
    c.map.push_back(l);
  }
  c.map.push_back(w * c.lambda);
  c.source_rho = diagonal_quadric(su, c.source_signs);
  c.target_rho = diagonal_quadric(VarUniverse::hermitian(c.N + 1, "ZP", "XIP"), c.target_signs);
  return c;
}

/// Hermitian perturbation of a diagonal quadric by terms of degree 2..max_degree
/// that do not touch the linear part.
inline MPoly random_perturbed_quadric(std::mt19937_64& rng, std::size_t n, int max_degree = 4) {
  using detail::pick;
  std::vector<int> signs;
  for (std::size_t j = 0; j < n; ++j) signs.push_back(pick(rng, 0, 1) ? 1 : -1);
  const auto u = VarUniverse::hermitian(n + 1);
  MPoly rho = diagonal_quadric(u, signs);
  MPoly p(u);
  const long terms = pick(rng, 1, 3);
  for (long t = 0; t < terms; ++t) {
    Monomial m(u->size());
    const long degree = pick(rng, 2, max_degree);
    for (long d = 0; d < degree; ++d) {
      const std::size_t v = static_cast<std::size_t>(pick(rng, 0, static_cast<long>(u->size()) - 1));
      m.set(v, m[v] + 1);
    }
    p.add_term(m, detail::small_gauss(rng));
  }
  return rho + p + bar_involution(p);
}

}  // namespace crtrans
