#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "crtrans/errors.hpp"
#include "crtrans/gauss_rat.hpp"
#include "crtrans/universe.hpp"

namespace crtrans {

/// Exponent vector with its cached total degree.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) {
    for (auto e : exps_) degree_ += e;
  }

  std::size_t size() const { return exps_.size(); }
  std::uint32_t operator[](std::size_t v) const { return exps_[v]; }
  std::uint32_t degree() const { return degree_; }
  const std::vector<std::uint32_t>& exponents() const { return exps_; }
  bool is_one() const { return degree_ == 0; }

  void set(std::size_t v, std::uint32_t e) {
    degree_ = degree_ - exps_[v] + e;
    exps_[v] = e;
  }

  bool divides(const Monomial& m) const {
    for (std::size_t v = 0; v < exps_.size(); ++v)
      if (exps_[v] > m.exps_[v]) return false;
    return true;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r(a.size());
    for (std::size_t v = 0; v < a.size(); ++v) r.exps_[v] = a.exps_[v] + b.exps_[v];
    r.degree_ = a.degree_ + b.degree_;
    return r;
  }

  // a / d; requires d | a.
  Monomial quotient(const Monomial& d) const {
    Monomial r(size());
    for (std::size_t v = 0; v < size(); ++v) r.exps_[v] = exps_[v] - d.exps_[v];
    r.degree_ = degree_ - d.degree_;
    return r;
  }

  Monomial lcm(const Monomial& o) const {
    Monomial r(size());
    for (std::size_t v = 0; v < size(); ++v) r.set(v, std::max(exps_[v], o.exps_[v]));
    return r;
  }

  bool coprime(const Monomial& o) const {
    for (std::size_t v = 0; v < size(); ++v)
      if (exps_[v] && o.exps_[v]) return false;
    return true;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps_ == b.exps_; }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }

 private:
  std::vector<std::uint32_t> exps_;
  std::uint32_t degree_ = 0;
};

// Graded reverse lexicographic order. Variables are ranked by index, so the
// Z-block precedes the xi-block.
inline int grevlex_compare(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
  for (std::size_t v = a.size(); v-- > 0;) {
    if (a[v] != b[v]) return a[v] > b[v] ? -1 : 1;
  }
  return 0;
}

struct GrevlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return grevlex_compare(a, b) > 0; }
};

/// Sparse polynomial over Q(i). Terms are kept in descending grevlex order
/// and zero coefficients are never stored.
class MPoly {
 public:
  using TermMap = std::map<Monomial, GaussRat, GrevlexGreater>;

  MPoly() = default;
  explicit MPoly(Universe u) : u_(std::move(u)) {}
  MPoly(Universe u, const GaussRat& c) : u_(std::move(u)) {
    if (!c.is_zero()) terms_.emplace(Monomial(u_->size()), c);
  }

  static MPoly variable(const Universe& u, std::size_t v) {
    Monomial m(u->size());
    m.set(v, 1);
    return term(u, std::move(m), GaussRat(1));
  }
  static MPoly term(const Universe& u, Monomial m, const GaussRat& c) {
    MPoly p(u);
    if (!c.is_zero()) p.terms_.emplace(std::move(m), c);
    return p;
  }

  const Universe& universe() const { return u_; }
  std::size_t nvars() const { return u_->size(); }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one()); }

  GaussRat constant_term() const {
    if (terms_.empty()) return GaussRat(0);
    auto last = std::prev(terms_.end());
    return last->first.is_one() ? last->second : GaussRat(0);
  }

  GaussRat coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? GaussRat(0) : it->second;
  }

  const Monomial& leading_monomial() const {
    if (terms_.empty()) throw InvalidArgument("leading monomial of the zero polynomial");
    return terms_.begin()->first;
  }
  const GaussRat& leading_coefficient() const {
    if (terms_.empty()) throw InvalidArgument("leading coefficient of the zero polynomial");
    return terms_.begin()->second;
  }

  // -1 for the zero polynomial.
  int total_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max<int>(d, static_cast<int>(m.degree()));
    return d;
  }

  std::uint32_t degree_in(std::size_t v) const {
    std::uint32_t d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m[v]);
    return d;
  }
  bool depends_on(std::size_t v) const { return degree_in(v) > 0; }

  bool z_only() const {
    for (const auto& [m, c] : terms_)
      for (std::size_t v = u_->z_count(); v < m.size(); ++v)
        if (m[v]) return false;
    return true;
  }
  bool xi_only() const {
    for (const auto& [m, c] : terms_)
      for (std::size_t v = 0; v < u_->z_count(); ++v)
        if (m[v]) return false;
    return true;
  }

  // Accumulates c*m into the polynomial.
  void add_term(const Monomial& m, const GaussRat& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  MPoly operator-() const {
    MPoly r(u_);
    for (const auto& [m, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), m, -c);
    return r;
  }

  MPoly& operator+=(const MPoly& o) {
    check(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  MPoly& operator-=(const MPoly& o) {
    check(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  MPoly& operator*=(const GaussRat& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }
  MPoly& operator*=(const MPoly& o) { return *this = *this * o; }

  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(MPoly a, const GaussRat& s) { return a *= s; }
  friend MPoly operator*(const GaussRat& s, MPoly a) { return a *= s; }

  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    a.check(b);
    MPoly r(a.u_);
    if (a.is_zero() || b.is_zero()) return r;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
  }

  MPoly pow(unsigned e) const {
    MPoly result(u_, GaussRat(1));
    MPoly base = *this;
    while (e) {
      if (e & 1u) result *= base;
      e >>= 1;
      if (e) base *= base;
    }
    return result;
  }

  // Scaled so the grevlex-leading coefficient is 1. Zero stays zero.
  MPoly monic() const {
    if (is_zero()) return *this;
    return *this * (GaussRat(1) / leading_coefficient());
  }

  // Drops every term of total degree > K.
  MPoly truncated(int K) const {
    MPoly r(u_);
    for (const auto& [m, c] : terms_)
      if (static_cast<int>(m.degree()) <= K) r.terms_.emplace_hint(r.terms_.end(), m, c);
    return r;
  }

  MPoly homogeneous_part(int d) const {
    MPoly r(u_);
    for (const auto& [m, c] : terms_)
      if (static_cast<int>(m.degree()) == d) r.terms_.emplace_hint(r.terms_.end(), m, c);
    return r;
  }

  friend bool operator==(const MPoly& a, const MPoly& b) {
    return same_universe(a.u_, b.u_) && a.terms_ == b.terms_;
  }
  friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }

  std::string to_string() const;
  friend std::ostream& operator<<(std::ostream& os, const MPoly& p) { return os << p.to_string(); }

 private:
  void check(const MPoly& o) const {
    if (!same_universe(u_, o.u_)) throw UniverseMismatch();
  }

  Universe u_;
  TermMap terms_;
};

inline std::string monomial_to_string(const VarUniverse& u, const Monomial& m) {
  std::string s;
  for (std::size_t v = 0; v < m.size(); ++v) {
    if (!m[v]) continue;
    if (!s.empty()) s += "*";
    s += u.name(v);
    if (m[v] > 1) s += "^" + std::to_string(m[v]);
  }
  return s;
}

// Output is accepted by parse_poly: explicit '*' everywhere and Gaussian
// coefficients with both parts parenthesised.
inline std::string MPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::string mono = monomial_to_string(*u_, m);
    bool negative = (c.is_real() && sgn(c.re()) < 0) || (c.is_imaginary() && sgn(c.im()) < 0);
    GaussRat mag = negative ? -c : c;
    std::string coef;
    if (mono.empty()) {
      coef = mag.to_string();
    } else if (!mag.is_one()) {
      coef = mag.to_string() + "*";
    }
    if (first) {
      out += negative ? "-" : "";
    } else {
      out += negative ? " - " : " + ";
    }
    out += coef + mono;
    first = false;
  }
  return out;
}

inline void require_same_universe(const MPoly& a, const MPoly& b) {
  if (!same_universe(a.universe(), b.universe())) throw UniverseMismatch();
}

/// Formal partial derivative with respect to variable `var`.
inline MPoly differentiate(const MPoly& f, std::size_t var) {
  if (var >= f.nvars()) throw InvalidArgument("differentiate: variable index out of range");
  MPoly r(f.universe());
  for (const auto& [m, c] : f.terms()) {
    if (!m[var]) continue;
    Monomial d = m;
    d.set(var, m[var] - 1);
    r.add_term(d, c * GaussRat(static_cast<long>(m[var])));
  }
  return r;
}

/// Replaces every variable v with repl[v] (or keeps it when repl[v] is
/// empty). All replacements must share one universe; kept variables require
/// that universe to be the one of f.
inline MPoly substitute(const MPoly& f, std::span<const std::optional<MPoly>> repl) {
  if (repl.size() != f.nvars()) throw InvalidArgument("substitute: assignment size mismatch");
  Universe target = f.universe();
  bool any_keep = false;
  bool found = false;
  for (const auto& r : repl) {
    if (!r) {
      any_keep = true;
      continue;
    }
    if (!found) {
      target = r->universe();
      found = true;
    } else if (!same_universe(target, r->universe())) {
      throw UniverseMismatch("substitute: replacements use different universes");
    }
  }
  if (any_keep && !same_universe(target, f.universe()))
    throw UniverseMismatch("substitute: kept variables must live in the result universe");

  std::vector<std::vector<MPoly>> powers(repl.size());
  auto power = [&](std::size_t v, std::uint32_t e) -> const MPoly& {
    auto& cache = powers[v];
    if (cache.empty()) cache.emplace_back(target, GaussRat(1));
    while (cache.size() <= e) cache.push_back(cache.back() * *repl[v]);
    return cache[e];
  };

  MPoly result(target);
  for (const auto& [m, c] : f.terms()) {
    Monomial kept(target->size());
    for (std::size_t v = 0; v < m.size(); ++v)
      if (!repl[v] && m[v]) kept.set(v, m[v]);
    MPoly t = MPoly::term(target, kept, c);
    for (std::size_t v = 0; v < m.size() && !t.is_zero(); ++v)
      if (repl[v] && m[v]) t *= power(v, m[v]);
    result += t;
  }
  return result;
}

inline MPoly substitute(const MPoly& f, const std::vector<std::optional<MPoly>>& repl) {
  return substitute(f, std::span<const std::optional<MPoly>>(repl));
}

/// Value of f at a point given for every variable of its universe.
inline GaussRat evaluate(const MPoly& f, std::span<const GaussRat> point) {
  if (point.size() != f.nvars()) throw InvalidArgument("evaluate: point has wrong dimension");
  GaussRat sum(0);
  for (const auto& [m, c] : f.terms()) {
    GaussRat t = c;
    for (std::size_t v = 0; v < m.size(); ++v)
      if (m[v]) t *= point[v].pow(m[v]);
    sum += t;
  }
  return sum;
}

/// Conjugates every coefficient and swaps the Z-block with the xi-block.
inline MPoly bar_involution(const MPoly& f) {
  const auto& u = *f.universe();
  if (!u.symmetric()) throw InvalidArgument("bar involution needs equal Z and xi block sizes");
  MPoly r(f.universe());
  for (const auto& [m, c] : f.terms()) {
    std::vector<std::uint32_t> e(m.size());
    for (std::size_t v = 0; v < m.size(); ++v) e[u.partner(v)] = m[v];
    r.add_term(Monomial(std::move(e)), c.conj());
  }
  return r;
}

inline bool is_hermitian(const MPoly& f) { return bar_involution(f) == f; }

// Conjugates coefficients only (no block swap).
inline MPoly conjugate_coefficients(const MPoly& f) {
  MPoly r(f.universe());
  for (const auto& [m, c] : f.terms()) r.add_term(m, c.conj());
  return r;
}

/// Moves a polynomial into another universe; variable v becomes var_map[v].
inline MPoly reembed(const MPoly& f, const Universe& target, std::span<const std::size_t> var_map) {
  if (var_map.size() != f.nvars()) throw InvalidArgument("reembed: map size mismatch");
  MPoly r(target);
  for (const auto& [m, c] : f.terms()) {
    Monomial t(target->size());
    for (std::size_t v = 0; v < m.size(); ++v)
      if (m[v]) t.set(var_map[v], t[var_map[v]] + m[v]);
    r.add_term(t, c);
  }
  return r;
}

/// Coefficients of f as a univariate polynomial in `var`, indexed by degree.
inline std::vector<MPoly> coefficients_in(const MPoly& f, std::size_t var) {
  std::vector<MPoly> out(f.degree_in(var) + 1, MPoly(f.universe()));
  for (const auto& [m, c] : f.terms()) {
    Monomial rest = m;
    rest.set(var, 0);
    out[m[var]].add_term(rest, c);
  }
  return out;
}

/// Splits f = sum_k  key_k * coeff_k where key_k collects the exponents of
/// the variables selected by `in_key` and coeff_k the rest.
template <class Pred>
std::map<Monomial, MPoly, GrevlexGreater> split_variables(const MPoly& f, Pred in_key) {
  std::map<Monomial, MPoly, GrevlexGreater> out;
  for (const auto& [m, c] : f.terms()) {
    Monomial key(m.size()), rest(m.size());
    for (std::size_t v = 0; v < m.size(); ++v) (in_key(v) ? key : rest).set(v, m[v]);
    auto it = out.try_emplace(key, MPoly(f.universe())).first;
    it->second.add_term(rest, c);
  }
  return out;
}

inline MPoly constant(const Universe& u, const GaussRat& c) { return MPoly(u, c); }
inline MPoly variable(const Universe& u, std::size_t v) { return MPoly::variable(u, v); }

// Zero-point of a universe.
inline std::vector<GaussRat> origin(const Universe& u) { return std::vector<GaussRat>(u->size(), GaussRat(0)); }

}  // namespace crtrans
