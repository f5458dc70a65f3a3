#pragma once

#include <sstream>
#include <string>

#include <json.hpp>

#include "crtrans/transversality.hpp"

namespace crtrans {

namespace detail {

inline nlohmann::json poly_or_null(const std::optional<MPoly>& p) {
  return p ? nlohmann::json(p->to_string()) : nlohmann::json(nullptr);
}

inline nlohmann::json matrix_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : m) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& e : row) r.push_back(e.to_string());
    rows.push_back(r);
  }
  return rows;
}

template <class T>
nlohmann::json optional_json(const std::optional<T>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace detail

inline nlohmann::json levi_json(const LeviData& l) {
  nlohmann::json basis = nlohmann::json::array();
  for (const auto& v : l.tangent_basis) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& e : v) r.push_back(e.to_string());
    basis.push_back(r);
  }
  return {{"matrix", detail::matrix_json(l.full_matrix)},
          {"tangent_basis", basis},
          {"restricted_matrix", detail::matrix_json(l.restricted_matrix)},
          {"rank", l.restricted_rank}};
}

inline nlohmann::json codim_json(std::size_t s, const std::optional<CodimResult>& c) {
  if (!c) return {{"s", s}, {"codim_ge2", false}, {"gcd", nullptr}, {"witness", nullptr}, {"degenerate", true}};
  return {{"s", s},
          {"codim_ge2", c->codim_ge2},
          {"gcd", c->gcd.to_string()},
          {"witness", detail::poly_or_null(c->witness)},
          {"degenerate", false}};
}

inline nlohmann::json minors_json(const MinorTable& t) {
  nlohmann::json sizes = nlohmann::json::array();
  for (std::size_t k = 1; k <= t.n + 1; ++k) {
    nlohmann::json list = nlohmann::json::array();
    for (const Minor& m : t.of_size(k))
      if (m.nonzero()) list.push_back({{"rows", m.rows}, {"cols", m.cols}, {"value", m.value.to_string()}});
    sizes.push_back({{"k", k}, {"nonzero", list}, {"total", t.of_size(k).size()}});
  }
  return sizes;
}

inline nlohmann::json locus_json(const LocusDecomposition& d) {
  return {{"restricted_a", d.restricted_a.to_string()},
          {"B", d.B.to_string()},
          {"Cbar", d.Cbar.to_string()},
          {"cofactor", d.cofactor.to_string()},
          {"cofactor_at_origin", d.cofactor_at_origin.to_string()},
          {"split_ok", d.split_ok},
          {"hypotheses_hold", d.hypotheses_hold},
          {"B_divides_minors", detail::optional_json(d.B_divides_minors)},
          {"C_divides_minors", detail::optional_json(d.C_divides_minors)},
          {"hermitian_symmetric", detail::optional_json(d.hermitian_symmetric)},
          {"components", d.components},
          {"note", d.note}};
}

inline nlohmann::json theorem_json(const TheoremVerdict& v) {
  nlohmann::json hyps = nlohmann::json::array();
  for (const auto& h : v.hypotheses) hyps.push_back({{"name", h.name}, {"result", to_string(h.outcome)}, {"detail", h.detail}});
  return {{"id", to_string(v.id)},
          {"s", detail::optional_json(v.s)},
          {"hypotheses", hyps},
          {"guaranteed", v.guaranteed ? "Yes" : "NotGuaranteed"},
          {"direct", to_string(v.direct)}};
}

inline nlohmann::json report_json(const TransReport& r) {
  nlohmann::json j;
  j["n"] = r.n;
  j["N"] = r.N;
  j["a"] = r.factor.a.to_string();
  j["a_constant_term"] = r.factor.a.constant_term().to_string();
  j["transversal_at_origin"] = r.at_origin == Transversality::Transversal;
  j["levi_rank_source"] = r.levi_source.restricted_rank;
  j["levi_rank_target"] = r.levi_target.restricted_rank;
  j["two_N_minus_r"] = r.two_N_minus_r;
  j["generic_rank"] = r.generic_rank;
  j["wh_codim_ge2"] = r.wh ? nlohmann::json(r.wh->codim_ge2) : nlohmann::json(nullptr);
  j["wh_codim_witness"] = r.wh ? detail::poly_or_null(r.wh->witness) : nlohmann::json(nullptr);
  nlohmann::json whs = nlohmann::json::array(), mixed = nlohmann::json::array();
  for (std::size_t s = 1; s <= r.whs.size(); ++s) whs.push_back(codim_json(s, r.whs[s - 1]));
  for (std::size_t s = 1; s <= r.mixed.size(); ++s) {
    const auto& m = r.mixed[s - 1];
    if (m) {
      mixed.push_back({{"s", s}, {"holds", m->holds}, {"gcd", m->gcd.to_string()}, {"witness", detail::poly_or_null(m->witness)}});
    } else {
      mixed.push_back({{"s", s}, {"holds", false}, {"gcd", nullptr}, {"witness", nullptr}});
    }
  }
  j["whs_table"] = whs;
  j["mixed_minor_table"] = mixed;
  j["finite_type"] = {{"verdict", r.finite_type.verdict == FiniteTypeVerdict::FiniteType ? "FiniteType" : "InfiniteTypeUpToOrder"},
                      {"order", r.finite_type.order},
                      {"exact", r.finite_type.exact}};
  j["finite_map"] = {{"verdict", to_string(r.finite_map.verdict)},
                     {"certificate", to_string(r.finite_map.certificate)},
                     {"detail", r.finite_map.detail}};
  j["nonvanishing_mod_rho"] = r.nonvanishing_mod_rho;
  j["locus"] = r.locus ? locus_json(*r.locus) : nlohmann::json(nullptr);
  if (r.locus_skipped) j["locus_skipped"] = *r.locus_skipped;
  nlohmann::json th = nlohmann::json::array();
  for (const auto& v : r.theorems) th.push_back(theorem_json(v));
  j["theorems"] = th;
  return j;
}

inline std::string report_text(const TransReport& r) {
  std::ostringstream o;
  o << "n = " << r.n << ", N = " << r.N << "\n";
  o << "a = " << r.factor.a << "\n";
  o << "a(0,0) = " << r.factor.a.constant_term() << "  => " << to_string(r.at_origin) << " at 0\n";
  o << "Levi rank: source " << r.levi_source.restricted_rank << ", target " << r.levi_target.restricted_rank
    << "; 2N-r = " << r.two_N_minus_r << " (2n-2 = " << 2 * static_cast<int>(r.n) - 2 << ")\n";
  o << "generic rank = " << r.generic_rank << "\n";
  if (r.wh)
    o << "W_H: " << (r.wh->codim_ge2 ? "codim >= 2" : "codim 1, witness " + r.wh->witness->to_string()) << "\n";
  for (std::size_t s = 1; s <= r.whs.size(); ++s) {
    const auto& c = r.whs[s - 1];
    o << "W_H^" << s << ": ";
    if (!c) {
      o << "all minors vanish\n";
    } else {
      o << (c->codim_ge2 ? "codim >= 2" : "codim 1, witness " + c->witness->to_string()) << "\n";
    }
  }
  o << "finite type: " << (r.finite_type.verdict == FiniteTypeVerdict::FiniteType ? "yes" : "not up to order " + std::to_string(r.finite_type.order))
    << "\n";
  o << "finite map: " << to_string(r.finite_map.verdict) << " (" << r.finite_map.detail << ")\n";
  if (r.locus) {
    o << "locus: B = " << r.locus->B << ", Cbar = " << r.locus->Cbar << ", cofactor(0) = " << r.locus->cofactor_at_origin
      << (r.locus->split_ok ? "" : " [split failed]") << "\n";
    for (const auto& c : r.locus->components) o << "  component " << c << "\n";
  }
  for (const auto& v : r.theorems) {
    o << v.label() << ": " << (v.guaranteed ? "guaranteed" : "not guaranteed") << ", direct " << to_string(v.direct) << "\n";
    for (const auto& h : v.hypotheses) o << "  [" << to_string(h.outcome) << "] " << h.name << " (" << h.detail << ")\n";
  }
  return o.str();
}

}  // namespace crtrans
