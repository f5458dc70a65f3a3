#pragma once

#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "crtrans/geometry.hpp"
#include "crtrans/maps.hpp"
#include "crtrans/parser.hpp"
#include "crtrans/transversality.hpp"

namespace crtrans {

/// A problem as written on disk: polynomials are strings in Z1.., XI1..
/// (source) and ZP1.., XIP1.. (target).
struct ProblemFile {
  std::string name;
  std::size_t n = 0;
  std::size_t N = 0;
  std::string source_rho;
  std::string target_rho;
  std::vector<std::string> map;
  std::optional<std::vector<std::string>> base_point;
  AnalysisOptions options;
};

/// Validated inputs ready for analysis, with the base point moved to 0.
struct Problem {
  std::string name;
  Hypersurface source;
  Hypersurface target;
  HoloMap map;
  AnalysisOptions options;
};

class ProblemFormatError : public Error {
 public:
  using Error::Error;
};

class UnknownExample : public Error {
 public:
  explicit UnknownExample(const std::string& name) : Error("unknown example: " + name) {}
};

inline Universe source_universe(std::size_t n) { return VarUniverse::hermitian(n + 1, "Z", "XI"); }
inline Universe target_universe(std::size_t N) { return VarUniverse::hermitian(N + 1, "ZP", "XIP"); }

inline ProblemFile problem_from_json(const nlohmann::json& j) {
  ProblemFile p;
  try {
    p.name = j.value("name", std::string("unnamed"));
    p.n = j.at("n").get<std::size_t>();
    p.N = j.at("N").get<std::size_t>();
    p.source_rho = j.at("source_rho").get<std::string>();
    p.target_rho = j.at("target_rho").get<std::string>();
    p.map = j.at("map").get<std::vector<std::string>>();
    if (j.contains("base_point") && !j.at("base_point").is_null())
      p.base_point = j.at("base_point").get<std::vector<std::string>>();
    if (j.contains("options")) {
      const auto& o = j.at("options");
      p.options.trunc = o.value("trunc", p.options.trunc);
      p.options.degree_cap = o.value("degree_cap", p.options.degree_cap);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ProblemFormatError(std::string("problem file: ") + e.what());
  }
  if (p.n < 1) throw ProblemFormatError("problem file: n must be at least 1");
  return p;
}

inline nlohmann::json problem_to_json(const ProblemFile& p) {
  nlohmann::json j;
  j["name"] = p.name;
  j["n"] = p.n;
  j["N"] = p.N;
  j["source_rho"] = p.source_rho;
  j["target_rho"] = p.target_rho;
  j["map"] = p.map;
  j["base_point"] = p.base_point ? nlohmann::json(*p.base_point) : nlohmann::json(nullptr);
  j["options"] = {{"trunc", p.options.trunc}, {"degree_cap", p.options.degree_cap}};
  return j;
}

inline ProblemFile load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ProblemFormatError("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ProblemFormatError(path + ": " + e.what());
  }
  return problem_from_json(j);
}

namespace detail {

inline GaussRat parse_scalar(const std::string& text, const Universe& u) {
  const MPoly c = parse_poly(text, u);
  if (!c.is_constant()) throw ProblemFormatError("base point coordinate is not a constant: " + text);
  return c.constant_term();
}

}  // namespace detail

/// Parses and validates. With a base point p the source is translated to
/// p, the map becomes H(Z + p) - H(p) and the target is translated to H(p).
inline Problem materialize(const ProblemFile& pf) {
  const Universe su = source_universe(pf.n);
  const Universe tu = target_universe(pf.N);
  if (pf.map.size() != pf.N + 1)
    throw ProblemFormatError("map needs " + std::to_string(pf.N + 1) + " components, got " + std::to_string(pf.map.size()));
  MPoly rho = parse_poly(pf.source_rho, su);
  MPoly rho_p = parse_poly(pf.target_rho, tu);
  std::vector<MPoly> comps;
  for (const auto& text : pf.map) comps.push_back(parse_poly(text, su));
  for (const MPoly& c : comps)
    if (!c.z_only()) throw InvalidArgument("map component depends on xi variables: " + c.to_string());

  if (pf.base_point) {
    if (pf.base_point->size() != pf.n + 1) throw ProblemFormatError("base point needs n+1 coordinates");
    std::vector<GaussRat> p;
    for (const auto& t : *pf.base_point) p.push_back(detail::parse_scalar(t, su));
    rho = translate_to_point(rho, p);
    std::vector<std::optional<MPoly>> shift(su->size());
    for (std::size_t j = 0; j <= pf.n; ++j) shift[j] = MPoly::variable(su, j) + MPoly(su, p[j]);
    std::vector<GaussRat> image;
    for (MPoly& c : comps) {
      c = substitute(c, shift);
      image.push_back(c.constant_term());
      c -= MPoly(su, image.back());
    }
    rho_p = translate_to_point(rho_p, image);
  }
  AnalysisOptions opts = pf.options;
  if (const char* env = std::getenv("CRTV_TRUNC")) {
    try {
      opts.trunc = std::stoi(env);
    } catch (const std::exception&) {
      throw ProblemFormatError("CRTV_TRUNC is not an integer");
    }
  }
  return Problem{pf.name, validate_hypersurface(rho, pf.n), validate_hypersurface(rho_p, pf.N),
                 HoloMap(pf.n, pf.N, std::move(comps)), opts};
}

namespace detail {

inline std::string sum_of(const std::vector<std::string>& terms) {
  std::string s;
  for (const auto& t : terms) s += (s.empty() ? "" : " + ") + t;
  return s.empty() ? "0" : s;
}

inline std::string idx(const char* prefix, std::size_t k) { return prefix + std::to_string(k); }

}  // namespace detail

/// Names accepted by builtin_example.
inline std::vector<std::string> builtin_example_names() {
  return {"ex1_2", "ex1_4", "heisenberg_embed", "flat_to_heisenberg"};
}

/// Built-in problems generated for a given n.
inline ProblemFile builtin_example(const std::string& name, std::size_t n) {
  using detail::idx;
  if (n < 1) throw InvalidArgument("examples need n >= 1");
  ProblemFile p;
  p.name = name;
  p.n = n;
  const std::string w = idx("Z", n + 1), tau = idx("XI", n + 1);
  std::vector<std::string> zchi;
  for (std::size_t j = 1; j <= n; ++j) zchi.push_back(idx("Z", j) + "*" + idx("XI", j));
  const std::string heis = "(1/2)*(-i)*(" + w + " - " + tau + ") - (" + detail::sum_of(zchi) + ")";

  if (name == "ex1_2") {
    // (z_j + [z] z_j + i w/2, z_j - [z] z_j - i w/2)_j and -2 [z] w into a
    // signature (n, n) quadric.
    p.N = 2 * n;
    std::vector<std::string> zs;
    for (std::size_t j = 1; j <= n; ++j) zs.push_back(idx("Z", j));
    const std::string sum_z = "(" + detail::sum_of(zs) + ")";
    p.source_rho = heis;
    std::string target = "(1/2)*(-i)*(" + idx("ZP", p.N + 1) + " - " + idx("XIP", p.N + 1) + ")";
    for (std::size_t j = 1; j <= n; ++j) {
      target += " + " + idx("ZP", 2 * j - 1) + "*" + idx("XIP", 2 * j - 1);
      target += " - " + idx("ZP", 2 * j) + "*" + idx("XIP", 2 * j);
      const std::string zj = idx("Z", j);
      p.map.push_back(zj + " + " + sum_z + "*" + zj + " + (1/2)*i*" + w);
      p.map.push_back(zj + " - " + sum_z + "*" + zj + " - (1/2)*i*" + w);
    }
    p.map.push_back("-2*" + sum_z + "*" + w);
    p.target_rho = target;
  } else if (name == "ex1_4") {
    // Sphere sum |Z_j|^2 = 1 at (0,..,0,1) mapped by
    // (Z1^2, Z1 Z2, .., Z1 Z_{n+1}, Z1, 0) into a signature (n+1, 1) quadric.
    p.N = n + 2;
    std::vector<std::string> sphere;
    for (std::size_t j = 1; j <= n + 1; ++j) sphere.push_back(idx("Z", j) + "*" + idx("XI", j));
    p.source_rho = detail::sum_of(sphere) + " - 1";
    std::vector<std::string> pos;
    for (std::size_t j = 1; j <= n + 1; ++j) pos.push_back(idx("ZP", j) + "*" + idx("XIP", j));
    p.target_rho = "(1/2)*(-i)*(" + idx("ZP", p.N + 1) + " - " + idx("XIP", p.N + 1) + ") - (" + detail::sum_of(pos) +
                   ") + " + idx("ZP", n + 2) + "*" + idx("XIP", n + 2);
    for (std::size_t j = 1; j <= n + 1; ++j) p.map.push_back("Z1*" + idx("Z", j));
    p.map.push_back("Z1");
    p.map.push_back("0");
    std::vector<std::string> base(n + 1, "0");
    base.back() = "1";
    p.base_point = base;
  } else if (name == "heisenberg_embed") {
    // (z, w) -> (z, 0, w) into a Levi nondegenerate quadric in C^{n+2}.
    p.N = n + 1;
    p.source_rho = heis;
    std::vector<std::string> all;
    for (std::size_t j = 1; j <= n + 1; ++j) all.push_back(idx("ZP", j) + "*" + idx("XIP", j));
    p.target_rho = "(1/2)*(-i)*(" + idx("ZP", p.N + 1) + " - " + idx("XIP", p.N + 1) + ") - (" + detail::sum_of(all) + ")";
    for (std::size_t j = 1; j <= n; ++j) p.map.push_back(idx("Z", j));
    p.map.push_back("0");
    p.map.push_back(w);
  } else if (name == "flat_to_heisenberg") {
    // Im w = 0 mapped by (z, w) -> (0, w): transversal, source of infinite type.
    p.N = n;
    p.source_rho = "(1/2)*(-i)*(" + w + " - " + tau + ")";
    std::vector<std::string> all;
    for (std::size_t j = 1; j <= n; ++j) all.push_back(idx("ZP", j) + "*" + idx("XIP", j));
    p.target_rho = "(1/2)*(-i)*(" + idx("ZP", n + 1) + " - " + idx("XIP", n + 1) + ") - (" + detail::sum_of(all) + ")";
    for (std::size_t j = 1; j <= n; ++j) p.map.push_back("0");
    p.map.push_back(w);
  } else {
    throw UnknownExample(name);
  }
  return p;
}

}  // namespace crtrans
