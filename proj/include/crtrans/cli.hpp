#pragma once

#include <algorithm>
#include <cstdint>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "crtrans/problem.hpp"
#include "crtrans/random_cases.hpp"
#include "crtrans/report.hpp"

namespace crtrans {

enum ExitCode : int { kExitOk = 0, kExitAnalysis = 1, kExitParse = 2 };

namespace cli_detail {

struct Flags {
  bool json = false;
  std::optional<int> trunc;
  std::optional<int> degree_cap;
};

inline Problem load(const ProblemFile& pf, const Flags& f) {
  Problem p = materialize(pf);
  if (f.trunc) p.options.trunc = *f.trunc;
  if (f.degree_cap) p.options.degree_cap = *f.degree_cap;
  return p;
}

inline void emit(std::ostream& out, const nlohmann::json& j) { out << j.dump(2) << "\n"; }

inline int check(const Problem& p, const Flags& f, std::ostream& out) {
  const TransReport r = full_report(p.source, p.target, p.map, p.options);
  if (f.json) {
    nlohmann::json j = report_json(r);
    j["name"] = p.name;
    emit(out, j);
  } else {
    out << "problem " << p.name << "\n" << report_text(r);
  }
  return kExitOk;
}

inline int levi(const Problem& p, const Flags& f, std::ostream& out) {
  const LeviData s = levi_rank(p.source), t = levi_rank(p.target);
  const int excess = codim_excess(p.target.dim(), t.restricted_rank);
  if (f.json) {
    emit(out, {{"name", p.name}, {"source", levi_json(s)}, {"target", levi_json(t)}, {"two_N_minus_r", excess}});
  } else {
    out << "source Levi rank " << s.restricted_rank << " (n = " << p.source.dim() << ")\n";
    out << "target Levi rank " << t.restricted_rank << " (N = " << p.target.dim() << ")\n";
    out << "2N-r = " << excess << "\n";
  }
  return kExitOk;
}

inline int minors(const Problem& p, const Flags& f, std::ostream& out) {
  const MinorTable t = minor_table(p.map);
  const std::size_t rank = generic_rank(t);
  std::vector<std::optional<CodimResult>> whs;
  for (std::size_t s = 1; s <= t.n + 1; ++s) whs.push_back(s <= rank ? std::optional(whs_codim_ge2(t, s)) : std::nullopt);
  if (f.json) {
    nlohmann::json table = nlohmann::json::array();
    for (std::size_t s = 1; s <= whs.size(); ++s) table.push_back(codim_json(s, whs[s - 1]));
    emit(out, {{"name", p.name}, {"generic_rank", rank}, {"minors", minors_json(t)}, {"whs_table", table}});
  } else {
    out << "generic rank " << rank << "\n";
    for (std::size_t k = 1; k <= t.n + 1; ++k) {
      out << k << "x" << k << " minors (nonzero):\n";
      for (const Minor& m : t.of_size(k))
        if (m.nonzero()) out << "  " << m.value << "\n";
    }
    for (std::size_t s = 1; s <= whs.size(); ++s) {
      out << "W_H^" << s << ": ";
      if (!whs[s - 1]) {
        out << "all minors vanish\n";
      } else {
        out << (whs[s - 1]->codim_ge2 ? "codim >= 2" : "codim 1, witness " + whs[s - 1]->witness->to_string()) << "\n";
      }
    }
  }
  return kExitOk;
}

inline int locus(const Problem& p, const Flags& f, std::ostream& out) {
  const TransFactor T = compute_a(p.source, p.target, p.map);
  const Transversality at0 = transversal_at_origin(T);
  nlohmann::json j{{"name", p.name}, {"a", T.a.to_string()}, {"transversal_at_origin", at0 == Transversality::Transversal}};
  std::string text = "a = " + T.a.to_string() + "\n" + to_string(at0) + " at 0\n";
  if (at0 == Transversality::Transversal) {
    j["locus"] = nullptr;
    text += "no non-transversality locus through 0\n";
  } else if (!nonvanishing_mod_rho(T, p.options.trunc)) {
    j["locus"] = nullptr;
    text += "a vanishes on the complexified source\n";
  } else {
    const LocusDecomposition d = decompose_locus(T, minor_table(p.map));
    j["locus"] = locus_json(d);
    text += "B = " + d.B.to_string() + "\nCbar = " + d.Cbar.to_string() + "\ncofactor(0) = " + d.cofactor_at_origin.to_string() +
            (d.split_ok ? "" : " [split failed]") + "\n";
    if (!d.note.empty()) text += d.note + "\n";
    for (const auto& c : d.components) text += "component " + c + "\n";
  }
  if (f.json) {
    emit(out, j);
  } else {
    out << text;
  }
  return kExitOk;
}

inline bool in_regime(const std::string& regime, const QuadricCase& c) {
  const int excess = c.two_N_minus_r(), n2 = 2 * static_cast<int>(c.n);
  if (regime == "gap") return excess == n2 - 1;
  if (regime == "sharp") return excess == n2;
  if (regime == "below") return excess <= n2 - 2;
  return true;
}

// Random linear quadric maps. In the gap regime 2N-r = 2n-1 a trial is a
// candidate when H has generic rank n+1, W_H has codimension >= 2 and yet
// a(0,0) = 0. Nothing is asserted.
inline int fuzz(const std::string& regime, int trials, std::uint64_t seed, const Flags& f, std::ostream& out) {
  std::mt19937_64 rng(seed);
  nlohmann::json rows = nlohmann::json::array();
  int transversal = 0, not_transversal = 0, candidates = 0, skipped = 0;
  for (int t = 0; t < trials; ++t) {
    std::optional<QuadricCase> c;
    for (int attempt = 0; attempt < 1000 && !c; ++attempt) {
      QuadricCase q = random_quadric_case(rng);
      if (in_regime(regime, q)) c = std::move(q);
    }
    if (!c) {
      ++skipped;
      continue;
    }
    const Hypersurface M = validate_hypersurface(c->source_rho, c->n);
    const Hypersurface Mp = validate_hypersurface(c->target_rho, c->N);
    const HoloMap H(c->n, c->N, c->map);
    const TransFactor T = compute_a(M, Mp, H);
    const MinorTable mt = minor_table(H);
    const bool full = generic_rank(mt) == c->n + 1;
    const bool codim2 = full && wh_codim_ge2(mt).codim_ge2;
    const bool tv = transversal_at_origin(T) == Transversality::Transversal;
    const bool candidate = !tv && full && codim2;
    tv ? ++transversal : ++not_transversal;
    if (candidate) ++candidates;
    rows.push_back({{"trial", t},
                    {"n", c->n},
                    {"N", c->N},
                    {"two_N_minus_r", c->two_N_minus_r()},
                    {"a", T.a.to_string()},
                    {"transversal", tv},
                    {"generic_rank_full", full},
                    {"wh_codim_ge2", codim2},
                    {"candidate", candidate}});
  }
  const nlohmann::json summary{{"transversal", transversal},
                               {"not_transversal", not_transversal},
                               {"candidates", candidates},
                               {"skipped", skipped}};
  if (f.json) {
    emit(out, {{"regime", regime}, {"seed", seed}, {"trials", rows}, {"summary", summary}});
  } else {
    for (const auto& r : rows)
      out << "trial " << r["trial"] << ": n=" << r["n"] << " N=" << r["N"] << " 2N-r=" << r["two_N_minus_r"]
          << " a=" << r["a"].get<std::string>() << (r["candidate"].get<bool>() ? "  CANDIDATE" : "") << "\n";
    out << "transversal " << transversal << ", not transversal " << not_transversal << ", candidates " << candidates
        << ", skipped " << skipped << "\n";
  }
  return kExitOk;
}

}  // namespace cli_detail

/// Entry point shared by the executable and the tests. args excludes the
/// program name.
inline int run_command(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  using namespace cli_detail;
  CLI::App app{"crtrans: transversality of polynomial maps between real hypersurfaces", "crtrans"};
  app.require_subcommand(1);
  Flags flags;
  auto add_flags = [&](CLI::App* sub) {
    sub->add_flag("--json", flags.json, "machine-readable output");
    sub->add_option("--trunc", flags.trunc, "truncation order K for normal coordinates")->check(CLI::Range(1, 40));
    sub->add_option("--degree-cap", flags.degree_cap, "degree cap for Groebner bases")->check(CLI::Range(1, 200));
  };

  std::string file;
  auto* check_cmd = app.add_subcommand("check", "full report for a problem file");
  auto* levi_cmd = app.add_subcommand("levi", "Levi data of source and target");
  auto* minors_cmd = app.add_subcommand("minors", "Jacobian minors and rank loci");
  auto* locus_cmd = app.add_subcommand("locus", "decomposition of the non-transversality locus");
  for (auto* sub : {check_cmd, levi_cmd, minors_cmd, locus_cmd}) {
    sub->add_option("file", file, "problem file (JSON)")->required();
    add_flags(sub);
  }

  auto* examples_cmd = app.add_subcommand("examples", "built-in examples");
  examples_cmd->require_subcommand(1);
  std::string example;
  std::size_t example_n = 1;
  auto* run_cmd = examples_cmd->add_subcommand("run", "full report for a built-in example");
  auto* show_cmd = examples_cmd->add_subcommand("show", "print a built-in example as a problem file");
  auto* list_cmd = examples_cmd->add_subcommand("list", "list built-in examples");
  for (auto* sub : {run_cmd, show_cmd}) {
    sub->add_option("name", example, "example name")->required();
    sub->add_option("--n", example_n, "source dimension n")->check(CLI::Range(1, 8));
  }
  add_flags(run_cmd);

  std::string regime = "gap";
  int trials = 20;
  std::uint64_t seed = 1;
  auto* fuzz_cmd = app.add_subcommand("fuzz", "random linear maps between quadrics (reporting only)");
  fuzz_cmd->add_option("--regime", regime, "gap (2N-r = 2n-1), sharp (= 2n), below (<= 2n-2) or any")
      ->check(CLI::IsMember({"gap", "sharp", "below", "any"}));
  fuzz_cmd->add_option("--trials", trials, "number of trials")->check(CLI::Range(0, 100000));
  fuzz_cmd->add_option("--seed", seed, "RNG seed");
  fuzz_cmd->add_flag("--json", flags.json, "machine-readable output");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    if (*examples_cmd) {
      if (*list_cmd) {
        for (const auto& name : builtin_example_names()) out << name << "\n";
        return kExitOk;
      }
      const ProblemFile pf = builtin_example(example, example_n);
      if (*show_cmd) {
        out << problem_to_json(pf).dump(2) << "\n";
        return kExitOk;
      }
      return check(load(pf, flags), flags, out);
    }
    if (*fuzz_cmd) return fuzz(regime, trials, seed, flags, out);
    const Problem p = load(load_problem(file), flags);
    if (*check_cmd) return check(p, flags, out);
    if (*levi_cmd) return levi(p, flags, out);
    if (*minors_cmd) return minors(p, flags, out);
    return locus(p, flags, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const ProblemFormatError& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const UnknownExample& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const Error& e) {
    err << "analysis error: " << e.what() << "\n";
    return kExitAnalysis;
  }
}

}  // namespace crtrans
