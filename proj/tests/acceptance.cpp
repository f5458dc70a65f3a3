// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <filesystem>
#include <iostream>
#include <random>
#include <sstream>

#include "crtrans/problem.hpp"
#include "crtrans/random_cases.hpp"
#include "crtrans/transversality.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace crtrans;
namespace fixtures = crtrans::fixtures;

namespace {

constexpr double kEx14SecondsPerN = 5.0;
constexpr double kEx12SecondsTotal = 10.0;
constexpr double kAlgebraSeconds = 60.0;
constexpr int kRandomQuadrics = 200;
constexpr int kAlgebraInstances = 500;
constexpr int kPerturbedQuadrics = 20;
constexpr int kNormalFormOrder = 8;
constexpr std::uint64_t kSeed = 20240;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Collects the first few failure messages of a criterion.
struct Check {
  std::vector<std::string> failures;
  std::string info;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

// p = c * q for a nonzero constant c.
bool unit_multiple(const MPoly& p, const MPoly& q) { return !p.is_zero() && p.monic() == q.monic(); }

Problem example(const std::string& name, std::size_t n) { return materialize(builtin_example(name, n)); }

Check criterion1() {
  Check c;
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto t0 = Clock::now();
    const Problem p = example("ex1_4", n);
    const auto& u = p.source.universe();
    const TransReport r = full_report(p.source, p.target, p.map);
    const std::string tag = "n=" + std::to_string(n) + ": ";
    c.expect(unit_multiple(r.factor.a, parse_poly("Z1*XI1", u)), tag + "a = " + r.factor.a.to_string());
    c.expect(r.at_origin == Transversality::NotTransversal, tag + "transversal at origin");
    c.expect(r.wh && !r.wh->codim_ge2 && r.wh->witness && unit_multiple(*r.wh->witness, parse_poly("Z1", u)),
             tag + "W_H witness");
    c.expect(r.locus && unit_multiple(r.locus->B, parse_poly("Z1", u)), tag + "B");
    c.expect(r.locus && unit_multiple(r.locus->Cbar, parse_poly("XI1", u)), tag + "Cbar");
    c.expect(r.locus && r.locus->cofactor.is_constant() && !r.locus->cofactor.is_zero(), tag + "cofactor");
    c.expect(r.finite_map.verdict == FiniteMapVerdict::NotFinite &&
                 r.finite_map.certificate == FiniteMapCertificate::ComponentGcd,
             tag + "finite map");
    const double secs = seconds_since(t0);
    c.expect(secs < kEx14SecondsPerN, tag + "took " + std::to_string(secs) + " s");
  }
  return c;
}

// Point of Im w = sum |z_j|^2 with given z.
std::vector<GaussRat> heisenberg_point(const std::vector<GaussRat>& z, const mpq_class& re_w) {
  mpq_class im_w = 0;
  for (const auto& zj : z) im_w += zj.norm();
  std::vector<GaussRat> p = z;
  p.emplace_back(re_w, im_w);
  return p;
}

Check criterion2() {
  Check c;
  std::mt19937_64 rng(kSeed + 2);
  const auto t0 = Clock::now();
  for (std::size_t n = 1; n <= 3; ++n) {
    const std::string tag = "n=" + std::to_string(n) + ": ";
    const Problem p = example("ex1_2", n);
    const auto& u = p.source.universe();
    const TransFactor T = compute_a(p.source, p.target, p.map);
    MPoly sum(u);
    for (std::size_t j = 0; j < n; ++j) sum += MPoly::variable(u, j) + MPoly::variable(u, n + 1 + j);
    c.expect(unit_multiple(T.a, sum) && T.pullback == T.a * p.source.rho(), tag + "pullback factor");
    c.expect(transversal_at_origin(T) == Transversality::NotTransversal, tag + "origin");

    for (int k = 0; k < 12; ++k) {
      std::vector<GaussRat> z;
      for (std::size_t j = 0; j < n; ++j) z.push_back(fixtures::random_scalar(rng, 4));
      mpq_class re_sum = 0;
      for (std::size_t j = 0; j + 1 < n; ++j) re_sum += z[j].re();
      if (k % 2 == 0) z[n - 1] = GaussRat(mpq_class(-re_sum), z[n - 1].im());
      re_sum += z[n - 1].re();
      const auto pt = heisenberg_point(z, mpq_class(fixtures::uniform(rng, -3, 3)));
      const Transversality expected = sgn(re_sum) == 0 ? Transversality::NotTransversal : Transversality::Transversal;
      c.expect(transversal_at_point(T, pt) == expected, tag + "sample point " + std::to_string(k));
    }

    const MinorTable mt = minor_table(p.map);
    bool unit_minor = false;
    for (const auto& m : mt.nonzero_values(n + 1)) unit_minor = unit_minor || !m.constant_term().is_zero();
    c.expect(unit_minor, tag + "no maximal minor nonzero at 0");
    c.expect(levi_rank(p.target).restricted_rank == 2 * n, tag + "target Levi rank");
    const TransReport r = full_report(p.source, p.target, p.map);
    const TheoremVerdict& t11 = r.theorems.front();
    c.expect(t11.id == TheoremId::T1_1 && !t11.guaranteed && t11.hypotheses[0].outcome == Outcome::Fails,
             tag + "T1.1 inequality should fail");
    c.expect(r.two_N_minus_r == static_cast<int>(2 * n), tag + "2N-r = " + std::to_string(r.two_N_minus_r));
  }
  const double secs = seconds_since(t0);
  c.expect(secs < kEx12SecondsTotal, "took " + std::to_string(secs) + " s");
  return c;
}

struct SweepCase {
  std::string name;
  Hypersurface M;
  Hypersurface Mp;
  HoloMap H;
};

std::vector<SweepCase> sweep_cases() {
  std::vector<SweepCase> out;
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(CRTRANS_CORPUS_DIR))
    if (e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    const Problem p = materialize(load_problem(f.string()));
    out.push_back({f.filename().string(), p.source, p.target, p.map});
  }
  std::mt19937_64 rng(kSeed + 3);
  for (int k = 0; k < kRandomQuadrics; ++k) {
    const QuadricCase q = random_quadric_case(rng);
    out.push_back({"quadric#" + std::to_string(k), validate_hypersurface(q.source_rho, q.n),
                   validate_hypersurface(q.target_rho, q.N), HoloMap(q.n, q.N, q.map)});
  }
  return out;
}

// Reports whose guaranteed verdicts never contradict a(0,0) != 0.
void criteria3and4(Check& soundness, Check& nonvanishing) {
  int guaranteed = 0, rejected = 0, nv_checked = 0;
  for (const auto& sc : sweep_cases()) {
    try {
      const TransReport r = full_report(sc.M, sc.Mp, sc.H);
      for (const auto& t : r.theorems) {
        if (!t.guaranteed) continue;
        ++guaranteed;
        soundness.expect(r.at_origin == Transversality::Transversal, sc.name + ": " + t.label());
      }
      if (r.two_N_minus_r <= 2 * static_cast<int>(r.n) - 2 && r.generic_rank == r.n + 1) {
        ++nv_checked;
        nonvanishing.expect(r.nonvanishing_mod_rho, sc.name + ": a vanishes mod rho");
      }
    } catch (const MapDoesNotPreserve&) {
      ++rejected;
    } catch (const InternalConsistencyError& e) {
      soundness.expect(false, sc.name + ": " + e.what());
    }
  }
  soundness.info = std::to_string(guaranteed) + " guaranteed verdicts, " + std::to_string(rejected) +
                   " non-preserving inputs rejected";
  nonvanishing.info = std::to_string(nv_checked) + " cases in range";
  soundness.expect(guaranteed > 0, "no guaranteed verdict exercised");
  nonvanishing.expect(nv_checked > 0, "no case in range");
}

Check criterion5() {
  Check c;
  std::mt19937_64 rng(kSeed + 5);
  const Universe u = VarUniverse::hermitian(2);
  const auto t0 = Clock::now();
  for (int k = 0; k < kAlgebraInstances; ++k) {
    const std::string tag = "instance " + std::to_string(k) + ": ";
    const MPoly a = fixtures::random_poly(rng, u, 4, 2);
    const MPoly b = fixtures::random_poly(rng, u, 4, 2);
    c.expect(a * b == oracle::term_pair_product(a, b), tag + "product");
    c.expect(bar_involution(a * b) == bar_involution(a) * bar_involution(b), tag + "bar");
    const MPoly f = a * b + fixtures::random_poly(rng, u, k % 3, 2);
    if (!b.is_zero()) {
      if (const auto q = exact_divide(f, b)) c.expect(oracle::term_pair_product(*q, b) == f, tag + "exact_divide");
      if (const auto q = exact_divide(a * b, b)) {
        c.expect(*q == a, tag + "exact_divide quotient");
      } else {
        c.expect(false, tag + "exact_divide missed a multiple");
      }
    }
    const auto inst = oracle::planted_gcd(rng, u, 3);
    c.expect(oracle::gcd_is_maximal(gcd(inst.f, inst.g), inst, 3), tag + "gcd");
  }
  const double secs = seconds_since(t0);
  c.expect(secs < kAlgebraSeconds, "took " + std::to_string(secs) + " s");
  return c;
}

Check criterion6() {
  Check c;
  const int K = kNormalFormOrder;
  std::vector<std::pair<std::string, Hypersurface>> cases;
  cases.emplace_back("heisenberg", validate_hypersurface(diagonal_quadric(source_universe(1), {1}), 1));
  cases.emplace_back("sphere", example("ex1_4", 1).source);
  std::mt19937_64 rng(kSeed + 6);
  for (int k = 0; k < kPerturbedQuadrics; ++k) {
    const std::size_t n = 1 + k % 2;
    cases.emplace_back("perturbed#" + std::to_string(k), validate_hypersurface(random_perturbed_quadric(rng, n), n));
  }
  for (const auto& [name, M] : cases) {
    try {
      const NormalForm nf = normalize(M, K);
      c.expect(check_normal_form(nf.Q.poly(), M.dim(), K).ok(), name + ": normal form identities");
    } catch (const Error& e) {
      c.expect(false, name + ": " + e.what());
    }
  }
  for (std::size_t i = 0; i < 2; ++i)
    c.expect(finite_type_check(cases[i].second, K).verdict == FiniteTypeVerdict::FiniteType,
             cases[i].first + ": finite type");
  const Hypersurface flat = validate_hypersurface(diagonal_quadric(source_universe(1), {0}), 1);
  const FiniteTypeResult ft = finite_type_check(flat, K);
  c.expect(ft.verdict == FiniteTypeVerdict::InfiniteTypeUpToOrder && ft.order == K, "Im w = 0");
  return c;
}

Check criterion7() {
  Check c;
  std::vector<std::pair<std::string, HoloMap>> maps;
  for (const auto& name : builtin_example_names())
    for (std::size_t n = 1; n <= 3; ++n) maps.emplace_back(name + " n=" + std::to_string(n), example(name, n).map);
  std::mt19937_64 rng(kSeed + 7);
  for (int k = 0; k < 40; ++k) {
    const QuadricCase q = random_quadric_case(rng);
    maps.emplace_back("quadric#" + std::to_string(k), HoloMap(q.n, q.N, q.map));
  }
  for (const auto& [name, H] : maps) {
    const MinorTable t = minor_table(H);
    const std::size_t n = H.source_dim(), rank = generic_rank(t);
    bool seen_failure = false;
    for (std::size_t s = 1; s <= rank; ++s) {
      const bool ok = whs_codim_ge2(t, s).codim_ge2;
      c.expect(!(seen_failure && ok), name + ": W_H^s not monotone at s=" + std::to_string(s));
      seen_failure = seen_failure || !ok;
    }
    if (rank == n + 1) c.expect(wh_codim_ge2(t).codim_ge2 == whs_codim_ge2(t, n + 1).codim_ge2, name + ": W_H");
    const PolyMatrix J = jacobian(H);
    for (std::size_t k = 1; k <= std::min<std::size_t>(3, n + 1); ++k)
      for (const Minor& m : t.of_size(k))
        if (m.value != oracle::cofactor_determinant(submatrix(J, m.rows, m.cols)))
          c.expect(false, name + ": minor mismatch, k=" + std::to_string(k));
  }
  return c;
}

bool report(int id, const std::string& title, const Check& c) {
  const bool ok = c.failures.empty();
  std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << id << ": " << title;
  if (!c.info.empty()) std::cout << " (" << c.info << ")";
  std::cout << "\n";
  for (std::size_t k = 0; k < c.failures.size() && k < 5; ++k) std::cout << "      " << c.failures[k] << "\n";
  return ok;
}

template <class F>
Check guarded(F f) {
  try {
    return f();
  } catch (const std::exception& e) {
    Check c;
    c.expect(false, std::string("exception: ") + e.what());
    return c;
  }
}

}  // namespace

int main() {
  bool ok = true;
  ok &= report(1, "sphere-to-quadric example", guarded(criterion1));
  ok &= report(2, "quadric map with 2N-r = 2n", guarded(criterion2));
  Check sound, nonvan;
  try {
    criteria3and4(sound, nonvan);
  } catch (const std::exception& e) {
    sound.expect(false, e.what());
    nonvan.expect(false, e.what());
  }
  ok &= report(3, "soundness of guaranteed verdicts", sound);
  ok &= report(4, "a nonvanishing mod rho", nonvan);
  ok &= report(5, "algebra kernel against oracles", guarded(criterion5));
  ok &= report(6, "normal coordinates and finite type", guarded(criterion6));
  ok &= report(7, "rank loci and minors", guarded(criterion7));
  return ok ? 0 : 1;
}
