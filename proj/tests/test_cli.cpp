#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "crtrans/cli.hpp"

using namespace crtrans;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

std::string corpus(const std::string& file) { return std::string(CRTRANS_CORPUS_DIR) + "/" + file; }

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST(Cli, SphereMapJson) {
  const CliRun r = run({"examples", "run", "ex1_4", "--n", "3", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_FALSE(j["transversal_at_origin"].get<bool>());
  EXPECT_EQ(j["wh_codim_witness"], "Z1");
  EXPECT_EQ(j["a"], "-Z1*XI1");
  EXPECT_EQ(j["locus"]["B"], "Z1");
  EXPECT_EQ(j["finite_map"]["verdict"], "NotFinite");
  EXPECT_EQ(j["theorems"].size(), 3u + 2u * 4u);
}

TEST(Cli, QuadricPairText) {
  const CliRun r = run({"examples", "run", "ex1_2", "--n", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("a = -2*Z1 - 2*Z2 - 2*XI1 - 2*XI2"), std::string::npos);
  EXPECT_NE(r.out.find("NotTransversal at 0"), std::string::npos);
}

TEST(Cli, CheckHeisenbergFile) {
  const CliRun r = run({"check", corpus("heisenberg_embed.json"), "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(nlohmann::json::parse(r.out)["transversal_at_origin"].get<bool>());
}

TEST(Cli, OtherCommands) {
  const std::string f = corpus("ex1_4_n1.json");
  const CliRun levi = run({"levi", f, "--json"});
  ASSERT_EQ(levi.code, 0) << levi.err;
  EXPECT_EQ(nlohmann::json::parse(levi.out)["target"]["rank"], 3);
  const CliRun minors = run({"minors", f, "--json"});
  ASSERT_EQ(minors.code, 0) << minors.err;
  EXPECT_EQ(nlohmann::json::parse(minors.out)["generic_rank"], 2);
  const CliRun locus = run({"locus", f});
  ASSERT_EQ(locus.code, 0) << locus.err;
  EXPECT_NE(locus.out.find("B = Z1"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"check", "/nonexistent/file.json"}).code, 2);
  EXPECT_EQ(run({"examples", "run", "nope"}).code, 2);
  EXPECT_EQ(run({"bogus"}).code, 2);
  const std::string bad_parse = write_temp("crtrans_bad_parse.json", R"({"n":1,"N":1,"source_rho":"(Z2 - XI2)/ 2",
    "target_rho":"ZP2","map":["Z1","Z2"]})");
  const CliRun p = run({"check", bad_parse});
  EXPECT_EQ(p.code, 2);
  EXPECT_NE(p.err.find("position"), std::string::npos);
  const std::string not_preserved = write_temp("crtrans_not_preserved.json", R"({"n":1,"N":2,
    "source_rho":"(1/2)*(-i)*(Z2 - XI2) - Z1*XI1",
    "target_rho":"(1/2)*(-i)*(ZP3 - XIP3) - ZP1*XIP1 - ZP2*XIP2",
    "map":["Z1","Z1","Z2"]})");
  const CliRun a = run({"check", not_preserved});
  EXPECT_EQ(a.code, 1);
  EXPECT_NE(a.err.find("does not send"), std::string::npos);
}

TEST(Cli, JsonPolynomialsRoundTrip) {
  const CliRun r = run({"examples", "run", "ex1_2", "--n", "2", "--json"});
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  const auto u = source_universe(2);
  const std::string a = j["a"];
  EXPECT_EQ(parse_poly(a, u).to_string(), a);
  for (const auto& row : j["whs_table"])
    if (!row["gcd"].is_null()) {
      EXPECT_EQ(parse_poly(row["gcd"].get<std::string>(), u).to_string(), row["gcd"]);
    }
}

TEST(Cli, Deterministic) {
  const std::vector<std::string> args{"examples", "run", "ex1_4", "--n", "2", "--json"};
  EXPECT_EQ(run(args).out, run(args).out);
  const std::vector<std::string> fz{"fuzz", "--regime", "gap", "--trials", "15", "--seed", "42", "--json"};
  const CliRun a = run(fz), b = run(fz);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const auto j = nlohmann::json::parse(a.out);
  for (const auto& t : j["trials"]) EXPECT_EQ(t["two_N_minus_r"].get<int>(), 2 * t["n"].get<int>() - 1);
}

TEST(Cli, ShowMatchesCorpus) {
  const CliRun r = run({"examples", "show", "ex1_4", "--n", "1"});
  ASSERT_EQ(r.code, 0);
  std::ifstream in(corpus("ex1_4_n1.json"));
  EXPECT_EQ(nlohmann::json::parse(r.out), nlohmann::json::parse(in));
}

TEST(Cli, TruncOverride) {
  const CliRun r = run({"examples", "run", "flat_to_heisenberg", "--n", "1", "--trunc", "3", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["finite_type"]["order"], 3);
}
