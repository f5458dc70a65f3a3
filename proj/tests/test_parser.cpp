#include <gtest/gtest.h>

#include "crtrans/parser.hpp"
#include "crtrans/problem.hpp"
#include "test_support.hpp"

using namespace crtrans;
namespace fixtures = crtrans::fixtures;

namespace {

Universe U() { return VarUniverse::hermitian(2); }

ParseError parse_failure(const std::string& text) {
  try {
    parse_poly(text, U());
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "accepted: " << text;
  return ParseError(ParseErrorKind::Syntax, 0, "");
}

}  // namespace

TEST(Parser, Basics) {
  const auto u = U();
  const MPoly p = parse_poly("Z1^2*XI1 + 3/4", u);
  EXPECT_EQ(p.term_count(), 2u);
  EXPECT_EQ(p.constant_term(), GaussRat::ratio(3, 4));
  EXPECT_EQ(parse_poly("2 Z1 Z2", u), parse_poly("2*Z1*Z2", u));
  EXPECT_EQ(parse_poly("  -Z1+  (Z2)  ", u), parse_poly("Z2 - Z1", u));
  EXPECT_EQ(parse_poly("(Z1 + i)(Z1 - i)", u), parse_poly("Z1^2 + 1", u));
  EXPECT_EQ(parse_poly("2i", u), MPoly(u, GaussRat(2) * GaussRat::i()));
  EXPECT_EQ(parse_poly("Z1Z2", u), parse_poly("Z1*Z2", u));
  EXPECT_EQ(parse_poly("-(Z1 - Z2)^2", u), parse_poly("-Z1^2 + 2*Z1*Z2 - Z2^2", u));
}

TEST(Parser, HeisenbergText) {
  const auto u = U();
  const MPoly rho = parse_poly("(1/2)*i*(Z2-XI2) - Z1*XI1", u);
  EXPECT_EQ(rho.coefficient(Monomial({0, 1, 0, 0})), GaussRat(mpq_class(0), mpq_class(1, 2)));
  EXPECT_EQ(parse_poly(rho.to_string(), u), rho);
}

TEST(Parser, Errors) {
  const ParseError slash = parse_failure("(Z2 - XI2)/ 2");
  EXPECT_EQ(slash.kind(), ParseErrorKind::Syntax);
  EXPECT_EQ(slash.position(), 10u);
  EXPECT_EQ(parse_failure("Z1 +").kind(), ParseErrorKind::Syntax);
  EXPECT_EQ(parse_failure("(Z1").kind(), ParseErrorKind::Syntax);
  EXPECT_EQ(parse_failure("Z1 ^ x").kind(), ParseErrorKind::Syntax);
  EXPECT_EQ(parse_failure("1/0").kind(), ParseErrorKind::Syntax);
  EXPECT_EQ(parse_failure("Z1 $ Z2").position(), 3u);
  const ParseError unknown = parse_failure("Z1 + Y1");
  EXPECT_EQ(unknown.kind(), ParseErrorKind::UnknownIdentifier);
  EXPECT_EQ(unknown.position(), 5u);
  EXPECT_EQ(parse_failure("Z3").kind(), ParseErrorKind::DimensionOverflow);
  EXPECT_EQ(parse_failure("XI7*Z1").kind(), ParseErrorKind::DimensionOverflow);
}

TEST(Parser, RoundTripRandom) {
  std::mt19937_64 rng(61);
  const auto u = U();
  for (int k = 0; k < 200; ++k) {
    const MPoly p = fixtures::random_poly(rng, u, 6, 3);
    EXPECT_EQ(parse_poly(p.to_string(), u), p) << p;
  }
}

TEST(Parser, RoundTripTargetUniverse) {
  const auto t = target_universe(3);
  const MPoly p = parse_poly("(1/2)*(-i)*(ZP4 - XIP4) - ZP1*XIP1 + ZP3*XIP3", t);
  EXPECT_EQ(parse_poly(p.to_string(), t), p);
  EXPECT_THROW(parse_poly("Z1", t), ParseError);
}
