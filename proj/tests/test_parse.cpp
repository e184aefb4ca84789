#include <doctest.h>

#include "gen.hpp"
#include "harmalg/parse.hpp"

using namespace harmalg;

TEST_CASE("grammar accepts the documented forms") {
  const BiPoly f = parse_poly("z1*w1 - 1/2", 2);
  CHECK(f.coeff({MultiIndex{1, 0}, MultiIndex{1, 0}}) == GaussRational(1));
  CHECK(f.coeff({MultiIndex{0, 0}, MultiIndex{0, 0}}) == GaussRational(Rational(-1, 2)));
  CHECK(parse_poly(" (1/2+1/2i) * z1 ^ 2 ", 1) == parse_poly("(1/2+1/2i)*z1^2", 1));
  CHECK(parse_poly("-z2^3*w1", 2) == -parse_poly("z2^3*w1", 2));
  CHECK(parse_poly("(-1/3-2i)*w3", 3).coeff({MultiIndex{0, 0, 0}, MultiIndex{0, 0, 1}}) ==
        GaussRational(Rational(-1, 3), Rational(-2)));
  CHECK(parse_poly("z1*z1", 1) == parse_poly("z1^2", 1));
  CHECK(parse_poly("z1 - z1", 1).is_zero());
  CHECK(parse_poly("i*z1", 1) == parse_poly("(0+1i)*z1", 1));
}

TEST_CASE("rendering") {
  CHECK(render_poly(parse_poly("w1 + z1", 1)) == "z1 + w1");
  CHECK(render_poly(BiPoly(2)) == "0");
  CHECK(render_poly(parse_poly("(1/2+1/2i)*z1^2", 2)) == "(1/2+1/2i)*z1^2");
  CHECK(render_poly(parse_poly("-2*z1*w2 + 3", 2)) == "-2*z1*w2 + 3");
}

TEST_CASE("parse errors carry a position") {
  CHECK_THROWS_AS(parse_poly("z3", 2), ParseError);
  CHECK_THROWS_AS(parse_poly("z1 +", 2), ParseError);
  CHECK_THROWS_AS(parse_poly("x1", 2), ParseError);
  CHECK_THROWS_AS(parse_poly("z1^", 2), ParseError);
  CHECK_THROWS_AS(parse_poly("1/0*z1", 2), ParseError);
  CHECK_THROWS_AS(parse_poly("(1+2)*z1", 2), ParseError);
  try {
    parse_poly("z1 * q2", 2);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 5);
  }
}

TEST_CASE("gaussian lists") {
  const auto v = parse_gauss_list("(1/3+2/3i),2/3");
  REQUIRE(v.size() == 2);
  CHECK(v[0] == GaussRational(Rational(1, 3), Rational(2, 3)));
  CHECK(v[1] == GaussRational(Rational(2, 3)));
  CHECK_THROWS_AS(parse_gauss_list("1,,2"), ParseError);
}

TEST_CASE("render then parse is the identity") {
  gen::Rng rng(29);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = static_cast<std::size_t>(gen::uniform(rng, 1, 4));
    const BiPoly f = gen::poly(rng, n, 5, 6);
    CHECK(parse_poly(render_poly(f), n) == f);
  }
}
