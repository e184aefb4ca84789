#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "gen.hpp"
#include "harmalg/matrix.hpp"
#include "harmalg/parse.hpp"
#include "harmalg/poly.hpp"

using namespace harmalg;

namespace {

GaussRational gq(long a, long b, long c = 0, long d = 1) { return {Rational(a, b), Rational(c, d)}; }

// Determinant by permutation expansion; independent of the elimination code.
GaussRational leibniz_det(const RatMatrix& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  std::vector<std::size_t> perm(cols.size());
  std::iota(perm.begin(), perm.end(), 0);
  GaussRational det = 0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
      for (std::size_t j = i + 1; j < perm.size(); ++j) inversions += perm[i] > perm[j];
    GaussRational term = inversions % 2 ? -1 : 1;
    for (std::size_t i = 0; i < perm.size(); ++i) term *= m(rows[i], cols[perm[i]]);
    det += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

// Largest k with a nonzero k x k minor.
std::size_t minor_rank(const RatMatrix& m) {
  for (std::size_t k = std::min(m.rows(), m.cols()); k > 0; --k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    std::vector<std::size_t> cur;
    subsets(m.rows(), k, 0, cur, rs);
    subsets(m.cols(), k, 0, cur, cs);
    for (const auto& r : rs)
      for (const auto& c : cs)
        if (!leibniz_det(m, r, c).is_zero()) return k;
  }
  return 0;
}

RatMatrix random_matrix(gen::Rng& rng) {
  const auto r = static_cast<std::size_t>(gen::uniform(rng, 1, 4));
  const auto c = static_cast<std::size_t>(gen::uniform(rng, 1, 5));
  RatMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (gen::uniform(rng, 0, 2)) m(i, j) = gen::gauss(rng);
  if (r >= 3 && gen::uniform(rng, 0, 1))
    for (std::size_t j = 0; j < c; ++j) m(2, j) = m(0, j) * gq(2, 3, 1) - m(1, j);
  return m;
}

}  // namespace

TEST_CASE("rational parsing and printing") {
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK(parse_rational("-7") == Rational(-7));
  CHECK(to_fraction_string(Rational(3)) == "3/1");
  CHECK(to_fraction_string(make_rational(-2, 6)) == "-1/3");
  CHECK(to_short_string(make_rational(-2, 6)) == "-1/3");
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("x"), ParseError);
  CHECK_THROWS_AS(make_rational(1, 0), std::domain_error);
}

TEST_CASE("gaussian rational arithmetic") {
  const GaussRational a = gq(1, 2, 1, 3), b = gq(-2, 1, 3, 4);
  // (1/2 + i/3)(-2 + 3i/4) = -1 - 1/4 + i(3/8 - 2/3)
  CHECK(a * b == gq(-5, 4, -7, 24));
  CHECK(a / a == GaussRational(1));
  CHECK(a.conj() == gq(1, 2, -1, 3));
  CHECK(a.norm2() == Rational(13, 36));
  CHECK(GaussRational::i() * GaussRational::i() == GaussRational(-1));
  CHECK_THROWS_AS(a / GaussRational(0), std::domain_error);
  CHECK_THROWS_AS(GaussRational(0).inverse(), std::domain_error);
  CHECK(to_string(gq(1, 2)) == "1/2");
  CHECK(to_string(gq(1, 2, -1, 3)) == "(1/2-1/3i)");
  CHECK(parse_gauss("(1/3+2/3i)") == gq(1, 3, 2, 3));
}

TEST_CASE("gaussian rational field axioms on random values") {
  gen::Rng rng(7);
  for (int t = 0; t < 400; ++t) {
    const GaussRational a = gen::gauss(rng), b = gen::gauss(rng), c = gen::gauss(rng);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a - a == GaussRational(0));
    if (!a.is_zero()) CHECK(a * a.inverse() == GaussRational(1));
    CHECK((a * b).conj() == a.conj() * b.conj());
    CHECK(parse_gauss(to_string(a)) == a);
  }
}

TEST_CASE("polynomial construction and canonical order") {
  const std::size_t n = 2;
  const BiPoly f = BiPoly::z(n, 1) * BiPoly::w(n, 1) - BiPoly::constant(n, gq(1, 2));
  CHECK(render_poly(f) == "z1*w1 - 1/2");
  CHECK(f.bidegrees() == BidegreeSet{{1, 1}, {0, 0}});
  CHECK(f.total_degree() == 2);
  CHECK(BiPoly(n).total_degree() == -1);
  CHECK_FALSE(f.is_homogeneous({1, 1}));
  CHECK((f - f).is_zero());
  CHECK_THROWS_AS(BiPoly::z(2, 1) + BiPoly::z(3, 1), DimensionMismatch);
  CHECK_THROWS_AS(BiPoly::z(2, 3), std::out_of_range);
}

TEST_CASE("multiplication agrees with pointwise evaluation") {
  gen::Rng rng(11);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = static_cast<std::size_t>(gen::uniform(rng, 1, 3));
    const BiPoly f = gen::poly(rng, n, 3), g = gen::poly(rng, n, 3);
    const auto z = gen::point(rng, n);
    CHECK((f * g).evaluate(z) == f.evaluate(z) * g.evaluate(z));
    CHECK((f + g).evaluate(z) == f.evaluate(z) + g.evaluate(z));
    // conj(f)(z) = conj(f(z)) since w_j evaluates to conj(z_j)
    CHECK(f.conj().evaluate(z) == f.evaluate(z).conj());
    CHECK((f * g).conj() == f.conj() * g.conj());
  }
}

TEST_CASE("laplacian on examples and on |z|^2 times harmonics") {
  const std::size_t n = 2;
  for (std::size_t j = 1; j <= 3; ++j) CHECK(laplacian(BiPoly::z(3, j) * BiPoly::w(3, j)) == BiPoly::constant(3, 4));
  // |z1|^4 -> 16 |z1|^2
  CHECK(laplacian(parse_poly("z1^2*w1^2", n)) == parse_poly("16*z1*w1", n));
  CHECK(laplacian(parse_poly("z1^3 + w2^2", n)).is_zero());
  // For h harmonic of bidegree (p,q): laplacian(|z|^2 h) = 4 (n + p + q) h.
  const BiPoly r2 = parse_poly("z1*w1 + z2*w2 + z3*w3", 3);
  for (const char* h : {"z1*w2", "z1^2*w3 - z2^2*w3", "z1*z2*w3^2"}) {
    const BiPoly hp = parse_poly(h, 3);
    REQUIRE(laplacian(hp).is_zero());
    const auto deg = *hp.bidegrees().begin();
    CHECK(laplacian(r2 * hp) == GaussRational(4 * (3 + deg.total())) * hp);
  }
}

TEST_CASE("linear substitution matches evaluation at U z") {
  gen::Rng rng(5);
  const RatMatrix rot{{gq(3, 5), gq(-4, 5)}, {gq(4, 5), gq(3, 5)}};
  const RatMatrix phase{{GaussRational::i(), 0}, {0, gq(3, 5, 4, 5)}};
  for (const auto& u : {rot, phase, rot * phase}) {
    REQUIRE((u * u.adjoint()).is_identity());
    for (int t = 0; t < 40; ++t) {
      const BiPoly f = gen::poly(rng, 2, 3);
      const auto z = gen::point(rng, 2);
      const RatVector uz = u * RatVector(z);
      CHECK(substitute_linear(f, u).evaluate(z) == f.evaluate(uz));
      CHECK(substitute_linear(substitute_linear(f, u), u.adjoint()) == f);
    }
  }
  CHECK_THROWS_AS(substitute_linear(BiPoly::z(2, 1), RatMatrix{{1, 1}, {0, 1}}), NotUnitary);
  CHECK_THROWS_AS(substitute_linear(BiPoly::z(2, 1), RatMatrix::identity(3)), DimensionMismatch);
}

TEST_CASE("scale_radial multiplies each term by r^degree") {
  const BiPoly f = parse_poly("z1^2*w1 + z2 - 3", 2);
  CHECK(scale_radial(f, Rational(1, 2)) == parse_poly("1/8*z1^2*w1 + 1/2*z2 - 3", 2));
}

TEST_CASE("numeric evaluation agrees with exact evaluation") {
  gen::Rng rng(3);
  for (int t = 0; t < 50; ++t) {
    const BiPoly f = gen::poly(rng, 3, 4);
    const auto z = gen::point(rng, 3);
    std::vector<std::complex<double>> zc;
    for (const auto& x : z) zc.push_back(x.to_complex());
    const auto exact = f.evaluate(z).to_complex();
    CHECK(std::abs(NumericPoly(f)(zc) - exact) <= 1e-9 * (1 + std::abs(exact)));
  }
}

TEST_CASE("echelon, rank and kernel on a fixed matrix") {
  const RatMatrix m{{1, 2, 3}, {2, 4, 6}, {1, 0, GaussRational::i()}};
  CHECK(mat_rank(m) == 2);
  const auto ker = mat_kernel(m);
  REQUIRE(ker.size() == 1);
  for (const auto& x : m * ker[0]) CHECK(x.is_zero());
  const auto e = fraction_free_echelon(m);
  CHECK(e.pivot_cols == std::vector<std::size_t>{0, 1});
}

TEST_CASE("rank and kernel agree with a minors oracle") {
  gen::Rng rng(17);
  for (int t = 0; t < 150; ++t) {
    const RatMatrix m = random_matrix(rng);
    const std::size_t rank = mat_rank(m);
    CHECK(rank == minor_rank(m));
    const auto ker = mat_kernel(m);
    CHECK(ker.size() + rank == m.cols());
    for (const auto& v : ker)
      for (const auto& x : m * v) CHECK(x.is_zero());
  }
}

TEST_CASE("mat_solve returns a solution or reports inconsistency") {
  const RatMatrix a{{1, 1}, {2, 2}};
  const auto x = mat_solve(a, {3, 6});
  REQUIRE(x);
  CHECK(a * *x == RatVector{3, 6});
  CHECK_FALSE(mat_solve(a, {3, 5}));
  gen::Rng rng(23);
  for (int t = 0; t < 60; ++t) {
    const RatMatrix m = random_matrix(rng);
    RatVector x0(m.cols());
    for (auto& v : x0) v = gen::gauss(rng);
    const RatVector b = m * x0;
    const auto sol = mat_solve(m, b);
    REQUIRE(sol);
    CHECK(m * *sol == b);
  }
}
