#include <doctest.h>

#include <cmath>

#include "gen.hpp"
#include "harmalg/parse.hpp"
#include "harmalg/sphere.hpp"

using namespace harmalg;

namespace {

// 2 * integral_0^{pi/2} cos^{2a+1} sin^{2b+1}, composite Simpson: the n = 2
// monomial integral written in Hopf coordinates.
double hopf_quadrature(int a, int b) {
  const int steps = 4000;
  const double h = (M_PI / 2) / steps;
  auto f = [&](double t) { return std::pow(std::cos(t), 2 * a + 1) * std::pow(std::sin(t), 2 * b + 1); };
  double s = f(0) + f(M_PI / 2);
  for (int k = 1; k < steps; ++k) s += (k % 2 ? 4 : 2) * f(k * h);
  return 2 * s * h / 3;
}

// Inverse stereographic projection of t in Q^(2n-1): an exact point of S.
SpherePoint rational_sphere_point(gen::Rng& rng, std::size_t n) {
  std::vector<Rational> t(2 * n - 1);
  Rational s = 0;
  for (auto& x : t) {
    x = gen::rational(rng, 3);
    s += x * x;
  }
  std::vector<Rational> x(2 * n);
  for (std::size_t k = 0; k + 1 < 2 * n; ++k) x[k] = 2 * t[k] / (s + 1);
  x[2 * n - 1] = (s - 1) / (s + 1);
  std::vector<GaussRational> z;
  for (std::size_t j = 0; j < n; ++j) z.emplace_back(x[2 * j], x[2 * j + 1]);
  return SpherePoint(z);
}

long binom(long a, long b) {
  if (b < 0 || a < b) return 0;
  long r = 1;
  for (long k = 1; k <= b; ++k) r = r * (a - b + k) / k;
  return r;
}

long expected_dim(long n, long p, long q) {
  return binom(p + n - 1, p) * binom(q + n - 1, q) - binom(p + n - 2, p - 1) * binom(q + n - 2, q - 1);
}

}  // namespace

TEST_CASE("monomial integrals") {
  CHECK(integrate_monomial(2, {0, 0}, {0, 0}) == 1);
  CHECK(integrate_monomial(2, {1, 0}, {1, 0}) == Rational(1, 2));
  CHECK(integrate_monomial(2, {2, 0}, {2, 0}) == Rational(1, 3));
  CHECK(integrate_monomial(3, {1, 1, 0}, {1, 1, 0}) == Rational(1, 12));
  CHECK(integrate_monomial(2, {1, 0}, {0, 1}) == 0);
  CHECK(integrate_monomial(1, {4}, {4}) == 1);
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; b <= 4; ++b)
      CHECK(integrate_monomial(2, {a, b}, {a, b}).get_d() == doctest::Approx(hopf_quadrature(a, b)).epsilon(1e-10));
}

TEST_CASE("sum over coordinates of |z_j|^2 z^a conj(z)^a reproduces the lower integral") {
  for (std::size_t n = 1; n <= 4; ++n)
    for (int d = 0; d <= 4; ++d)
      for (const auto& a : multi_indices(n, d)) {
        Rational s = 0;
        for (std::size_t j = 0; j < n; ++j) {
          const MultiIndex up = a + MultiIndex::unit(n, j);
          s += integrate_monomial(n, up, up);
        }
        CHECK(s == integrate_monomial(n, a, a));
      }
}

TEST_CASE("dimensions of H(p,q)") {
  const SphereContext c2(2), c3(3), c1(1);
  CHECK(c2.space({1, 1})->dim() == 3);
  CHECK(c1.space({1, 1})->dim() == 0);
  CHECK(c1.space({3, 0})->dim() == 1);
  for (long n = 1; n <= 4; ++n) {
    const SphereContext ctx(static_cast<std::size_t>(n));
    for (int p = 0; p <= 3; ++p)
      for (int q = 0; p + q <= 4; ++q)
        CHECK(static_cast<long>(ctx.space({p, q})->dim()) == expected_dim(n, p, q));
  }
  CHECK(c3.space({2, 1}) == c3.space({2, 1}));
}

TEST_CASE("basis elements are harmonic, homogeneous and independent") {
  const SphereContext ctx(3);
  for (int p = 0; p <= 3; ++p)
    for (int q = 0; p + q <= 4; ++q) {
      const auto h = ctx.space({p, q});
      for (const auto& b : h->basis()) {
        CHECK(laplacian(b).is_zero());
        CHECK(b.is_homogeneous({p, q}));
      }
      CHECK(mat_rank(h->gram()) == h->dim());
      CHECK(h->gram().is_hermitian());
    }
}

TEST_CASE("zonal kernels") {
  const SphereContext ctx(2);
  const SpherePoint e1({1, 0});
  CHECK(zonal_kernel(ctx.space({1, 0}), e1).kernel == parse_poly("2*z1", 2));
  CHECK(zonal_kernel(ctx.space({2, 0}), e1).kernel == parse_poly("3*z1^2", 2));
  CHECK(zonal_kernel(ctx.space({0, 0}), e1).kernel == BiPoly::constant(2, 1));
  CHECK(zonal_kernel(ctx.space({0, 1}), e1).kernel == parse_poly("2*w1", 2));
}

TEST_CASE("kernel value at its own point is the dimension") {
  gen::Rng rng(31);
  for (std::size_t n = 1; n <= 3; ++n) {
    const SphereContext ctx(n);
    for (int t = 0; t < 4; ++t) {
      const SpherePoint z = rational_sphere_point(rng, n);
      for (int p = 0; p <= 2; ++p)
        for (int q = 0; p + q <= 3; ++q) {
          const auto h = ctx.space({p, q});
          const auto k = zonal_kernel(h, z);
          CHECK(k.kernel.evaluate(z.coords()) == GaussRational(static_cast<long>(h->dim())));
          CHECK(inner_product(k.kernel, k.kernel) == GaussRational(static_cast<long>(h->dim())));
          for (const auto& f : h->basis()) CHECK(inner_product(f, k.kernel) == f.evaluate(z.coords()));
        }
    }
  }
}

TEST_CASE("sphere points are validated exactly") {
  CHECK_THROWS_AS(SpherePoint({1, 1}), NotOnSphere);
  CHECK_NOTHROW(SpherePoint({GaussRational(Rational(1, 3), Rational(2, 3)), Rational(2, 3)}));
  const SphereContext ctx(2);
  CHECK_THROWS_AS(zonal_kernel(ctx.space({1, 0}), SpherePoint({1, 0, 0})), DimensionMismatch);
}

TEST_CASE("projections of small examples") {
  const SphereContext ctx(2);
  const BiPoly f = parse_poly("z1*w1", 2);
  CHECK(project_bidegree(ctx, f, {0, 0}) == BiPoly::constant(2, GaussRational(Rational(1, 2))));
  CHECK(project_bidegree(ctx, f, {1, 1}) == parse_poly("1/2*z1*w1 - 1/2*z2*w2", 2));
  CHECK(project_bidegree(ctx, f, {2, 0}).is_zero());
  CHECK(bidegree_support(ctx, parse_poly("z1*w1 - 1/2", 2)) == BidegreeSet{{1, 1}});
  CHECK(bidegree_support(ctx, parse_poly("z1*w1 + z2*w2", 2)) == BidegreeSet{{0, 0}});
  CHECK(bidegree_support(ctx, parse_poly("z1^2*w1^2", 2)) == BidegreeSet{{0, 0}, {1, 1}, {2, 2}});
  CHECK(bidegree_support(ctx, parse_poly("z1^2*w1^2", 2), 2) == BidegreeSet{{0, 0}, {1, 1}});
}

TEST_CASE("projection calculus on random polynomials") {
  gen::Rng rng(37);
  for (std::size_t n = 2; n <= 3; ++n) {
    const SphereContext ctx(n);
    for (int t = 0; t < 25; ++t) {
      const BiPoly f = gen::poly(rng, n, 4);
      GaussRational parseval = 0;
      BiPoly sum(n);
      for (const auto bd : bidegree_support(ctx, f)) {
        const BiPoly pf = project_bidegree(ctx, f, bd);
        CHECK(project_bidegree(ctx, pf, bd) == pf);
        CHECK(laplacian(pf).is_zero());
        for (const auto other : candidate_bidegrees(f))
          if (other != bd) CHECK(project_bidegree(ctx, pf, other).is_zero());
        parseval += inner_product(pf, pf);
        sum += pf;
      }
      CHECK(parseval == inner_product(f, f));
      const BiPoly rest = f - sum;
      CHECK(inner_product(rest, rest).is_zero());
      // <f, g> for g in H(p,q) only sees the (p,q) component
      for (const auto bd : candidate_bidegrees(f))
        for (const auto& b : ctx.space(bd)->basis())
          CHECK(inner_product(f, b) == inner_product(project_bidegree(ctx, f, bd), b));
    }
  }
}

TEST_CASE("unitary substitution preserves supports and norms") {
  gen::Rng rng(41);
  const RatMatrix u{{Rational(3, 5), 0, Rational(-4, 5)},
                    {0, GaussRational::i(), 0},
                    {Rational(4, 5), 0, Rational(3, 5)}};
  const SphereContext ctx(3);
  for (int t = 0; t < 20; ++t) {
    const BiPoly f = gen::poly(rng, 3, 3);
    const BiPoly g = gen::poly(rng, 3, 3);
    const BiPoly fu = substitute_linear(f, u);
    CHECK(bidegree_support(ctx, fu) == bidegree_support(ctx, f));
    CHECK(inner_product(fu, fu) == inner_product(f, f));
    CHECK(bilinear_pairing(fu, g) == bilinear_pairing(f, substitute_linear(g, u.adjoint())));
  }
}

TEST_CASE("dilated holomorphic polynomials stay holomorphic in support") {
  gen::Rng rng(43);
  const SphereContext ctx(2);
  for (int t = 0; t < 20; ++t) {
    const BiPoly f = scale_radial(gen::poly(rng, 2, 4, 4, true), Rational(2, 3));
    for (const auto bd : bidegree_support(ctx, f)) CHECK(bd.q == 0);
  }
}
