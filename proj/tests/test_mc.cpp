#include <doctest.h>

#include <cmath>

#include "harmalg/mc.hpp"
#include "harmalg/parse.hpp"

using namespace harmalg;
using namespace harmalg::mc;

namespace {

constexpr std::size_t kSamples = 100000;
constexpr std::uint64_t kSeed = 42;

// Taylor coefficients of (a - x) / (1 - a x) by series division.
std::vector<double> moebius_series(double a, int terms) {
  std::vector<double> num(static_cast<std::size_t>(terms), 0.0), out(static_cast<std::size_t>(terms), 0.0);
  num[0] = a;
  if (terms > 1) num[1] = -1.0;
  for (int k = 0; k < terms; ++k) {
    double c = num[static_cast<std::size_t>(k)];
    if (k > 0) c += a * out[static_cast<std::size_t>(k - 1)];
    out[static_cast<std::size_t>(k)] = c;
  }
  return out;
}

double norm(const CVector& v) {
  double s = 0;
  for (const auto& x : v) s += std::norm(x);
  return std::sqrt(s);
}

}  // namespace

TEST_CASE("series oracle") {
  const auto c = moebius_series(0.5, 4);
  CHECK(c[0] == doctest::Approx(0.5));
  CHECK(c[1] == doctest::Approx(-0.75));
  CHECK(c[2] == doctest::Approx(-0.375));
  CHECK(c[3] == doctest::Approx(-0.1875));
}

TEST_CASE("estimate predicates") {
  QuadEstimate e{Complex(0.01, 0.0), 0.001, 100};
  CHECK(e.agrees_with(0.0135));
  CHECK_FALSE(e.agrees_with(0.0));
  CHECK(e.is_nonzero());
  QuadEstimate tiny{Complex(5e-4, 0.0), 1e-6, 100};
  CHECK_FALSE(tiny.is_nonzero());
}

TEST_CASE("ball automorphism") {
  const BallAutomorphism phi({Complex(0.3, 0.1), Complex(-0.2, 0.4)});
  const CVector z{Complex(0.6, 0.0), Complex(0.0, 0.8)};
  const CVector fz = phi.apply(z);
  CHECK(norm(fz) == doctest::Approx(1.0).epsilon(1e-12));
  const CVector back = phi.apply(fz);
  CHECK(std::abs(back[0] - z[0]) < 1e-12);
  CHECK(std::abs(back[1] - z[1]) < 1e-12);
  const CVector at0 = phi.apply(CVector(2));
  CHECK(std::abs(at0[0] - phi.center()[0]) < 1e-15);
  CHECK(norm(phi.apply(phi.center())) < 1e-14);

  const BallAutomorphism neg({0.0, 0.0});
  CHECK(neg.apply(z)[1] == -z[1]);

  CHECK_THROWS_AS(BallAutomorphism({1.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(BallAutomorphism({0.5, 0.0}).apply(CVector{2.0, 0.0}), SingularDenominator);
  CHECK_THROWS_AS(phi.apply(CVector{1.0}), DimensionMismatch);
}

TEST_CASE("sampler output") {
  const HaarSampler s(kSeed, 3, 1);
  auto eng = s.chunk_engine(0);
  for (int t = 0; t < 200; ++t) {
    CHECK(norm(s.sphere_point(eng)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(unitarity_defect(s.unitary(eng)) <= 1e-12);
  }
  auto e1 = s.chunk_engine(5), e2 = s.chunk_engine(5), e3 = s.chunk_engine(6);
  CHECK(e1() == e2());
  CHECK(e1() != e3());
}

TEST_CASE("estimates are bit-identical across thread counts") {
  const NumericPoly f(parse_poly("z1^2*w1^2 - (1/2+i)*z1*w2", 2));
  const auto a = mc_integrate(f, HaarSampler(kSeed, 2, 1), 50000);
  const auto b = mc_integrate(f, HaarSampler(kSeed, 2, 3), 50000);
  const auto c = mc_integrate(f, HaarSampler(kSeed, 2, 8), 50000);
  CHECK(a.value == b.value);
  CHECK(a.value == c.value);
  CHECK(a.stderr_ == c.stderr_);
  CHECK(a.samples == 50000);
  const auto d = mc_integrate(f, HaarSampler(kSeed + 1, 2, 1), 50000);
  CHECK(a.value != d.value);
}

TEST_CASE("integral of |z1|^4 on the sphere of C^2") {
  const BiPoly f = parse_poly("z1^2*w1^2", 2);
  const HaarSampler s(kSeed, 2);
  const auto est = mc_integrate(NumericPoly(f), s, kSamples);
  CHECK(est.agrees_with(1.0 / 3.0));
  const auto avg = haar_average_check(f, CVector{0.6, 0.8}, s, kSamples);
  CHECK(avg.exact.value == Complex(1.0 / 3.0));
  CHECK(avg.agrees());
}

TEST_CASE("batched monomial integrals") {
  std::vector<BiMonomial> mons;
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; b <= 2; ++b)
      for (const auto& al : multi_indices(2, a))
        for (const auto& be : multi_indices(2, b)) mons.push_back({al, be});
  const HaarSampler s(kSeed, 2);
  const auto est = mc_integrate_monomials(mons, s, kSamples);
  REQUIRE(est.size() == mons.size());
  for (std::size_t i = 0; i < mons.size(); ++i)
    CHECK(est[i].agrees_with(integrate_monomial(2, mons[i].alpha, mons[i].beta).get_d()));
  // single-monomial path gives the same numbers
  const auto single = mc_integrate(NumericPoly(BiPoly::monomial(mons[4])), s, kSamples);
  CHECK(std::abs(single.value - est[4].value) < 1e-15);
}

TEST_CASE("projection estimates match the series oracle") {
  const SphereContext ctx(2);
  const HaarSampler s(kSeed, 2);
  const SphereFunction z1 = [](std::span<const Complex> z) { return z[0]; };
  CHECK(mc_project(z1, {1, 0}, ctx, s, kSamples).agrees_with(1.0));
  CHECK(mc_project(z1, {0, 1}, ctx, s, kSamples).agrees_with(0.0));

  const auto f = compose(BiPoly::z(2, 1), BallAutomorphism({0.5, 0.0}));
  const auto c = moebius_series(0.5, 4);
  for (int k = 0; k <= 3; ++k) {
    const auto e = mc_project(f, {k, 0}, ctx, s, kSamples);
    CHECK(e.agrees_with(c[static_cast<std::size_t>(k)]));
    CHECK(e.is_nonzero());
  }
  const auto e1 = mc_project(f, {2, 0}, ctx, s, kSamples, SpherePoint({0, 1}));
  CHECK(e1.agrees_with(0.0));
}

TEST_CASE("ladder evidence") {
  const SphereContext ctx(2);
  const HaarSampler s(kSeed, 2);
  const auto ev = moebius_ladder_evidence({1, 0}, {0.5, 0.0}, ctx, s, kSamples);
  CHECK(ev.lower_found);
  CHECK(ev.upper_found);
  REQUIRE(ev.holomorphic_vanishing);
  CHECK(*ev.holomorphic_vanishing);
  CHECK(ev.evidence());

  const auto flat = moebius_ladder_evidence({1, 0}, {0.0, 0.0}, ctx, s, kSamples);
  CHECK_FALSE(flat.lower_found);
  CHECK_FALSE(flat.upper_found);
  CHECK_FALSE(flat.evidence());
  CHECK_THROWS_AS(moebius_ladder_evidence({0, 1}, {0.5, 0.0}, ctx, s, kSamples), std::invalid_argument);
}
