#include <doctest.h>

#include "gen.hpp"
#include "harmalg/parse.hpp"
#include "harmalg/product_span.hpp"

using namespace harmalg;

namespace {

// Support of a product of two random combinations; generic elements reach
// every component the span reaches.
BidegreeSet generic_product_support(const SphereContext& ctx, Bidegree a, Bidegree b, gen::Rng& rng) {
  auto random_element = [&](Bidegree bd) {
    const auto h = ctx.space(bd);
    RatVector c(h->dim());
    for (auto& x : c) x = gen::gauss(rng, true);
    return h->combine(c);
  };
  BidegreeSet out;
  for (int t = 0; t < 3; ++t) {
    const auto s = bidegree_support(ctx, random_element(a) * random_element(b));
    out.insert(s.begin(), s.end());
  }
  return out;
}

}  // namespace

TEST_CASE("n = 2 drops (3,1) from H(2,1)*H(2,1), n = 3 keeps it") {
  const auto r2 = product_space_support(SphereContext(2), {2, 1}, {2, 1});
  CHECK_FALSE(r2.match);
  CHECK(r2.missing() == BidegreeSet{{3, 1}});
  CHECK(r2.extra().empty());
  const auto r3 = product_space_support(SphereContext(3), {2, 1}, {2, 1});
  CHECK(r3.match);
  CHECK(r3.support.count({3, 1}) == 1);
}

TEST_CASE("witness components are nonzero harmonic projections") {
  const SphereContext ctx(3);
  const auto rep = product_space_support(ctx, {1, 1}, {1, 0});
  CHECK(rep.match);
  for (const auto& [bd, w] : rep.witness_components) {
    CHECK_FALSE(w.is_zero());
    CHECK(w.is_homogeneous(bd));
    CHECK(laplacian(w).is_zero());
  }
  CHECK(rep.witness_components.size() == rep.support.size());
}

TEST_CASE("support agrees with generic products") {
  gen::Rng rng(59);
  for (std::size_t n = 2; n <= 3; ++n) {
    const SphereContext ctx(n);
    for (int t = 0; t < 12; ++t) {
      const Bidegree a{gen::uniform(rng, 0, 2), gen::uniform(rng, 0, 1)};
      const Bidegree b{gen::uniform(rng, 0, 1), gen::uniform(rng, 0, 2)};
      CHECK(product_space_support(ctx, a, b).support == generic_product_support(ctx, a, b, rng));
    }
  }
}

TEST_CASE("max_total restricts probing and prediction") {
  ProductOptions o;
  o.max_total = 2;
  const auto rep = product_space_support(SphereContext(3), {1, 1}, {1, 1}, o);
  CHECK(rep.support == BidegreeSet{{0, 0}, {1, 1}});
  CHECK(rep.match);
}

TEST_CASE("span pattern of generators") {
  const SphereContext ctx(2);
  CHECK(uinv_span_pattern(ctx, {parse_poly("z1^2*w1^2", 2)}).members() == BidegreeSet{{0, 0}, {1, 1}, {2, 2}});
  CHECK(uinv_span_pattern(ctx, {parse_poly("z1", 2), parse_poly("w2^2", 2)}).members() == BidegreeSet{{1, 0}, {0, 2}});
}

TEST_CASE("algebra checks") {
  const SphereContext c2(2), c3(3), c1(1);
  const auto plurih = truncate(family::Pluriharmonic{}, 4);
  const auto res = is_algebra_exact(c2, plurih);
  CHECK_FALSE(res.is_algebra);
  CHECK(*res.left == Bidegree{1, 0});
  CHECK(*res.right == Bidegree{0, 1});
  CHECK(*res.escaping == Bidegree{1, 1});
  CHECK(is_algebra_exact(c1, plurih).is_algebra);
  CHECK(is_algebra_exact(c2, truncate(family::GpqN2{2, 1}, 6)).is_algebra);
  CHECK(is_algebra_exact(c2, truncate(family::Gpq{2, 1}, 6)).is_algebra);
  CHECK(is_algebra_exact(c3, truncate(family::Gpq{2, 1}, 5)).is_algebra);
  CHECK(is_algebra_exact(c3, truncate(family::Hol{}, 5)).is_algebra);
  const auto eq = cstar_equivalence_check(c2, plurih);
  CHECK(eq.equivalent);
  CHECK_FALSE(eq.uniform.is_algebra);
  CHECK_FALSE(eq.weakstar.is_algebra);
}

TEST_CASE("pair order puts low combined degree first") {
  const auto pairs = ordered_pairs(truncate(family::Pluriharmonic{}, 2));
  REQUIRE(pairs.size() >= 3);
  CHECK(pairs[0] == std::pair<Bidegree, Bidegree>{{0, 0}, {0, 0}});
  for (std::size_t i = 1; i < pairs.size(); ++i)
    CHECK(pairs[i - 1].first.total() + pairs[i - 1].second.total() <=
          pairs[i].first.total() + pairs[i].second.total());
}
