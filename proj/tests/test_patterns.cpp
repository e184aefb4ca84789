#include <doctest.h>

#include "gen.hpp"
#include "harmalg/parse.hpp"
#include "harmalg/patterns.hpp"

using namespace harmalg;

namespace {

// Repeated full sweeps over all pairs until nothing changes.
PatternBox sweep_closure(const PatternBox& seed, CombineRule rule = CombineRule::Minus) {
  PatternBox cur = seed;
  for (bool grew = true; grew;) {
    grew = false;
    const BidegreeSet snap = cur.members();
    for (const auto& a : snap)
      for (const auto& b : snap)
        for (const auto& x : combine_points(a, b, rule)) grew = cur.insert(x) || grew;
  }
  return cur;
}

PatternBox pts(int D, const char* text) { return PatternBox(D, parse_points(text)); }

}  // namespace

TEST_CASE("combine_points") {
  CHECK(combine_points({1, 0}, {0, 1}) == BidegreeSet{{1, 1}, {0, 0}});
  CHECK(combine_points({2, 1}, {2, 1}) == BidegreeSet{{4, 2}, {3, 1}, {2, 0}});
  CHECK(combine_points({3, 0}, {2, 0}) == BidegreeSet{{5, 0}});
  CHECK(combine_points({1, 1}, {1, 1}) == BidegreeSet{{2, 2}, {1, 1}, {0, 0}});
  CHECK(combine_points({1, 0}, {0, 1}, CombineRule::Plus) == BidegreeSet{{1, 1}, {2, 2}});
  CHECK(combine_points({2, 1}, {0, 3}) == combine_points({0, 3}, {2, 1}));
}

TEST_CASE("closure examples") {
  CHECK(render_points(closure_box(pts(6, "(1,1)")).members()) == "(0,0);(1,1);(2,2);(3,3)");
  CHECK(render_points(closure_box(pts(12, "(1,1)")).members()) ==
        "(0,0);(1,1);(2,2);(3,3);(4,4);(5,5);(6,6)");
  CHECK(closure_box(pts(8, "(1,1)")) == PatternBox::from_predicate(8, [](Bidegree b) { return b.p == b.q; }));
  CHECK(closure_box(pts(8, "(1,0)")) ==
        PatternBox::from_predicate(8, [](Bidegree b) { return b.q == 0 && b.p >= 1; }));
  CHECK(closure_box(pts(8, "(2,1)")) == truncate(family::Gpq{2, 1}, 8));
  CHECK(closure_box(pts(6, "(1,0);(0,1)")) == PatternBox::full(6));
  CHECK(closure_box(PatternBox(5, {})).empty());
}

TEST_CASE("closure agrees with repeated sweeps and is a closed superset") {
  gen::Rng rng(53);
  for (int t = 0; t < 200; ++t) {
    const int D = gen::uniform(rng, 0, 8);
    PatternBox seed(D, {});
    for (int k = gen::uniform(rng, 1, 3); k > 0; --k) {
      const int tot = gen::uniform(rng, 0, D);
      const int p = gen::uniform(rng, 0, tot);
      seed.insert({p, tot - p});
    }
    for (auto rule : {CombineRule::Minus, CombineRule::Plus}) {
      const PatternBox cl = closure_box(seed, rule);
      CHECK(cl == sweep_closure(seed, rule));
      CHECK(is_pattern_box(cl, rule));
      CHECK(closure_box(cl, rule) == cl);
      CHECK(closure_box(conjugate_pattern(seed), rule) == conjugate_pattern(cl));
    }
  }
}

TEST_CASE("plus rule closure of the diagonal point misses the origin") {
  const PatternBox cl = closure_box(pts(8, "(1,1)"), CombineRule::Plus);
  CHECK_FALSE(cl.contains({0, 0}));
  CHECK(cl != truncate(family::GofSigma{}, 8));
}

TEST_CASE("violations name the offending pair") {
  const auto v = find_pattern_violation(pts(6, "(1,0);(0,1)"));
  REQUIRE(v);
  CHECK(combine_points(v->left, v->right).count(v->missing) == 1);
  CHECK_FALSE(is_pattern_box(truncate(family::Pluriharmonic{}, 4)));
  CHECK(is_pattern_box(truncate(family::Hol{}, 4)));
  CHECK_THROWS(PatternBox(2, {{2, 1}}));
}

TEST_CASE("family membership") {
  CHECK(family_membership(family::GofD{2}, {3, 1}));
  CHECK_FALSE(family_membership(family::GofD{2}, {2, 1}));
  CHECK(family_membership(family::GofSigma{{3}}, {5, 2}));
  CHECK_FALSE(family_membership(family::GofSigma{{3}}, {2, 0}));
  CHECK(family_membership(family::GofSigma{}, {4, 4}));
  CHECK_FALSE(family_membership(family::GofSigmaStar{}, {3, 3}));
  CHECK(family_membership(family::GofSigmaStar{}, {2, 2}));
  CHECK(family_membership(family::Gpq{2, 1}, {2, 1}));
  CHECK(family_membership(family::Gpq{2, 1}, {3, 1}));
  CHECK(family_membership(family::Gpq{2, 1}, {2, 0}));
  CHECK_FALSE(family_membership(family::Gpq{2, 1}, {1, 0}));
  CHECK_FALSE(family_membership(family::GpqN2{2, 1}, {3, 1}));
  CHECK(family_membership(family::GpqN2{2, 1}, {4, 2}));
  CHECK(family_membership(family::Pluriharmonic{}, {0, 3}));
  CHECK_FALSE(family_membership(family::Pluriharmonic{}, {1, 1}));
  CHECK_THROWS_AS(validate(family::GofD{0}), InvalidFamily);
  CHECK_THROWS_AS(validate(family::Gpq{1, 1}), InvalidFamily);
  CHECK_THROWS_AS(truncate(family::GofSigma{{0}}, 3), InvalidFamily);
}

TEST_CASE("family literals round trip") {
  for (const char* lit : {"G(d=2)", "GSigma(3,5)", "GSigmaStar()", "Gpq(2,1)", "GpqN2(3,1)", "empty", "origin", "hol",
                          "antihol", "plurih", "full"})
    CHECK(to_string(parse_family(lit)) == lit);
  CHECK(to_string(parse_family("G(2)")) == "G(d=2)");
  CHECK_THROWS_AS(parse_family("Gpq(2)"), ParseError);
  CHECK_THROWS_AS(parse_family("nope"), ParseError);
}

TEST_CASE("semigroup membership") {
  CHECK(in_semigroup({3, 5}, 8));
  CHECK(in_semigroup({3, 5}, 11));
  CHECK_FALSE(in_semigroup({3, 5}, 7));
  CHECK_FALSE(in_semigroup({}, 1));
}

TEST_CASE("classification") {
  CHECK(to_string(classify_pattern(closure_box(pts(6, "(1,0);(0,1)"))).family) == "G(d=1)");
  CHECK(to_string(classify_pattern(closure_box(pts(8, "(2,0);(0,2)"))).family) == "G(d=2)");
  CHECK(to_string(classify_pattern(closure_box(pts(6, "(1,1)"))).family) == "GSigma()");
  CHECK(to_string(classify_pattern(closure_box(pts(8, "(1,1);(3,0)"))).family) == "GSigma(3)");
  CHECK(to_string(classify_pattern(closure_box(pts(8, "(2,1)"))).family) == "Gpq(2,1)");
  CHECK(to_string(classify_pattern(PatternBox(4, {})).family) == "empty");
  CHECK(to_string(classify_pattern(pts(4, "(0,0)")).family) == "origin");

  const auto mirrored = classify_pattern(closure_box(pts(8, "(1,2)")));
  CHECK(mirrored.mirrored);
  CHECK(to_string(mirrored.family) == "Gpq(2,1)");

  // the n = 2 variants are not closed under the combination rule
  CHECK_THROWS_AS(classify_pattern(truncate(family::GpqN2{2, 1}, 8)), ClassificationError);
  CHECK_THROWS_AS(classify_pattern(truncate(family::GofSigmaStar{}, 8)), ClassificationError);

  CHECK_THROWS_AS(classify_pattern(pts(6, "(1,0);(0,1)")), ClassificationError);
}

TEST_CASE("every classified family reproduces its box") {
  const std::vector<PatternFamily> fams{family::GofD{3},       family::GofSigma{{2, 5}}, family::Gpq{3, 1},
                                        family::Gpq{5, 2},     family::Hol{},            family::AntiHol{},
                                        family::Full{}};
  for (const auto& fam : fams) {
    const PatternBox box = truncate(fam, 10);
    const auto res = classify_pattern(box);
    const PatternBox back = truncate(res.family, 10);
    CHECK((res.mirrored ? conjugate_pattern(back) : back) == box);
  }
}

TEST_CASE("Moebius ladder closure") {
  CHECK(m_ladder_closure(pts(4, "(1,0)")) == truncate(family::Hol{}, 4));
  CHECK(m_ladder_closure(pts(4, "(0,2)")) == truncate(family::AntiHol{}, 4));
  CHECK(m_ladder_closure(pts(4, "(2,0);(0,1)")) == truncate(family::Pluriharmonic{}, 4));
  CHECK(m_ladder_closure(pts(4, "(1,1)")) == PatternBox::full(4));
  CHECK(m_ladder_closure(pts(4, "(0,0)")) == pts(4, "(0,0)"));
  CHECK(six_space_classify(m_ladder_closure(pts(5, "(3,0)"))) == SixSpace::Hol);
  CHECK(six_space_classify(PatternBox(5, {})) == SixSpace::Empty);
}

TEST_CASE("n = 2 deletions") {
  CHECK(n2_deleted_points({2, 1}, {2, 1}) == BidegreeSet{{3, 1}});
  CHECK(n2_deleted_points({1, 2}, {1, 2}) == BidegreeSet{{1, 3}});
  CHECK(n2_deleted_points({1, 1}, {1, 1}) == BidegreeSet{{1, 1}});
  CHECK(n2_deleted_points({2, 1}, {1, 0}).empty());
  CHECK(n2_deleted_points({3, 0}, {3, 0}).empty());
}

TEST_CASE("point lists") {
  CHECK(parse_points("(1,2);(0,0)") == BidegreeSet{{0, 0}, {1, 2}});
  CHECK(parse_points("").empty());
  CHECK(parse_points("{}").empty());
  CHECK(render_points({}).empty());
  CHECK(render_points(parse_points(" ( 3 , 1 ) ; (1,1)")) == "(1,1);(3,1)");
  CHECK_THROWS_AS(parse_points("(1,2"), ParseError);
  CHECK_THROWS_AS(parse_points("(-1,2)"), ParseError);
}
