#pragma once

#include <map>
#include <optional>
#include <vector>

#include "harmalg/patterns.hpp"
#include "harmalg/sphere.hpp"

namespace harmalg {

struct ProductSupportReport {
  std::size_t n = 0;
  Bidegree left;
  Bidegree right;
  CombineRule rule = CombineRule::Minus;
  // Only bidegrees of total degree <= max_total were probed, when set.
  std::optional<int> max_total;
  BidegreeSet support;
  BidegreeSet predicted;
  bool match = false;
  // One nonzero projection per support point.
  std::map<Bidegree, BiPoly> witness_components;
  std::size_t products_examined = 0;

  BidegreeSet missing() const;  // predicted \ support
  BidegreeSet extra() const;    // support \ predicted
};

struct ProductOptions {
  CombineRule rule = CombineRule::Minus;
  std::optional<int> max_total;
  bool witnesses = true;
};

// Bidegree support of the span of products H(left) * H(right), computed
// exactly from the products of basis elements.
ProductSupportReport product_space_support(const SphereContext& ctx, Bidegree left, Bidegree right,
                                           const ProductOptions& opts = {});

// Union of bidegree supports of the generators, as a box of degree equal to
// the largest term degree among them (or max_total when given).
PatternBox uinv_span_pattern(const SphereContext& ctx, const std::vector<BiPoly>& generators,
                             std::optional<int> max_total = std::nullopt);

struct AlgebraCheck {
  bool is_algebra = true;
  std::optional<Bidegree> left;
  std::optional<Bidegree> right;
  std::optional<Bidegree> escaping;
  std::size_t pairs_checked = 0;
};

// Member pairs in the order they are checked: by combined total degree, then
// by position with members ordered by (total degree, p descending).
std::vector<std::pair<Bidegree, Bidegree>> ordered_pairs(const PatternBox& omega);

// True iff the support of every H(a) * H(b), a, b in omega, restricted to the
// box, stays inside omega. On failure, reports the first offending pair.
AlgebraCheck is_algebra_exact(const SphereContext& ctx, const PatternBox& omega);

struct CStarEquivalence {
  AlgebraCheck uniform;   // closure in C(S)
  AlgebraCheck weakstar;  // closure in L-infinity
  bool equivalent = true;
  std::string note;
};

// The uniform and weak* algebra questions consume the same E_Omega data, so
// both verdicts come from the same support-containment test.
CStarEquivalence cstar_equivalence_check(const SphereContext& ctx, const PatternBox& omega);

}  // namespace harmalg
