#include "harmalg/product_span.hpp"

#include <algorithm>
#include <tuple>

namespace harmalg {

BidegreeSet ProductSupportReport::missing() const {
  BidegreeSet out;
  std::set_difference(predicted.begin(), predicted.end(), support.begin(), support.end(),
                      std::inserter(out, out.end()));
  return out;
}

BidegreeSet ProductSupportReport::extra() const {
  BidegreeSet out;
  std::set_difference(support.begin(), support.end(), predicted.begin(), predicted.end(),
                      std::inserter(out, out.end()));
  return out;
}

ProductSupportReport product_space_support(const SphereContext& ctx, Bidegree left, Bidegree right,
                                           const ProductOptions& opts) {
  ProductSupportReport rep;
  rep.n = ctx.n();
  rep.left = left;
  rep.right = right;
  rep.rule = opts.rule;
  rep.max_total = opts.max_total;
  for (const auto& b : combine_points(left, right, opts.rule))
    if (!opts.max_total || b.total() <= *opts.max_total) rep.predicted.insert(b);

  // Every component of a bidegree-(a,b) product has the form (a-j, b-j).
  const Bidegree prod{left.p + right.p, left.q + right.q};
  std::vector<Bidegree> pending;
  for (int j = 0; j <= std::min(prod.p, prod.q); ++j) {
    Bidegree t{prod.p - j, prod.q - j};
    if (!opts.max_total || t.total() <= *opts.max_total) pending.push_back(t);
  }

  const auto sl = ctx.space(left);
  const auto sr = ctx.space(right);
  for (std::size_t i = 0; i < sl->dim() && !pending.empty(); ++i)
    for (std::size_t j = 0; j < sr->dim() && !pending.empty(); ++j) {
      const BiPoly f = poly_mul(sl->basis()[i], sr->basis()[j]);
      ++rep.products_examined;
      for (auto it = pending.begin(); it != pending.end();) {
        const auto target = ctx.space(*it);
        if (target->detects(f)) {
          rep.support.insert(*it);
          if (opts.witnesses) rep.witness_components.emplace(*it, target->project(f));
          it = pending.erase(it);
        } else {
          ++it;
        }
      }
    }
  rep.match = rep.support == rep.predicted;
  return rep;
}

PatternBox uinv_span_pattern(const SphereContext& ctx, const std::vector<BiPoly>& generators,
                             std::optional<int> max_total) {
  int d = 0;
  for (const auto& g : generators) d = std::max(d, g.total_degree());
  if (max_total) d = *max_total;
  PatternBox out(d, {});
  for (const auto& g : generators)
    for (const auto& b : bidegree_support(ctx, g, d)) out.insert(b);
  return out;
}

std::vector<std::pair<Bidegree, Bidegree>> ordered_pairs(const PatternBox& omega) {
  std::vector<Bidegree> m(omega.members().begin(), omega.members().end());
  std::sort(m.begin(), m.end(), [](Bidegree a, Bidegree b) {
    return std::make_tuple(a.total(), -a.p) < std::make_tuple(b.total(), -b.p);
  });
  std::vector<std::tuple<int, std::size_t, std::size_t>> idx;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i; j < m.size(); ++j) idx.emplace_back(m[i].total() + m[j].total(), i, j);
  std::sort(idx.begin(), idx.end());
  std::vector<std::pair<Bidegree, Bidegree>> out;
  out.reserve(idx.size());
  for (const auto& [s, i, j] : idx) out.emplace_back(m[i], m[j]);
  return out;
}

AlgebraCheck is_algebra_exact(const SphereContext& ctx, const PatternBox& omega) {
  AlgebraCheck res;
  const int D = omega.max_total_degree();
  for (const auto& [a, b] : ordered_pairs(omega)) {
    ++res.pairs_checked;
    // lowest reachable component has total |(p+r) - (q+s)|
    if (std::abs((a.p + b.p) - (a.q + b.q)) > D) continue;
    ProductOptions opts;
    opts.max_total = D;
    opts.witnesses = false;
    const auto rep = product_space_support(ctx, a, b, opts);
    for (const auto& x : rep.support)
      if (!omega.contains(x)) {
        res.is_algebra = false;
        res.left = a;
        res.right = b;
        res.escaping = x;
        return res;
      }
  }
  return res;
}

CStarEquivalence cstar_equivalence_check(const SphereContext& ctx, const PatternBox& omega) {
  CStarEquivalence out;
  out.uniform = is_algebra_exact(ctx, omega);
  out.weakstar = out.uniform;
  out.equivalent = true;
  out.note =
      "C(S)- and L-infinity-algebra patterns coincide; both verdicts reduce to containment of "
      "H(p,q)*H(r,s) supports in the pattern";
  return out;
}

}  // namespace harmalg
