#include "harmalg/json_io.hpp"

#include "harmalg/parse.hpp"

namespace harmalg::io {

json to_json(const Rational& r) { return to_fraction_string(r); }

json to_json(const GaussRational& x) { return json{{"re", to_json(x.re())}, {"im", to_json(x.im())}}; }

Rational rational_from_json(const json& j) { return parse_rational(j.get<std::string>()); }

GaussRational gauss_from_json(const json& j) {
  return {rational_from_json(j.at("re")), rational_from_json(j.at("im"))};
}

json to_json(const Bidegree& b) { return json::array({b.p, b.q}); }

Bidegree bidegree_from_json(const json& j) { return {j.at(0).get<int>(), j.at(1).get<int>()}; }

json to_json(const BidegreeSet& s) {
  json a = json::array();
  for (const auto& b : s) a.push_back(to_json(b));
  return a;
}

BidegreeSet bidegree_set_from_json(const json& j) {
  BidegreeSet s;
  for (const auto& e : j) s.insert(bidegree_from_json(e));
  return s;
}

json to_json(const BiPoly& f) {
  json terms = json::array();
  for (const auto& [m, c] : f.terms())
    terms.push_back({{"alpha", m.alpha.values()}, {"beta", m.beta.values()}, {"coeff", to_json(c)}});
  return json{{"n", f.dim()}, {"text", render_poly(f)}, {"terms", terms}};
}

BiPoly poly_from_json(const json& j) {
  const auto n = j.at("n").get<std::size_t>();
  BiPoly f(n);
  for (const auto& t : j.at("terms")) {
    BiMonomial m{MultiIndex(t.at("alpha").get<std::vector<int>>()), MultiIndex(t.at("beta").get<std::vector<int>>())};
    f.add_term(m, gauss_from_json(t.at("coeff")));
  }
  return f;
}

json to_json(const PatternBox& b) {
  return json{{"maxdeg", b.max_total_degree()}, {"members", to_json(b.members())}};
}

PatternBox pattern_from_json(const json& j) {
  return PatternBox(j.at("maxdeg").get<int>(), bidegree_set_from_json(j.at("members")));
}

json to_json(const RatMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
    rows.push_back(row);
  }
  return rows;
}

json to_json(const HarmonicSpace& h) {
  json basis = json::array();
  for (const auto& b : h.basis()) basis.push_back(render_poly(b));
  return json{{"n", h.dim_ambient()},
              {"bidegree", to_json(h.bidegree())},
              {"dim", h.dim()},
              {"basis", basis},
              {"gram", to_json(h.gram())}};
}

json to_json(const ZonalKernel& k) {
  json pt = json::array();
  for (const auto& c : k.point.coords()) pt.push_back(to_json(c));
  const GaussRational at_z = k.kernel.evaluate(k.point.coords());
  return json{{"n", k.space->dim_ambient()},
              {"bidegree", to_json(k.space->bidegree())},
              {"point", pt},
              {"kernel", to_json(k.kernel)},
              {"value_at_point", to_json(at_z)},
              {"norm_squared", to_json(inner_product(k.kernel, k.kernel))}};
}

json to_json(const ProductSupportReport& r) {
  json w = json::object();
  for (const auto& [b, f] : r.witness_components) w[render_points({b})] = to_json(f);
  json j{{"n", r.n},
         {"left", to_json(r.left)},
         {"right", to_json(r.right)},
         {"rule", r.rule == CombineRule::Minus ? "minus" : "plus"},
         {"support", to_json(r.support)},
         {"predicted", to_json(r.predicted)},
         {"match", r.match},
         {"missing", to_json(r.missing())},
         {"extra", to_json(r.extra())},
         {"products_examined", r.products_examined},
         {"witness_components", w}};
  if (r.max_total) j["max_total"] = *r.max_total;
  return j;
}

ProductSupportReport report_from_json(const json& j) {
  ProductSupportReport r;
  r.n = j.at("n").get<std::size_t>();
  r.left = bidegree_from_json(j.at("left"));
  r.right = bidegree_from_json(j.at("right"));
  r.rule = j.at("rule").get<std::string>() == "plus" ? CombineRule::Plus : CombineRule::Minus;
  if (j.contains("max_total")) r.max_total = j.at("max_total").get<int>();
  r.support = bidegree_set_from_json(j.at("support"));
  r.predicted = bidegree_set_from_json(j.at("predicted"));
  r.match = j.at("match").get<bool>();
  r.products_examined = j.at("products_examined").get<std::size_t>();
  for (const auto& [key, val] : j.at("witness_components").items()) {
    const auto pts = parse_points(key);
    if (pts.size() != 1) throw std::invalid_argument("bad witness key " + key);
    r.witness_components.emplace(*pts.begin(), poly_from_json(val));
  }
  return r;
}

json to_json(const ClassificationResult& c) {
  return json{{"family", to_string(c.family)},
              {"mirrored", c.mirrored},
              {"verified_box", c.verified_box},
              {"notes", c.notes}};
}

json to_json(const AlgebraCheck& a) {
  json j{{"is_algebra", a.is_algebra}, {"pairs_checked", a.pairs_checked}};
  if (a.left) j["left"] = to_json(*a.left);
  if (a.right) j["right"] = to_json(*a.right);
  if (a.escaping) j["escaping"] = to_json(*a.escaping);
  return j;
}

json to_json(const CStarEquivalence& c) {
  return json{{"uniform", to_json(c.uniform)},
              {"weakstar", to_json(c.weakstar)},
              {"equivalent", c.equivalent},
              {"note", c.note}};
}

json to_json(const mc::QuadEstimate& q) {
  return json{{"re", q.value.real()}, {"im", q.value.imag()}, {"stderr", q.stderr_}, {"samples", q.samples}};
}

json to_json(const mc::LadderEvidence& e) {
  json a = json::array();
  for (const auto& x : e.a) a.push_back(json::array({x.real(), x.imag()}));
  json entries = json::array();
  for (const auto& en : e.entries)
    entries.push_back({{"basis_index", en.basis_index},
                       {"target", to_json(en.target)},
                       {"estimate", to_json(en.estimate)},
                       {"nonzero", en.estimate.is_nonzero()}});
  json j{{"source", to_json(e.source)},
         {"a", a},
         {"lower_found", e.lower_found},
         {"upper_found", e.upper_found},
         {"entries", entries}};
  if (e.holomorphic_vanishing) j["holomorphic_vanishing"] = *e.holomorphic_vanishing;
  return j;
}

}  // namespace harmalg::io
