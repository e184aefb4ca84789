#pragma once

#include <json.hpp>

#include "harmalg/mc.hpp"
#include "harmalg/patterns.hpp"
#include "harmalg/product_span.hpp"
#include "harmalg/sphere.hpp"

namespace harmalg::io {

using json = nlohmann::ordered_json;

// Rationals are "num/den" strings; Gaussian rationals {"re": ..., "im": ...}.
json to_json(const Rational& r);
json to_json(const GaussRational& x);
GaussRational gauss_from_json(const json& j);
Rational rational_from_json(const json& j);

json to_json(const Bidegree& b);
Bidegree bidegree_from_json(const json& j);
json to_json(const BidegreeSet& s);
BidegreeSet bidegree_set_from_json(const json& j);

// {"n": 2, "text": "...", "terms": [{"alpha": [..], "beta": [..], "coeff": {...}}]}
json to_json(const BiPoly& f);
BiPoly poly_from_json(const json& j);

json to_json(const PatternBox& b);
PatternBox pattern_from_json(const json& j);

json to_json(const RatMatrix& m);

json to_json(const HarmonicSpace& h);
json to_json(const ZonalKernel& k);

json to_json(const ProductSupportReport& r);
ProductSupportReport report_from_json(const json& j);

json to_json(const ClassificationResult& c);
json to_json(const AlgebraCheck& a);
json to_json(const CStarEquivalence& c);

json to_json(const mc::QuadEstimate& q);
json to_json(const mc::LadderEvidence& e);

}  // namespace harmalg::io
