#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "harmalg/poly.hpp"

namespace harmalg {

// Finite truncation of a set of bidegrees: the members with p + q <= D.
class PatternBox {
 public:
  PatternBox() = default;
  PatternBox(int max_total_degree, BidegreeSet members);

  // Every (p,q) with p + q <= D selected by pred.
  template <class Pred>
  static PatternBox from_predicate(int max_total_degree, Pred pred) {
    BidegreeSet s;
    for (int t = 0; t <= max_total_degree; ++t)
      for (int p = t; p >= 0; --p)
        if (pred(Bidegree{p, t - p})) s.insert({p, t - p});
    return PatternBox(max_total_degree, std::move(s));
  }
  static PatternBox full(int max_total_degree);

  int max_total_degree() const { return d_; }
  const BidegreeSet& members() const { return members_; }
  bool contains(Bidegree b) const { return members_.count(b) != 0; }
  bool in_box(Bidegree b) const { return b.p >= 0 && b.q >= 0 && b.total() <= d_; }
  bool empty() const { return members_.empty(); }
  std::size_t size() const { return members_.size(); }

  // Adds b if it lies in the box; returns whether it was new.
  bool insert(Bidegree b);

  friend bool operator==(const PatternBox&, const PatternBox&) = default;

 private:
  int d_ = 0;
  BidegreeSet members_;
};

enum class CombineRule { Minus, Plus };

// {(p+r-j, q+s-j) : 0 <= j <= mu}, mu = min{p+q, r+s, p+r, q+s}. The Plus
// rule produces (p+r+j, q+s+j) instead and exists only for comparison.
BidegreeSet combine_points(Bidegree a, Bidegree b, CombineRule rule = CombineRule::Minus);

PatternBox closure_box(const PatternBox& seed, CombineRule rule = CombineRule::Minus);

struct PatternViolation {
  Bidegree left;
  Bidegree right;
  Bidegree missing;
};

std::optional<PatternViolation> find_pattern_violation(const PatternBox& omega,
                                                       CombineRule rule = CombineRule::Minus);
bool is_pattern_box(const PatternBox& omega, CombineRule rule = CombineRule::Minus);

namespace family {
struct Empty {};
struct Origin {};
struct Hol {};
struct AntiHol {};
struct Pluriharmonic {};
struct Full {};
struct GofD { int d; };
struct GofSigma { std::vector<int> generators; };
struct GofSigmaStar { std::vector<int> generators; };
struct Gpq { int p; int q; };
struct GpqN2 { int p; int q; };
}  // namespace family

using PatternFamily =
    std::variant<family::Empty, family::Origin, family::Hol, family::AntiHol, family::Pluriharmonic,
                 family::Full, family::GofD, family::GofSigma, family::GofSigmaStar, family::Gpq,
                 family::GpqN2>;

class InvalidFamily : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Throws InvalidFamily for d < 1, non-positive generators, or Gpq with p <= q.
void validate(const PatternFamily& fam);

bool family_membership(const PatternFamily& fam, Bidegree bd);
PatternBox truncate(const PatternFamily& fam, int max_total_degree);

// Literal forms: G(d=2), GSigma(3,5), GSigmaStar(), Gpq(2,1), GpqN2(2,1),
// empty, origin, hol, antihol, plurih, full.
std::string to_string(const PatternFamily& fam);
PatternFamily parse_family(std::string_view text);

// Additive semigroup generated by gens contains k (k >= 1).
bool in_semigroup(const std::vector<int>& gens, int k);

struct ClassificationResult {
  PatternFamily family;
  // The family describes the mirror image {(q,p)} of the input.
  bool mirrored = false;
  int verified_box = 0;
  std::vector<std::string> notes;
};

class ClassificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Throws ClassificationError when omega is not closed under combine_points or
// when no family matches the box.
ClassificationResult classify_pattern(const PatternBox& omega);

PatternBox conjugate_pattern(const PatternBox& omega);

// Least fixpoint within the box of: p >= 1 adds (p-1,q),(p+1,q); q >= 1 adds
// (p,q-1),(p,q+1).
PatternBox m_ladder_closure(const PatternBox& omega);

enum class SixSpace { Empty, Origin, Hol, AntiHol, Pluriharmonic, Full };
std::string to_string(SixSpace s);
PatternFamily as_family(SixSpace s);
SixSpace six_space_classify(const PatternBox& omega);

// For n = 2: the points of combine_points(left, right) that the n = 2
// variants remove from their n >= 3 families. Nonempty only for self
// products, where the predicted points are (2p-j, 2q-j): for p > q the
// GpqN2(p,q) deletions, for p < q their mirror image, and for p = q > 0 the
// odd diagonal points removed by GSigmaStar.
BidegreeSet n2_deleted_points(Bidegree left, Bidegree right);

// Parse "(p,q);(p,q);..." (empty string or "{}" for the empty set).
BidegreeSet parse_points(std::string_view text);
std::string render_points(const BidegreeSet& pts);

}  // namespace harmalg
