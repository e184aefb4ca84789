#pragma once

#include <compare>
#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <vector>

#include "harmalg/rational.hpp"

namespace harmalg {

class RatMatrix;

struct Bidegree {
  int p = 0;
  int q = 0;

  int total() const { return p + q; }
  Bidegree mirrored() const { return {q, p}; }

  friend auto operator<=>(const Bidegree&, const Bidegree&) = default;
  friend bool operator==(const Bidegree&, const Bidegree&) = default;
};

std::ostream& operator<<(std::ostream& os, const Bidegree& b);

using BidegreeSet = std::set<Bidegree>;

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Exponent vector of length n.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::size_t n) : e_(n, 0) {}
  MultiIndex(std::initializer_list<int> e) : e_(e) {}
  explicit MultiIndex(std::vector<int> e) : e_(std::move(e)) {}

  std::size_t size() const { return e_.size(); }
  int operator[](std::size_t i) const { return e_[i]; }
  int& operator[](std::size_t i) { return e_[i]; }
  int total() const;
  const std::vector<int>& values() const { return e_; }

  static MultiIndex unit(std::size_t n, std::size_t j);

  MultiIndex& operator+=(const MultiIndex& o);
  friend MultiIndex operator+(MultiIndex a, const MultiIndex& b) { return a += b; }

  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;
  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::vector<int> e_;
};

// All exponent vectors of length n with total degree d, in lexicographically
// decreasing order (z1^d first).
std::vector<MultiIndex> multi_indices(std::size_t n, int d);

// z^alpha * conj(z)^beta
struct BiMonomial {
  MultiIndex alpha;
  MultiIndex beta;

  Bidegree bidegree() const { return {alpha.total(), beta.total()}; }
  // Torus weight alpha - beta; two monomials integrate against each other to a
  // nonzero value only when their weights agree.
  std::vector<int> weight() const;

  friend bool operator==(const BiMonomial&, const BiMonomial&) = default;
};

// Graded lexicographic order on the concatenation (alpha, beta): higher total
// degree first, then lexicographically larger exponent vectors first.
struct GradedLexOrder {
  bool operator()(const BiMonomial& a, const BiMonomial& b) const;
};

class BiPoly {
 public:
  using TermMap = std::map<BiMonomial, GaussRational, GradedLexOrder>;

  explicit BiPoly(std::size_t n = 1) : n_(n) {}

  static BiPoly constant(std::size_t n, const GaussRational& c);
  // z_j, 1-based index as in the text grammar.
  static BiPoly z(std::size_t n, std::size_t j);
  // conj(z_j)
  static BiPoly w(std::size_t n, std::size_t j);
  static BiPoly monomial(const BiMonomial& m, const GaussRational& c = 1);

  std::size_t dim() const { return n_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  // Coefficient of m (zero when absent).
  GaussRational coeff(const BiMonomial& m) const;
  void add_term(const BiMonomial& m, const GaussRational& c);

  BidegreeSet bidegrees() const;
  bool is_homogeneous(Bidegree bd) const;
  // Highest total degree of any term, -1 for the zero polynomial.
  int total_degree() const;

  BiPoly conj() const;
  BiPoly& operator+=(const BiPoly& o);
  BiPoly& operator-=(const BiPoly& o);
  BiPoly& operator*=(const GaussRational& c);
  friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
  friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
  friend BiPoly operator*(BiPoly a, const GaussRational& c) { return a *= c; }
  friend BiPoly operator*(const GaussRational& c, BiPoly a) { return a *= c; }
  BiPoly operator-() const;

  GaussRational evaluate(std::span<const GaussRational> z) const;
  std::complex<double> evaluate(std::span<const std::complex<double>> z) const;

  friend bool operator==(const BiPoly& a, const BiPoly& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }

 private:
  std::size_t n_;
  TermMap terms_;
};

BiPoly poly_mul(const BiPoly& f, const BiPoly& g);
inline BiPoly operator*(const BiPoly& f, const BiPoly& g) { return poly_mul(f, g); }

// 4 * sum_j d^2/(dz_j dconj(z_j))
BiPoly laplacian(const BiPoly& f);

// f(r z): each bidegree-(p,q) term scaled by r^(p+q).
BiPoly scale_radial(const BiPoly& f, const Rational& r);

class NotUnitary : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// f(Uz); conjugate variables receive conj(U). Throws NotUnitary unless
// U U* = I exactly.
BiPoly substitute_linear(const BiPoly& f, const RatMatrix& u);

// Precompiled form for fast floating-point evaluation.
class NumericPoly {
 public:
  NumericPoly() = default;
  explicit NumericPoly(const BiPoly& f);

  std::size_t dim() const { return n_; }
  std::complex<double> operator()(std::span<const std::complex<double>> z) const;

 private:
  struct Term {
    std::vector<int> alpha;
    std::vector<int> beta;
    std::complex<double> coeff;
  };
  std::size_t n_ = 0;
  int max_exp_ = 0;
  std::vector<Term> terms_;
};

}  // namespace harmalg
