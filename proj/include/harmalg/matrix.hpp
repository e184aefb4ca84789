#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "harmalg/rational.hpp"

namespace harmalg {

using RatVector = std::vector<GaussRational>;

// Dense row-major matrix over Q(i).
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  RatMatrix(std::initializer_list<std::initializer_list<GaussRational>> rows);

  static RatMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  const GaussRational& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  GaussRational& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }

  RatMatrix adjoint() const;
  RatMatrix transpose() const;
  bool is_identity() const;
  bool is_hermitian() const;

  friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
  friend RatVector operator*(const RatMatrix& a, const RatVector& v);
  friend bool operator==(const RatMatrix&, const RatMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<GaussRational> a_;
};

// Row echelon form by fraction-free (Bareiss) elimination. Rows are first
// scaled to Gaussian-integer entries; every intermediate division is exact.
// Pivots are chosen as the first nonzero entry scanning columns left to right.
struct Echelon {
  RatMatrix form;
  std::vector<std::size_t> pivot_cols;  // pivot column of row r
  std::size_t rank() const { return pivot_cols.size(); }
};

Echelon fraction_free_echelon(RatMatrix m);

std::size_t mat_rank(const RatMatrix& m);

// Basis of {v : M v = 0}; one vector per free column with a 1 in that column.
std::vector<RatVector> mat_kernel(const RatMatrix& m);

// Some exact solution of A x = b, or nullopt when the system is inconsistent.
// Free variables are set to zero.
std::optional<RatVector> mat_solve(const RatMatrix& a, const RatVector& b);

}  // namespace harmalg
