#include "harmalg/matrix.hpp"

#include <stdexcept>
#include <utility>

namespace harmalg {

RatMatrix::RatMatrix(std::initializer_list<std::initializer_list<GaussRational>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  a_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
    a_.insert(a_.end(), r.begin(), r.end());
  }
}

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RatMatrix RatMatrix::adjoint() const {
  RatMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j).conj();
  return t;
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool RatMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(i, j) != GaussRational(i == j ? 1 : 0)) return false;
  return true;
}

bool RatMatrix::is_hermitian() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i).conj()) return false;
  return true;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: shape mismatch");
  RatMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const auto& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

RatVector operator*(const RatMatrix& a, const RatVector& v) {
  if (a.cols_ != v.size()) throw std::invalid_argument("matrix-vector product: shape mismatch");
  RatVector out(a.rows_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < a.cols_; ++j)
      if (!a(i, j).is_zero()) out[i] += a(i, j) * v[j];
  return out;
}

namespace {

// Scale row i so that all entries are Gaussian integers.
void clear_denominators(RatMatrix& m, std::size_t i) {
  mpz_class l = 1;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).re().get_den_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).im().get_den_mpz_t());
  }
  if (l == 1) return;
  GaussRational s{Rational(l)};
  for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) *= s;
}

}  // namespace

Echelon fraction_free_echelon(RatMatrix m) {
  Echelon e;
  const std::size_t rows = m.rows(), cols = m.cols();
  for (std::size_t i = 0; i < rows; ++i) clear_denominators(m, i);

  GaussRational prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m(piv, c).is_zero()) ++piv;
    if (piv == rows) continue;
    if (piv != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(piv, j), m(r, j));
    const GaussRational pivot = m(r, c);
    for (std::size_t i = r + 1; i < rows; ++i) {
      const GaussRational lead = m(i, c);
      for (std::size_t j = c; j < cols; ++j) {
        GaussRational v = pivot * m(i, j);
        if (!lead.is_zero()) v -= lead * m(r, j);
        m(i, j) = v / prev;  // exact
      }
    }
    prev = pivot;
    e.pivot_cols.push_back(c);
    ++r;
  }
  e.form = std::move(m);
  return e;
}

std::size_t mat_rank(const RatMatrix& m) { return fraction_free_echelon(m).rank(); }

namespace {

// Back substitution on an echelon form: fills the pivot variables of x given
// the free ones, for the system form * x = rhs (rhs column index if any).
void back_substitute(const Echelon& e, RatVector& x, const RatVector* rhs) {
  for (std::size_t rr = e.rank(); rr-- > 0;) {
    const std::size_t pc = e.pivot_cols[rr];
    GaussRational acc = rhs ? (*rhs)[rr] : GaussRational();
    for (std::size_t j = pc + 1; j < x.size(); ++j)
      if (!e.form(rr, j).is_zero() && !x[j].is_zero()) acc -= e.form(rr, j) * x[j];
    x[pc] = acc / e.form(rr, pc);
  }
}

}  // namespace

std::vector<RatVector> mat_kernel(const RatMatrix& m) {
  const std::size_t cols = m.cols();
  Echelon e = fraction_free_echelon(m);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : e.pivot_cols) is_pivot[c] = true;

  std::vector<RatVector> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    RatVector x(cols);
    x[f] = 1;
    back_substitute(e, x, nullptr);
    basis.push_back(std::move(x));
  }
  return basis;
}

std::optional<RatVector> mat_solve(const RatMatrix& a, const RatVector& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("mat_solve: shape mismatch");
  const std::size_t cols = a.cols();
  RatMatrix aug(a.rows(), cols + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < cols; ++j) aug(i, j) = a(i, j);
    aug(i, cols) = b[i];
  }
  Echelon e = fraction_free_echelon(std::move(aug));
  if (!e.pivot_cols.empty() && e.pivot_cols.back() == cols) return std::nullopt;

  RatVector rhs(e.rank());
  for (std::size_t r = 0; r < e.rank(); ++r) rhs[r] = e.form(r, cols);
  Echelon lhs{RatMatrix(e.rank(), cols), e.pivot_cols};
  for (std::size_t r = 0; r < e.rank(); ++r)
    for (std::size_t j = 0; j < cols; ++j) lhs.form(r, j) = e.form(r, j);
  RatVector x(cols);
  back_substitute(lhs, x, &rhs);
  return x;
}

}  // namespace harmalg
