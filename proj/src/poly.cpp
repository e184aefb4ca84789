#include "harmalg/poly.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <string>

#include "harmalg/matrix.hpp"

namespace harmalg {

std::ostream& operator<<(std::ostream& os, const Bidegree& b) {
  return os << '(' << b.p << ',' << b.q << ')';
}

int MultiIndex::total() const { return std::accumulate(e_.begin(), e_.end(), 0); }

MultiIndex MultiIndex::unit(std::size_t n, std::size_t j) {
  MultiIndex m(n);
  m.e_[j] = 1;
  return m;
}

MultiIndex& MultiIndex::operator+=(const MultiIndex& o) {
  if (o.size() != size()) throw DimensionMismatch("multi-index length mismatch");
  for (std::size_t i = 0; i < e_.size(); ++i) e_[i] += o.e_[i];
  return *this;
}

namespace {

void fill_indices(std::vector<int>& cur, std::size_t pos, int remaining,
                  std::vector<MultiIndex>& out) {
  if (pos + 1 == cur.size()) {
    cur[pos] = remaining;
    out.emplace_back(cur);
    return;
  }
  for (int k = remaining; k >= 0; --k) {
    cur[pos] = k;
    fill_indices(cur, pos + 1, remaining - k, out);
  }
}

}  // namespace

std::vector<MultiIndex> multi_indices(std::size_t n, int d) {
  std::vector<MultiIndex> out;
  if (n == 0 || d < 0) return out;
  std::vector<int> cur(n, 0);
  fill_indices(cur, 0, d, out);
  return out;
}

std::vector<int> BiMonomial::weight() const {
  std::vector<int> w(alpha.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = alpha[i] - beta[i];
  return w;
}

bool GradedLexOrder::operator()(const BiMonomial& a, const BiMonomial& b) const {
  int ta = a.alpha.total() + a.beta.total();
  int tb = b.alpha.total() + b.beta.total();
  if (ta != tb) return ta > tb;
  if (a.alpha != b.alpha) return a.alpha > b.alpha;
  return a.beta > b.beta;
}

BiPoly BiPoly::constant(std::size_t n, const GaussRational& c) {
  BiPoly f(n);
  f.add_term({MultiIndex(n), MultiIndex(n)}, c);
  return f;
}

BiPoly BiPoly::z(std::size_t n, std::size_t j) {
  if (j < 1 || j > n) throw std::out_of_range("variable index out of range");
  BiPoly f(n);
  f.add_term({MultiIndex::unit(n, j - 1), MultiIndex(n)}, 1);
  return f;
}

BiPoly BiPoly::w(std::size_t n, std::size_t j) {
  if (j < 1 || j > n) throw std::out_of_range("variable index out of range");
  BiPoly f(n);
  f.add_term({MultiIndex(n), MultiIndex::unit(n, j - 1)}, 1);
  return f;
}

BiPoly BiPoly::monomial(const BiMonomial& m, const GaussRational& c) {
  BiPoly f(m.alpha.size());
  f.add_term(m, c);
  return f;
}

GaussRational BiPoly::coeff(const BiMonomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? GaussRational() : it->second;
}

void BiPoly::add_term(const BiMonomial& m, const GaussRational& c) {
  if (m.alpha.size() != n_ || m.beta.size() != n_)
    throw DimensionMismatch("monomial dimension does not match polynomial");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

BidegreeSet BiPoly::bidegrees() const {
  BidegreeSet out;
  for (const auto& [m, c] : terms_) out.insert(m.bidegree());
  return out;
}

bool BiPoly::is_homogeneous(Bidegree bd) const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [&](const auto& t) { return t.first.bidegree() == bd; });
}

int BiPoly::total_degree() const {
  // map is ordered by decreasing total degree
  if (terms_.empty()) return -1;
  return terms_.begin()->first.bidegree().total();
}

BiPoly BiPoly::conj() const {
  BiPoly out(n_);
  for (const auto& [m, c] : terms_) out.terms_.emplace(BiMonomial{m.beta, m.alpha}, c.conj());
  return out;
}

BiPoly& BiPoly::operator+=(const BiPoly& o) {
  if (o.n_ != n_) throw DimensionMismatch("polynomial dimension mismatch");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

BiPoly& BiPoly::operator-=(const BiPoly& o) {
  if (o.n_ != n_) throw DimensionMismatch("polynomial dimension mismatch");
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

BiPoly& BiPoly::operator*=(const GaussRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

BiPoly BiPoly::operator-() const {
  BiPoly out(*this);
  for (auto& [m, v] : out.terms_) v = -v;
  return out;
}

namespace {

GaussRational power(const GaussRational& x, int k) {
  GaussRational r = 1;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

}  // namespace

GaussRational BiPoly::evaluate(std::span<const GaussRational> z) const {
  if (z.size() != n_) throw DimensionMismatch("point dimension mismatch");
  GaussRational sum;
  for (const auto& [m, c] : terms_) {
    GaussRational t = c;
    for (std::size_t j = 0; j < n_; ++j) {
      if (m.alpha[j]) t *= power(z[j], m.alpha[j]);
      if (m.beta[j]) t *= power(z[j].conj(), m.beta[j]);
    }
    sum += t;
  }
  return sum;
}

std::complex<double> BiPoly::evaluate(std::span<const std::complex<double>> z) const {
  return NumericPoly(*this)(z);
}

BiPoly poly_mul(const BiPoly& f, const BiPoly& g) {
  if (f.dim() != g.dim()) throw DimensionMismatch("poly_mul: dimension mismatch");
  BiPoly out(f.dim());
  for (const auto& [mf, cf] : f.terms())
    for (const auto& [mg, cg] : g.terms()) out.add_term({mf.alpha + mg.alpha, mf.beta + mg.beta}, cf * cg);
  return out;
}

BiPoly laplacian(const BiPoly& f) {
  const std::size_t n = f.dim();
  BiPoly out(n);
  for (const auto& [m, c] : f.terms()) {
    for (std::size_t j = 0; j < n; ++j) {
      if (m.alpha[j] == 0 || m.beta[j] == 0) continue;
      BiMonomial d = m;
      d.alpha[j] -= 1;
      d.beta[j] -= 1;
      out.add_term(d, c * GaussRational(4L * m.alpha[j] * m.beta[j]));
    }
  }
  return out;
}

BiPoly scale_radial(const BiPoly& f, const Rational& r) {
  BiPoly out(f.dim());
  for (const auto& [m, c] : f.terms()) {
    Rational s = 1;
    for (int k = m.bidegree().total(); k > 0; --k) s *= r;
    out.add_term(m, c * GaussRational(s));
  }
  return out;
}

BiPoly substitute_linear(const BiPoly& f, const RatMatrix& u) {
  const std::size_t n = f.dim();
  if (u.rows() != n || u.cols() != n) throw DimensionMismatch("substitute_linear: matrix must be n x n");
  if (!(u * u.adjoint()).is_identity()) throw NotUnitary("substitute_linear: U U* != I");

  // image[j] = (U z)_j, conj_image[j] = conj((U z)_j)
  std::vector<BiPoly> image, conj_image;
  for (std::size_t i = 0; i < n; ++i) {
    BiPoly li(n);
    for (std::size_t j = 0; j < n; ++j) li.add_term({MultiIndex::unit(n, j), MultiIndex(n)}, u(i, j));
    conj_image.push_back(li.conj());
    image.push_back(std::move(li));
  }
  // powers cached on demand
  std::vector<std::vector<BiPoly>> pw(n), cpw(n);
  auto get = [&](std::vector<std::vector<BiPoly>>& cache, const std::vector<BiPoly>& base,
                 std::size_t j, int k) -> const BiPoly& {
    auto& c = cache[j];
    if (c.empty()) c.push_back(BiPoly::constant(n, 1));
    while (static_cast<int>(c.size()) <= k) c.push_back(poly_mul(c.back(), base[j]));
    return c[k];
  };

  BiPoly out(n);
  for (const auto& [m, c] : f.terms()) {
    BiPoly t = BiPoly::constant(n, c);
    for (std::size_t j = 0; j < n; ++j) {
      if (m.alpha[j]) t = poly_mul(t, get(pw, image, j, m.alpha[j]));
      if (m.beta[j]) t = poly_mul(t, get(cpw, conj_image, j, m.beta[j]));
    }
    out += t;
  }
  return out;
}

NumericPoly::NumericPoly(const BiPoly& f) : n_(f.dim()) {
  for (const auto& [m, c] : f.terms()) {
    terms_.push_back({m.alpha.values(), m.beta.values(), c.to_complex()});
    for (std::size_t j = 0; j < n_; ++j) max_exp_ = std::max({max_exp_, m.alpha[j], m.beta[j]});
  }
}

std::complex<double> NumericPoly::operator()(std::span<const std::complex<double>> z) const {
  if (z.size() != n_) throw DimensionMismatch("point dimension mismatch");
  const std::size_t stride = static_cast<std::size_t>(max_exp_) + 1;
  // powers[j*stride + k] = z_j^k, cpowers likewise for conj(z_j)
  std::vector<std::complex<double>> powers(n_ * stride), cpowers(n_ * stride);
  for (std::size_t j = 0; j < n_; ++j) {
    powers[j * stride] = cpowers[j * stride] = 1.0;
    for (std::size_t k = 1; k < stride; ++k) {
      powers[j * stride + k] = powers[j * stride + k - 1] * z[j];
      cpowers[j * stride + k] = cpowers[j * stride + k - 1] * std::conj(z[j]);
    }
  }
  std::complex<double> sum = 0.0;
  for (const auto& t : terms_) {
    std::complex<double> v = t.coeff;
    for (std::size_t j = 0; j < n_; ++j) {
      if (t.alpha[j]) v *= powers[j * stride + t.alpha[j]];
      if (t.beta[j]) v *= cpowers[j * stride + t.beta[j]];
    }
    sum += v;
  }
  return sum;
}

}  // namespace harmalg
