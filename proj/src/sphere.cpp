#include "harmalg/sphere.hpp"

#include <algorithm>

namespace harmalg {

namespace {

const mpz_class& factorial(unsigned k) {
  static const std::vector<mpz_class> table = [] {
    std::vector<mpz_class> t(160);
    t[0] = 1;
    for (unsigned i = 1; i < t.size(); ++i) t[i] = t[i - 1] * i;
    return t;
  }();
  if (k >= table.size()) throw std::out_of_range("factorial table exceeded");
  return table[k];
}

// integral of |z^alpha|^2
Rational diagonal_integral(std::size_t n, const MultiIndex& alpha) {
  mpz_class num = factorial(static_cast<unsigned>(n - 1));
  for (std::size_t j = 0; j < alpha.size(); ++j) num *= factorial(static_cast<unsigned>(alpha[j]));
  Rational r(num, factorial(static_cast<unsigned>(n - 1 + alpha.total())));
  r.canonicalize();
  return r;
}

using Term = std::pair<const BiMonomial*, const GaussRational*>;
using WeightIndex = std::map<std::vector<int>, std::vector<Term>>;

WeightIndex index_by_weight(const BiPoly& f) {
  WeightIndex idx;
  for (const auto& [m, c] : f.terms()) idx[m.weight()].push_back({&m, &c});
  return idx;
}

// sum over matching-weight term pairs of c_f * conj(c_g) * integral
GaussRational paired_integral(std::size_t n, const std::vector<Term>& fs, const std::vector<Term>& gs) {
  GaussRational sum;
  for (const auto& [mf, cf] : fs)
    for (const auto& [mg, cg] : gs) {
      // z^a zb^b * conj(z^c zb^d) = z^(a+d) zb^(b+c); a+d == b+c when weights agree
      Rational v = diagonal_integral(n, mf->alpha + mg->beta);
      sum += (*cf) * cg->conj() * GaussRational(v);
    }
  return sum;
}

std::vector<Term> all_terms(const BiPoly& f) {
  std::vector<Term> out;
  for (const auto& [m, c] : f.terms()) out.push_back({&m, &c});
  return out;
}

// Multiply by the lcm of denominators and divide by the gcd of the resulting
// integers so kernel vectors print with small integer coefficients.
void make_primitive(RatVector& v) {
  mpz_class l = 1;
  for (const auto& x : v) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.re().get_den_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.im().get_den_mpz_t());
  }
  mpz_class g = 0;
  for (auto& x : v) {
    x *= GaussRational(Rational(l));
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.re().get_num_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.im().get_num_mpz_t());
  }
  if (g > 1)
    for (auto& x : v) x /= GaussRational(Rational(g));
}

}  // namespace

Rational integrate_monomial(std::size_t n, const MultiIndex& alpha, const MultiIndex& beta) {
  if (alpha.size() != n || beta.size() != n) throw DimensionMismatch("integrate_monomial: length mismatch");
  if (alpha != beta) return 0;
  return diagonal_integral(n, alpha);
}

GaussRational integrate(const BiPoly& f) {
  GaussRational sum;
  for (const auto& [m, c] : f.terms())
    if (m.alpha == m.beta) sum += c * GaussRational(diagonal_integral(f.dim(), m.alpha));
  return sum;
}

GaussRational inner_product(const BiPoly& f, const BiPoly& g) {
  if (f.dim() != g.dim()) throw DimensionMismatch("inner_product: dimension mismatch");
  WeightIndex fi = index_by_weight(f);
  WeightIndex gi = index_by_weight(g);
  GaussRational sum;
  for (const auto& [w, fs] : fi) {
    auto it = gi.find(w);
    if (it != gi.end()) sum += paired_integral(f.dim(), fs, it->second);
  }
  return sum;
}

GaussRational bilinear_pairing(const BiPoly& f, const BiPoly& g) {
  if (f.dim() != g.dim()) throw DimensionMismatch("bilinear_pairing: dimension mismatch");
  return integrate(poly_mul(f, g));
}

HarmonicSpace::HarmonicSpace(std::size_t n, Bidegree bd) : n_(n), bd_(bd) {
  if (n == 0) throw std::invalid_argument("dimension must be at least 1");
  if (bd.p < 0 || bd.q < 0) throw std::invalid_argument("bidegree must be nonnegative");

  std::map<std::vector<int>, std::vector<BiMonomial>> sources, targets;
  for (const auto& a : multi_indices(n, bd.p))
    for (const auto& b : multi_indices(n, bd.q)) {
      BiMonomial m{a, b};
      sources[m.weight()].push_back(std::move(m));
    }
  if (bd.p > 0 && bd.q > 0)
    for (const auto& a : multi_indices(n, bd.p - 1))
      for (const auto& b : multi_indices(n, bd.q - 1)) {
        BiMonomial m{a, b};
        targets[m.weight()].push_back(std::move(m));
      }

  for (const auto& [w, src] : sources) {
    const auto& tgt = targets[w];
    std::map<std::vector<int>, std::size_t> row_of;
    for (std::size_t i = 0; i < tgt.size(); ++i) {
      std::vector<int> key = tgt[i].alpha.values();
      key.insert(key.end(), tgt[i].beta.values().begin(), tgt[i].beta.values().end());
      row_of[key] = i;
    }
    RatMatrix lap(tgt.size(), src.size());
    for (std::size_t c = 0; c < src.size(); ++c) {
      const BiMonomial& m = src[c];
      for (std::size_t j = 0; j < n; ++j) {
        if (m.alpha[j] == 0 || m.beta[j] == 0) continue;
        std::vector<int> key = m.alpha.values();
        key.insert(key.end(), m.beta.values().begin(), m.beta.values().end());
        key[j] -= 1;
        key[n + j] -= 1;
        lap(row_of.at(key), c) += GaussRational(4L * m.alpha[j] * m.beta[j]);
      }
    }
    auto kernel = mat_kernel(lap);
    if (kernel.empty()) continue;

    Block blk;
    blk.weight = w;
    blk.offset = basis_.size();
    blk.size = kernel.size();
    for (auto& v : kernel) {
      make_primitive(v);
      BiPoly f(n);
      for (std::size_t c = 0; c < src.size(); ++c) f.add_term(src[c], v[c]);
      basis_.push_back(std::move(f));
    }
    blocks_.push_back(std::move(blk));
  }

  gram_ = RatMatrix(basis_.size(), basis_.size());
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    Block& blk = blocks_[b];
    block_of_weight_[blk.weight] = b;
    std::vector<std::vector<Term>> terms(blk.size);
    for (std::size_t i = 0; i < blk.size; ++i) terms[i] = all_terms(basis_[blk.offset + i]);
    blk.gram = RatMatrix(blk.size, blk.size);
    for (std::size_t i = 0; i < blk.size; ++i)
      for (std::size_t j = i; j < blk.size; ++j) {
        GaussRational v = paired_integral(n, terms[i], terms[j]);
        blk.gram(j, i) = v.conj();
        blk.gram(i, j) = std::move(v);
      }
    for (std::size_t i = 0; i < blk.size; ++i)
      for (std::size_t j = 0; j < blk.size; ++j) gram_(blk.offset + i, blk.offset + j) = blk.gram(i, j);
  }
}

RatVector HarmonicSpace::projection_coefficients(const BiPoly& f) const {
  if (f.dim() != n_) throw DimensionMismatch("projection: dimension mismatch");
  RatVector a(dim());
  WeightIndex fi = index_by_weight(f);
  for (const auto& blk : blocks_) {
    auto it = fi.find(blk.weight);
    if (it == fi.end()) continue;
    // <f - h, b_l> = 0  <=>  sum_k a_k G(k,l) = <f, b_l>
    RatVector rhs(blk.size);
    bool any = false;
    for (std::size_t l = 0; l < blk.size; ++l) {
      rhs[l] = paired_integral(n_, it->second, all_terms(basis_[blk.offset + l]));
      any = any || !rhs[l].is_zero();
    }
    if (!any) continue;
    auto sol = mat_solve(blk.gram.transpose(), rhs);
    if (!sol) throw std::logic_error("singular Gram block");
    for (std::size_t k = 0; k < blk.size; ++k) a[blk.offset + k] = (*sol)[k];
  }
  return a;
}

BiPoly HarmonicSpace::combine(const RatVector& coeffs) const {
  if (coeffs.size() != dim()) throw std::invalid_argument("combine: coefficient count mismatch");
  BiPoly out(n_);
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    if (!coeffs[k].is_zero()) out += basis_[k] * coeffs[k];
  return out;
}

BiPoly HarmonicSpace::project(const BiPoly& f) const { return combine(projection_coefficients(f)); }

bool HarmonicSpace::detects(const BiPoly& f) const {
  if (f.dim() != n_) throw DimensionMismatch("projection: dimension mismatch");
  WeightIndex fi = index_by_weight(f);
  for (const auto& [w, fs] : fi) {
    auto it = block_of_weight_.find(w);
    if (it == block_of_weight_.end()) continue;
    const Block& blk = blocks_[it->second];
    for (std::size_t l = 0; l < blk.size; ++l)
      if (!paired_integral(n_, fs, all_terms(basis_[blk.offset + l])).is_zero()) return true;
  }
  return false;
}

SphereContext::SphereContext(std::size_t n) : n_(n), cache_(std::make_shared<Cache>()) {
  if (n == 0) throw std::invalid_argument("dimension must be at least 1");
}

std::shared_ptr<const HarmonicSpace> SphereContext::space(Bidegree bd) const {
  {
    std::lock_guard lock(cache_->mu);
    auto it = cache_->spaces.find(bd);
    if (it != cache_->spaces.end()) return it->second;
  }
  auto built = std::make_shared<const HarmonicSpace>(n_, bd);
  std::lock_guard lock(cache_->mu);
  return cache_->spaces.try_emplace(bd, std::move(built)).first->second;
}

HarmonicSpace harmonic_basis(const SphereContext& ctx, Bidegree bd) { return *ctx.space(bd); }

SpherePoint::SpherePoint(std::vector<GaussRational> coords) : coords_(std::move(coords)) {
  Rational s = 0;
  for (const auto& c : coords_) s += c.norm2();
  if (s != 1) throw NotOnSphere("point is not on the unit sphere: sum |z_j|^2 = " + s.get_str());
}

std::vector<std::complex<double>> SpherePoint::to_complex() const {
  std::vector<std::complex<double>> out;
  for (const auto& c : coords_) out.push_back(c.to_complex());
  return out;
}

ZonalKernel zonal_kernel(std::shared_ptr<const HarmonicSpace> space, const SpherePoint& z) {
  if (z.dim() != space->dim_ambient()) throw DimensionMismatch("zonal_kernel: point dimension mismatch");
  // K = sum_k a_k b_k with G conj(a) = (b_j(z))_j, blockwise.
  RatVector a(space->dim());
  for (const auto& blk : space->blocks()) {
    RatVector v(blk.size);
    for (std::size_t j = 0; j < blk.size; ++j) v[j] = space->basis()[blk.offset + j].evaluate(z.coords());
    auto sol = mat_solve(blk.gram, v);
    if (!sol) throw std::logic_error("singular Gram block");
    for (std::size_t k = 0; k < blk.size; ++k) a[blk.offset + k] = (*sol)[k].conj();
  }
  BiPoly k = space->combine(a);
  return ZonalKernel{std::move(space), z, std::move(k)};
}

BiPoly project_bidegree(const SphereContext& ctx, const BiPoly& f, Bidegree bd) {
  if (f.dim() != ctx.n()) throw DimensionMismatch("project_bidegree: dimension mismatch");
  return ctx.space(bd)->project(f);
}

BidegreeSet candidate_bidegrees(const BiPoly& f) {
  BidegreeSet out;
  for (const auto& bd : f.bidegrees())
    for (int j = 0; j <= std::min(bd.p, bd.q); ++j) out.insert({bd.p - j, bd.q - j});
  return out;
}

BidegreeSet bidegree_support(const SphereContext& ctx, const BiPoly& f, std::optional<int> max_total) {
  if (f.dim() != ctx.n()) throw DimensionMismatch("bidegree_support: dimension mismatch");
  BidegreeSet out;
  for (const auto& bd : candidate_bidegrees(f)) {
    if (max_total && bd.total() > *max_total) continue;
    if (ctx.space(bd)->detects(f)) out.insert(bd);
  }
  return out;
}

}  // namespace harmalg
