#include "harmalg/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "harmalg/mc.hpp"
#include "harmalg/parse.hpp"
#include "harmalg/product_span.hpp"
#include "harmalg/sphere.hpp"

namespace harmalg::verify {

CheckResult& CheckResult::fail(std::string what) {
  if (passed) {
    passed = false;
    counterexample = std::move(what);
  }
  return *this;
}

bool SuiteReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"exact-core", "harmonics", "patterns", "product-span", "mc"};
  return names;
}

std::vector<SuiteReport> run(const std::string& suite, const Options& opts) {
  static const std::map<std::string, SuiteReport (*)(const Options&)> table{
      {"exact-core", exact_core_suite}, {"harmonics", harmonics_suite}, {"patterns", patterns_suite},
      {"product-span", product_span_suite}, {"mc", mc_suite}};
  std::vector<SuiteReport> out;
  if (suite == "all") {
    for (const auto& name : suite_names()) out.push_back(table.at(name)(opts));
    return out;
  }
  const auto it = table.find(suite);
  if (it == table.end()) throw UnknownSuite("unknown suite '" + suite + "'");
  out.push_back(it->second(opts));
  return out;
}

namespace {

using Rng = std::mt19937_64;

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

Rational random_rational(Rng& rng) { return make_rational(uniform(rng, -5, 5), uniform(rng, 1, 4)); }

GaussRational random_gauss(Rng& rng, bool nonzero = false) {
  for (;;) {
    GaussRational x(random_rational(rng), uniform(rng, 0, 2) == 0 ? Rational(0) : random_rational(rng));
    if (!nonzero || !x.is_zero()) return x;
  }
}

BiMonomial random_monomial(Rng& rng, std::size_t n, int degree, bool holomorphic) {
  BiMonomial m{MultiIndex(n), MultiIndex(n)};
  const int slots = holomorphic ? static_cast<int>(n) : static_cast<int>(2 * n);
  for (int k = 0; k < degree; ++k) {
    const auto s = static_cast<std::size_t>(uniform(rng, 0, slots - 1));
    if (s < n) ++m.alpha[s];
    else ++m.beta[s - n];
  }
  return m;
}

BiPoly random_poly(Rng& rng, std::size_t n, int maxdeg, int max_terms, bool holomorphic = false) {
  BiPoly f(n);
  const int terms = uniform(rng, 1, max_terms);
  for (int t = 0; t < terms; ++t)
    f.add_term(random_monomial(rng, n, uniform(rng, 0, maxdeg), holomorphic), random_gauss(rng, true));
  return f;
}

std::string render_matrix(const RatMatrix& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) s += ";";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) s += ",";
      s += to_string(m(i, j));
    }
  }
  return s + "]";
}

std::string render_bd(Bidegree b) { return std::to_string(b.p) + "," + std::to_string(b.q); }

std::string render_vec(const std::vector<GaussRational>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
  return s;
}

// Permutation, diagonal phases, and the 3-4-5 rotation.
std::vector<std::pair<std::string, RatMatrix>> exact_unitaries(std::size_t n) {
  const GaussRational phases[] = {GaussRational::i(), GaussRational(Rational(3, 5), Rational(4, 5)), -1};
  RatMatrix perm(n, n), diag(n, n), rot = RatMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i) {
    perm(i, (i + 1) % n) = 1;
    diag(i, i) = phases[i % 3];
  }
  if (n >= 2) {
    rot(0, 0) = Rational(3, 5);
    rot(0, 1) = Rational(-4, 5);
    rot(1, 0) = Rational(4, 5);
    rot(1, 1) = Rational(3, 5);
  } else {
    rot(0, 0) = GaussRational(Rational(-4, 5), Rational(3, 5));
  }
  return {{"permutation", perm}, {"phases", diag}, {"rotation", rot}};
}

std::vector<SpherePoint> sphere_points(std::size_t n) {
  std::vector<std::vector<GaussRational>> raw;
  auto pad = [n](std::vector<GaussRational> v) {
    v.resize(n);
    return v;
  };
  raw.push_back(pad({1}));
  if (n == 1) {
    raw.push_back({GaussRational(Rational(3, 5), Rational(4, 5))});
  } else {
    raw.push_back(pad({Rational(3, 5), Rational(4, 5)}));
    raw.push_back(pad({GaussRational(Rational(1, 3), Rational(2, 3)), Rational(2, 3)}));
  }
  std::vector<SpherePoint> out;
  for (auto& v : raw) out.emplace_back(std::move(v));
  return out;
}

std::vector<Bidegree> box_points(int D) {
  std::vector<Bidegree> out;
  for (int t = 0; t <= D; ++t)
    for (int p = t; p >= 0; --p) out.push_back({p, t - p});
  return out;
}

std::vector<BiMonomial> all_monomials(std::size_t n, int D) {
  std::vector<BiMonomial> out;
  for (int a = 0; a <= D; ++a)
    for (int b = 0; a + b <= D; ++b)
      for (const auto& al : multi_indices(n, a))
        for (const auto& be : multi_indices(n, b)) out.push_back({al, be});
  return out;
}

std::vector<std::size_t> dims_of(const Options& opts, std::vector<std::size_t> fallback) {
  if (opts.n) return {*opts.n};
  return fallback;
}

long binom(int a, int b) {
  if (b < 0 || a < b) return 0;
  long r = 1;
  for (int k = 1; k <= b; ++k) r = r * (a - b + k) / k;
  return r;
}

long harmonic_dim(std::size_t n, Bidegree bd) {
  const int m = static_cast<int>(n);
  return binom(bd.p + m - 1, bd.p) * binom(bd.q + m - 1, bd.q) -
         binom(bd.p + m - 2, bd.p - 1) * binom(bd.q + m - 2, bd.q - 1);
}

// Positive definiteness by symmetric elimination: every pivot real and > 0.
bool positive_definite(RatMatrix a) {
  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {
    const GaussRational piv = a(k, k);
    if (!piv.is_real() || sgn(piv.re()) <= 0) return false;
    for (std::size_t i = k + 1; i < n; ++i) {
      const GaussRational f = a(i, k) / piv;
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return true;
}

// ---------------------------------------------------------------- exact-core

CheckResult field_axioms(Rng& rng) {
  CheckResult c{"gauss-rational field axioms"};
  for (int t = 0; t < 500; ++t, ++c.cases) {
    const GaussRational a = random_gauss(rng), b = random_gauss(rng), x = random_gauss(rng);
    std::string bad;
    if ((a + b) + x != a + (b + x)) bad = "additive associativity";
    else if ((a * b) * x != a * (b * x)) bad = "multiplicative associativity";
    else if (a * (b + x) != a * b + a * x) bad = "distributivity";
    else if (a * b != b * a) bad = "commutativity";
    else if (!a.is_zero() && a * a.inverse() != GaussRational(1)) bad = "inverse";
    else if (!(a * a.conj()).is_real()) bad = "norm";
    else if ((a * b).conj() != a.conj() * b.conj()) bad = "conjugation";
    if (!bad.empty()) return c.fail(bad + ": a=" + to_string(a) + " b=" + to_string(b) + " c=" + to_string(x));
  }
  return c;
}

CheckResult conj_homomorphism(Rng& rng) {
  CheckResult c{"conj is an involutive ring homomorphism"};
  for (int t = 0; t < 150; ++t, ++c.cases) {
    const std::size_t n = static_cast<std::size_t>(uniform(rng, 1, 3));
    const BiPoly f = random_poly(rng, n, 3, 4), g = random_poly(rng, n, 3, 4);
    if ((f * g).conj() != f.conj() * g.conj() || (f + g).conj() != f.conj() + g.conj() || f.conj().conj() != f)
      return c.fail("n=" + std::to_string(n) + " f=" + render_poly(f) + " g=" + render_poly(g));
  }
  return c;
}

CheckResult laplacian_rules(Rng& rng) {
  CheckResult c{"laplacian linearity and z_j*w_j"};
  for (std::size_t n = 1; n <= 4; ++n)
    for (std::size_t j = 1; j <= n; ++j, ++c.cases)
      if (laplacian(BiPoly::z(n, j) * BiPoly::w(n, j)) != BiPoly::constant(n, 4))
        return c.fail("n=" + std::to_string(n) + " f=z" + std::to_string(j) + "*w" + std::to_string(j));
  for (int t = 0; t < 150; ++t, ++c.cases) {
    const std::size_t n = static_cast<std::size_t>(uniform(rng, 1, 3));
    const BiPoly f = random_poly(rng, n, 4, 4), g = random_poly(rng, n, 4, 4);
    const GaussRational a = random_gauss(rng), b = random_gauss(rng);
    if (laplacian(a * f + b * g) != a * laplacian(f) + b * laplacian(g))
      return c.fail("n=" + std::to_string(n) + " f=" + render_poly(f) + " g=" + render_poly(g) + " a=" + to_string(a) +
                    " b=" + to_string(b));
  }
  return c;
}

CheckResult substitution_rules(Rng& rng) {
  CheckResult c{"substitute_linear homomorphism and inverse"};
  for (std::size_t n = 1; n <= 3; ++n)
    for (const auto& [name, u] : exact_unitaries(n)) {
      const RatMatrix ui = u.adjoint();
      for (int t = 0; t < 25; ++t, ++c.cases) {
        const BiPoly f = random_poly(rng, n, 3, 4), g = random_poly(rng, n, 3, 4);
        const BiPoly sf = substitute_linear(f, u), sg = substitute_linear(g, u);
        if (substitute_linear(f * g, u) != sf * sg || substitute_linear(f + g, u) != sf + sg ||
            substitute_linear(sf, ui) != f || sf.bidegrees() != f.bidegrees())
          return c.fail("n=" + std::to_string(n) + " U=" + render_matrix(u) + " f=" + render_poly(f) +
                        " g=" + render_poly(g));
      }
    }
  ++c.cases;
  try {
    substitute_linear(BiPoly::z(2, 1), RatMatrix{{1, 1}, {0, 1}});
    c.fail("non-unitary U=[1,1;0,1] accepted");
  } catch (const NotUnitary&) {
  }
  return c;
}

RatMatrix random_matrix(Rng& rng) {
  const auto r = static_cast<std::size_t>(uniform(rng, 1, 5)), k = static_cast<std::size_t>(uniform(rng, 1, 6));
  RatMatrix m(r, k);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (uniform(rng, 0, 2)) m(i, j) = random_gauss(rng);
  // make some rows dependent
  if (r >= 3 && uniform(rng, 0, 1)) {
    const GaussRational a = random_gauss(rng), b = random_gauss(rng);
    for (std::size_t j = 0; j < k; ++j) m(r - 1, j) = a * m(0, j) + b * m(1, j);
  }
  return m;
}

CheckResult kernel_rank(Rng& rng) {
  CheckResult c{"kernel and rank under two elimination orders"};
  for (int t = 0; t < 300; ++t, ++c.cases) {
    const RatMatrix m = random_matrix(rng);
    const std::size_t cols = m.cols();
    const auto ker = mat_kernel(m);
    const std::size_t rank = mat_rank(m);
    bool ok = ker.size() + rank == cols;
    for (const auto& v : ker)
      for (const auto& x : m * v) ok = ok && x.is_zero();
    if (ok && !ker.empty()) {
      RatMatrix kt(ker.size(), cols);
      for (std::size_t i = 0; i < ker.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j) kt(i, j) = ker[i][j];
      ok = mat_rank(kt) == ker.size();
    }
    // Second order: reversed columns, and the transpose.
    RatMatrix rev(m.rows(), cols);
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < cols; ++j) rev(i, j) = m(i, cols - 1 - j);
    const auto ker_rev = mat_kernel(rev);
    ok = ok && mat_rank(rev) == rank && ker_rev.size() == ker.size() && mat_rank(m.transpose()) == rank;
    for (const auto& v : ker_rev) {
      RatVector back(cols);
      for (std::size_t j = 0; j < cols; ++j) back[j] = v[cols - 1 - j];
      for (const auto& x : m * back) ok = ok && x.is_zero();
    }
    if (!ok) return c.fail("M=" + render_matrix(m));
  }
  return c;
}

CheckResult parse_roundtrip(Rng& rng) {
  CheckResult c{"polynomial text round trip"};
  for (int t = 0; t < 300; ++t, ++c.cases) {
    const std::size_t n = static_cast<std::size_t>(uniform(rng, 1, 4));
    const BiPoly f = random_poly(rng, n, 4, 5);
    if (parse_poly(render_poly(f), n) != f) return c.fail("n=" + std::to_string(n) + " f=" + render_poly(f));
  }
  return c;
}

// ----------------------------------------------------------------- harmonics

CheckResult integration_rules(const Options& opts, int D) {
  CheckResult c{"monomial integrals: sphere recursion and orthogonality"};
  for (std::size_t n : dims_of(opts, {1, 2, 3}))
    for (int d = 0; d < D; ++d)
      for (const auto& al : multi_indices(n, d)) {
        ++c.cases;
        Rational sum = 0;
        for (std::size_t j = 0; j < n; ++j) {
          const MultiIndex up = al + MultiIndex::unit(n, j);
          sum += integrate_monomial(n, up, up);
        }
        if (sum != integrate_monomial(n, al, al))
          return c.fail("n=" + std::to_string(n) + " sum_j I(alpha+e_j) != I(alpha) at f=" +
                        render_poly(BiPoly::monomial({al, al})));
        for (const auto& be : multi_indices(n, d))
          if (be != al && integrate_monomial(n, al, be) != 0)
            return c.fail("n=" + std::to_string(n) + " nonzero mixed integral of " +
                          render_poly(BiPoly::monomial({al, be})));
      }
  return c;
}

CheckResult space_structure(const Options& opts, int D) {
  CheckResult c{"H(p,q): dimension, harmonicity, Gram matrix"};
  for (std::size_t n : dims_of(opts, {1, 2, 3})) {
    const SphereContext ctx(n);
    for (const auto bd : box_points(D)) {
      ++c.cases;
      const auto h = ctx.space(bd);
      const std::string where = "dim --n " + std::to_string(n) + " --p " + std::to_string(bd.p) + " --q " +
                                std::to_string(bd.q);
      if (static_cast<long>(h->dim()) != harmonic_dim(n, bd)) return c.fail(where + ": wrong dimension");
      for (const auto& b : h->basis())
        if (!laplacian(b).is_zero() || !b.is_homogeneous(bd)) return c.fail(where + ": " + render_poly(b));
      for (std::size_t i = 0; i < h->dim(); ++i)
        for (std::size_t j = 0; j < h->dim(); ++j)
          if (inner_product(h->basis()[i], h->basis()[j]) != h->gram()(i, j))
            return c.fail(where + ": Gram entry " + std::to_string(i) + "," + std::to_string(j));
      if (!h->gram().is_hermitian() || !positive_definite(h->gram())) return c.fail(where + ": Gram not PD");
    }
  }
  return c;
}

CheckResult reproducing_identity(const Options& opts, int D, Rng& rng) {
  CheckResult c{"zonal kernel reproduces point values"};
  for (std::size_t n : dims_of(opts, {1, 2, 3})) {
    const SphereContext ctx(n);
    const auto points = sphere_points(n);
    for (const auto bd : box_points(D)) {
      const auto h = ctx.space(bd);
      if (h->dim() == 0) continue;
      for (const auto& z : points) {
        ++c.cases;
        const auto zk = zonal_kernel(h, z);
        const std::string where = "zonal --n " + std::to_string(n) + " --p " + std::to_string(bd.p) + " --q " +
                                  std::to_string(bd.q) + " --point " + render_vec(z.coords());
        const GaussRational kz = zk.kernel.evaluate(z.coords());
        if (kz != inner_product(zk.kernel, zk.kernel) || !kz.is_real() || sgn(kz.re()) <= 0)
          return c.fail(where + ": K(z) != <K,K> or not positive");
        std::vector<BiPoly> probes;
        for (int t = 0; t < 5; ++t) probes.push_back(h->basis()[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(h->dim()) - 1))]);
        for (int t = 0; t < 2; ++t) {
          RatVector a(h->dim());
          for (auto& x : a) x = random_gauss(rng);
          probes.push_back(h->combine(a));
        }
        for (const auto& f : probes)
          if (inner_product(f, zk.kernel) != f.evaluate(z.coords()))
            return c.fail(where + ": <f,K> != f(z) for f=" + render_poly(f));
      }
    }
  }
  return c;
}

CheckResult projection_calculus(const Options& opts, int D, Rng& rng) {
  CheckResult c{"projection idempotence, annihilation, Parseval"};
  for (std::size_t n : dims_of(opts, {2, 3})) {
    const SphereContext ctx(n);
    const auto box = box_points(D);
    std::vector<BiPoly> inputs;
    for (const auto& m : all_monomials(n, D)) inputs.push_back(BiPoly::monomial(m));
    for (int t = 0; t < 20; ++t) inputs.push_back(random_poly(rng, n, D, 4));
    for (const auto& f : inputs) {
      ++c.cases;
      const std::string where = "project --n " + std::to_string(n) + " --poly \"" + render_poly(f) + "\"";
      GaussRational parseval = 0;
      BiPoly sum(n);
      for (const auto bd : candidate_bidegrees(f)) {
        const auto h = ctx.space(bd);
        const BiPoly pf = h->project(f);
        if (pf.is_zero()) continue;
        parseval += inner_product(pf, pf);
        sum += pf;
        if (h->project(pf) != pf) return c.fail(where + " --bidegree " + render_bd(bd) + ": not idempotent");
        for (const auto other : box)
          if (other != bd && !ctx.space(other)->project(pf).is_zero())
            return c.fail(where + " --bidegree " + render_bd(bd) + ": pi_" + render_bd(other) + " of it nonzero");
      }
      if (parseval != inner_product(f, f)) return c.fail(where + ": Parseval sum differs from <f,f>");
      const BiPoly rest = f - sum;
      if (!inner_product(rest, rest).is_zero()) return c.fail(where + ": components do not add up to f on S");
    }
  }
  return c;
}

CheckResult unitary_invariance(const Options& opts, int D, Rng& rng) {
  CheckResult c{"unitary invariance and isometry"};
  const int top = std::min(D, 3);
  for (std::size_t n : dims_of(opts, {1, 2, 3})) {
    const SphereContext ctx(n);
    for (const auto& [name, u] : exact_unitaries(n)) {
      const std::string ustr = " U=" + render_matrix(u);
      for (const auto bd : box_points(top)) {
        const auto h = ctx.space(bd);
        for (const auto& f : h->basis()) {
          ++c.cases;
          const BiPoly g = substitute_linear(f, u);
          if (h->project(g) != g) return c.fail("n=" + std::to_string(n) + ustr + " f=" + render_poly(f) + ": left H(p,q)");
          if (inner_product(g, g) != inner_product(f, f))
            return c.fail("n=" + std::to_string(n) + ustr + " f=" + render_poly(f) + ": norm changed");
          if (bidegree_support(ctx, g) != BidegreeSet{bd})
            return c.fail("n=" + std::to_string(n) + ustr + " f=" + render_poly(f) + ": support changed");
        }
      }
      for (int t = 0; t < 10; ++t) {
        ++c.cases;
        const BiPoly f = random_poly(rng, n, top, 4);
        const BiPoly g = substitute_linear(f, u);
        if (bidegree_support(ctx, g) != bidegree_support(ctx, f) || inner_product(g, g) != inner_product(f, f))
          return c.fail("n=" + std::to_string(n) + ustr + " f=" + render_poly(f));
      }
    }
  }
  return c;
}

CheckResult switcheroo(const Options& opts, Rng& rng) {
  CheckResult c{"integral of (f o U) g equals integral of f (g o U^-1)"};
  for (std::size_t n : dims_of(opts, {1, 2, 3}))
    for (const auto& [name, u] : exact_unitaries(n))
      for (int t = 0; t < 20; ++t, ++c.cases) {
        const BiPoly f = random_poly(rng, n, 3, 4), g = random_poly(rng, n, 3, 4);
        if (bilinear_pairing(substitute_linear(f, u), g) != bilinear_pairing(f, substitute_linear(g, u.adjoint())))
          return c.fail("n=" + std::to_string(n) + " U=" + render_matrix(u) + " f=" + render_poly(f) +
                        " g=" + render_poly(g));
      }
  return c;
}

CheckResult holomorphic_dilation(const Options& opts, int D, Rng& rng) {
  CheckResult c{"dilated holomorphic polynomials have no q>0 component"};
  const Rational radii[] = {Rational(1, 2), Rational(2, 3), Rational(3), Rational(-5, 4)};
  for (std::size_t n : dims_of(opts, {1, 2, 3})) {
    const SphereContext ctx(n);
    for (int t = 0; t < 15; ++t)
      for (const auto& r : radii) {
        ++c.cases;
        const BiPoly f = scale_radial(random_poly(rng, n, D, 4, true), r);
        for (const auto bd : bidegree_support(ctx, f))
          if (bd.q > 0) return c.fail("support --n " + std::to_string(n) + " --poly \"" + render_poly(f) + "\"");
      }
  }
  return c;
}

// ------------------------------------------------------------------ patterns

PatternBox naive_closure(const PatternBox& seed, CombineRule rule) {
  PatternBox cur = seed;
  for (bool changed = true; changed;) {
    changed = false;
    const BidegreeSet snapshot = cur.members();
    for (const auto& a : snapshot)
      for (const auto& b : snapshot)
        for (const auto& x : combine_points(a, b, rule)) changed = cur.insert(x) || changed;
  }
  return cur;
}

PatternBox random_seed(Rng& rng, int D) {
  PatternBox s(D, {});
  const int k = uniform(rng, 1, 3);
  for (int i = 0; i < k; ++i) {
    const int t = uniform(rng, 0, D);
    const int p = uniform(rng, 0, t);
    s.insert({p, t - p});
  }
  return s;
}

PatternBox unite(const PatternBox& a, const PatternBox& b) {
  PatternBox out = a;
  for (const auto& x : b.members()) out.insert(x);
  return out;
}

bool subset(const PatternBox& a, const PatternBox& b) {
  return std::includes(b.members().begin(), b.members().end(), a.members().begin(), a.members().end());
}

CheckResult closure_properties(const Options& opts, int D, Rng& rng) {
  CheckResult c{"closure: extensive, idempotent, monotone, order independent"};
  const int Dc = std::min(D, 8);
  for (int t = 0; t < 300; ++t, ++c.cases) {
    const PatternBox a = random_seed(rng, Dc), b = random_seed(rng, Dc);
    const PatternBox ca = closure_box(a, opts.rule), cab = closure_box(unite(a, b), opts.rule);
    const std::string where = "pattern-closure --seed \"" + render_points(a.members()) + "\" --maxdeg " +
                              std::to_string(Dc) + (opts.rule == CombineRule::Plus ? " --rule plus" : "");
    if (!subset(a, ca) || !is_pattern_box(ca, opts.rule)) return c.fail(where + ": not a closed superset");
    if (closure_box(ca, opts.rule) != ca) return c.fail(where + ": not idempotent");
    if (ca != naive_closure(a, opts.rule)) return c.fail(where + ": differs from full-sweep fixpoint");
    if (!subset(ca, cab)) return c.fail(where + ": not monotone when adding " + render_points(b.members()));
    if (closure_box(unite(ca, b), opts.rule) != cab)
      return c.fail(where + ": order dependent with " + render_points(b.members()));
  }
  return c;
}

std::vector<PatternFamily> combinatorial_families() {
  using namespace family;
  return {Empty{},        Origin{},         Hol{},          AntiHol{},      Full{},         GofD{1},
          GofD{2},        GofD{3},          GofD{4},        GofSigma{},     GofSigma{{2}},  GofSigma{{3, 5}},
          GofSigma{{2, 3}}, Gpq{1, 0},      Gpq{2, 1},      Gpq{3, 1},      Gpq{3, 2},      Gpq{4, 1},
          Gpq{5, 2}};
}

CheckResult family_truncations(int D) {
  CheckResult c{"family truncations are closed"};
  for (const auto& fam : combinatorial_families())
    for (int d = 0; d <= D; ++d, ++c.cases) {
      const PatternBox box = truncate(fam, d);
      if (auto v = find_pattern_violation(box))
        return c.fail(to_string(fam) + " at maxdeg " + std::to_string(d) + ": (" + render_bd(v->left) + ")x(" +
                      render_bd(v->right) + ") needs (" + render_bd(v->missing) + ")");
      if (!is_pattern_box(conjugate_pattern(box)))
        return c.fail("conjugate of " + to_string(fam) + " at maxdeg " + std::to_string(d));
    }
  // The pluriharmonic space is invariant but not closed under products.
  for (int d = 2; d <= D; ++d, ++c.cases)
    if (is_pattern_box(truncate(family::Pluriharmonic{}, d)))
      return c.fail("plurih at maxdeg " + std::to_string(d) + " reported closed");
  return c;
}

CheckResult n2_family_truncations(int D) {
  CheckResult c{"n=2 families closed under exact products"};
  const SphereContext ctx(2);
  const std::vector<PatternFamily> fams{family::GpqN2{1, 0}, family::GpqN2{2, 1}, family::GpqN2{3, 1},
                                        family::GofSigmaStar{}, family::GofSigmaStar{{2}}};
  for (const auto& fam : fams)
    for (int d = 0; d <= D; ++d, ++c.cases) {
      const auto res = is_algebra_exact(ctx, truncate(fam, d));
      if (!res.is_algebra)
        return c.fail("algebra-check --n 2 --family \"" + to_string(fam) + "\" --maxdeg " + std::to_string(d) +
                      ": (" + render_bd(*res.left) + ")x(" + render_bd(*res.right) + ") reaches (" +
                      render_bd(*res.escaping) + ")");
    }
  return c;
}

CheckResult ladder_fixpoints() {
  CheckResult c{"Moebius ladder has exactly six fixpoints (D=3)"};
  const int D = 3;
  const auto pts = box_points(D);
  std::set<BidegreeSet> closures;
  for (unsigned mask = 0; mask < (1u << pts.size()); ++mask, ++c.cases) {
    PatternBox s(D, {});
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (mask & (1u << i)) s.insert(pts[i]);
    const PatternBox cl = m_ladder_closure(s);
    if (m_ladder_closure(cl) != cl) return c.fail("pattern-mclosure --seed \"" + render_points(s.members()) + "\"");
    closures.insert(cl.members());
  }
  std::set<BidegreeSet> six;
  for (auto s : {SixSpace::Empty, SixSpace::Origin, SixSpace::Hol, SixSpace::AntiHol, SixSpace::Pluriharmonic,
                 SixSpace::Full}) {
    const PatternBox t = truncate(as_family(s), D);
    if (six_space_classify(t) != s) return c.fail("six_space_classify misreads " + to_string(s));
    six.insert(t.members());
  }
  if (closures != six) {
    c.fail(std::to_string(closures.size()) + " distinct closures, expected the six invariant spaces");
  }
  return c;
}

CheckResult gpq_closures(const Options& opts, int D) {
  CheckResult c{"closure of a single point is Gpq"};
  for (auto [p, q] : {std::pair{1, 0}, {2, 1}, {3, 1}}) {
    ++c.cases;
    const PatternBox cl = closure_box(PatternBox(D, {{p, q}}), opts.rule);
    const PatternBox expect = truncate(family::Gpq{p, q}, D);
    if (cl != expect) {
      BidegreeSet diff;
      std::set_symmetric_difference(cl.members().begin(), cl.members().end(), expect.members().begin(),
                                    expect.members().end(), std::inserter(diff, diff.end()));
      return c.fail("pattern-closure --seed \"(" + render_bd({p, q}) + ")\" --maxdeg " + std::to_string(D) +
                    (opts.rule == CombineRule::Plus ? " --rule plus" : "") + ": differs at " + render_points(diff));
    }
  }
  ++c.cases;
  const PatternBox diag = closure_box(PatternBox(D, {{1, 1}}), opts.rule);
  if (diag != truncate(family::GofSigma{}, D))
    c.fail("pattern-closure --seed \"(1,1)\" --maxdeg " + std::to_string(D) +
           (opts.rule == CombineRule::Plus ? " --rule plus" : "") + ": not the diagonal");
  return c;
}

CheckResult classification_roundtrip(int D) {
  CheckResult c{"classification recovers the family"};
  for (const auto& fam : combinatorial_families()) {
    ++c.cases;
    const PatternBox box = truncate(fam, D);
    const auto res = classify_pattern(box);
    const PatternBox back = res.mirrored ? conjugate_pattern(truncate(res.family, D)) : truncate(res.family, D);
    if (back != box) return c.fail("pattern-classify --pattern \"" + render_points(box.members()) + "\" --maxdeg " +
                                   std::to_string(D) + " gave " + to_string(res.family));
  }
  ++c.cases;
  const auto res = classify_pattern(closure_box(PatternBox(D, {{1, 0}, {0, 1}})));
  if (to_string(res.family) != "G(d=1)") c.fail("closure of (1,0);(0,1) classified as " + to_string(res.family));
  return c;
}

// -------------------------------------------------------------- product-span

CheckResult product_sweep(const Options& opts, const SphereContext& ctx, int D,
                          std::map<std::pair<Bidegree, Bidegree>, ProductSupportReport>& reports) {
  const std::size_t n = ctx.n();
  CheckResult c{"product supports versus the combination rule"};
  const auto pts = box_points(D);
  std::size_t mismatched = 0;
  for (const auto a : pts)
    for (const auto b : pts) {
      ++c.cases;
      ProductOptions po;
      po.rule = opts.rule;
      po.witnesses = false;
      const auto rep = product_space_support(ctx, a, b, po);
      reports.emplace(std::pair{a, b}, rep);
      const std::string cmd = "product --n " + std::to_string(n) + " --left " + render_bd(a) + " --right " +
                              render_bd(b) + (opts.rule == CombineRule::Plus ? " --rule plus" : "");
      std::string bad;
      if (n >= 3) {
        if (!rep.match) bad = "missing " + render_points(rep.missing()) + " extra " + render_points(rep.extra());
      } else if (n == 2) {
        BidegreeSet expect;
        for (const auto& x : n2_deleted_points(a, b))
          if (rep.predicted.count(x)) expect.insert(x);
        if (!rep.extra().empty() || rep.missing() != expect)
          bad = "missing " + render_points(rep.missing()) + " extra " + render_points(rep.extra()) +
                ", deletions " + render_points(expect);
      } else if (!rep.extra().empty()) {
        bad = "extra " + render_points(rep.extra());
      }
      if (!bad.empty()) {
        ++mismatched;
        c.fail(cmd + ": " + bad);
      }
    }
  c.detail = std::to_string(c.cases) + " pairs checked, " + std::to_string(mismatched) + " mismatched";
  return c;
}

CheckResult product_symmetry(const std::map<std::pair<Bidegree, Bidegree>, ProductSupportReport>& reports) {
  CheckResult c{"product support symmetric and weight preserving"};
  for (const auto& [key, rep] : reports) {
    ++c.cases;
    const auto [a, b] = key;
    const std::string cmd = "product --n " + std::to_string(rep.n) + " --left " + render_bd(a) + " --right " +
                            render_bd(b);
    if (reports.at({b, a}).support != rep.support) return c.fail(cmd + ": differs from swapped order");
    for (const auto& x : rep.support)
      if (x.p - x.q != (a.p + b.p) - (a.q + b.q) || x.total() > a.total() + b.total())
        return c.fail(cmd + ": component (" + render_bd(x) + ")");
  }
  return c;
}

CheckResult decomposition_complete(const SphereContext& ctx, int D) {
  CheckResult c{"monomials of degree <= D span every H(p,q) in the box"};
  std::vector<BiPoly> gens;
  for (const auto& m : all_monomials(ctx.n(), D)) gens.push_back(BiPoly::monomial(m));
  c.cases = gens.size();
  const PatternBox got = uinv_span_pattern(ctx, gens, D);
  PatternBox expect(D, {});
  for (const auto bd : box_points(D))
    if (ctx.space(bd)->dim() > 0) expect.insert(bd);
  if (got != expect) c.fail("n=" + std::to_string(ctx.n()) + " maxdeg " + std::to_string(D) + ": got " +
                            render_points(got.members()));
  return c;
}

// ------------------------------------------------------------------------ mc

std::string mc_tag(const Options& opts, std::size_t n) {
  return "--n " + std::to_string(n) + " --seed " + std::to_string(opts.seed) + " --samples " +
         std::to_string(opts.samples);
}

std::string show(const mc::QuadEstimate& e) {
  std::ostringstream os;
  os.precision(6);
  os << e.value.real() << (e.value.imag() < 0 ? "" : "+") << e.value.imag() << "i +- " << e.stderr_;
  return os.str();
}

mc::CVector random_sphere(Rng& rng, std::size_t n) {
  std::normal_distribution<double> g;
  mc::CVector z(n);
  double s = 0;
  for (auto& x : z) {
    x = {g(rng), g(rng)};
    s += std::norm(x);
  }
  for (auto& x : z) x /= std::sqrt(s);
  return z;
}

double dist(const mc::CVector& a, std::span<const mc::Complex> b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
  return std::sqrt(s);
}

CheckResult automorphism_invariants(const Options& opts) {
  CheckResult c{"ball automorphism: involution, boundary, exchanges 0 and a"};
  Rng rng(opts.seed);
  std::uniform_real_distribution<double> radius(0.0, 0.9);
  for (int t = 0; t < 100; ++t, ++c.cases) {
    const std::size_t n = static_cast<std::size_t>(uniform(rng, 1, 4));
    mc::CVector a = random_sphere(rng, n);
    const double r = radius(rng);
    for (auto& x : a) x *= r;
    const mc::CVector z = random_sphere(rng, n);
    mc::CVector inner = z;
    for (auto& x : inner) x *= 0.5;
    const mc::BallAutomorphism phi(a);
    const mc::CVector fz = phi.apply(z);
    double norm = 0;
    for (const auto& x : fz) norm += std::norm(x);
    const double err = std::max({dist(phi.apply(fz), z), dist(phi.apply(phi.apply(inner)), inner),
                                 std::abs(std::sqrt(norm) - 1.0), dist(phi.apply(mc::CVector(n)), a),
                                 dist(phi.apply(a), mc::CVector(n))});
    if (err > 1e-12) {
      std::ostringstream os;
      os.precision(17);
      os << "case " << t << " with seed " << opts.seed << ": error " << err << " at |a|=" << r;
      return c.fail(os.str());
    }
  }
  return c;
}

CheckResult haar_unitarity(const Options& opts) {
  CheckResult c{"Haar samples are unitary"};
  for (std::size_t n = 1; n <= 4; ++n) {
    const mc::HaarSampler s(opts.seed, n, 1);
    auto eng = s.chunk_engine(0);
    for (int t = 0; t < 500; ++t, ++c.cases) {
      const double d = mc::unitarity_defect(s.unitary(eng));
      if (d > 1e-12) return c.fail("n=" + std::to_string(n) + " sample " + std::to_string(t) + " seed " +
                                   std::to_string(opts.seed) + ": defect " + std::to_string(d));
    }
  }
  return c;
}

CheckResult haar_phase_invariance(const Options& opts) {
  CheckResult c{"Haar averages: exact integral and column-phase invariance"};
  const double theta[] = {0.7, -1.3, 2.1};
  for (std::size_t n : {2u, 3u}) {
    const mc::HaarSampler s(opts.seed, n, opts.threads);
    const std::vector<BiPoly> tests{parse_poly("z1^2*w1^2", n), parse_poly("z1*w2 + z2*w2", n),
                                    parse_poly("z1^2*w2^2 - (1/2+i)*z1", n)};
    mc::CVector z(n);
    z[0] = 0.6;
    z[1] = 0.8;
    for (const auto& f : tests) {
      ++c.cases;
      const NumericPoly nf(f);
      const mc::Complex exact = integrate(f).to_complex();
      auto rotated = [&](const Eigen::MatrixXcd& u, bool phase) {
        Eigen::VectorXcd v(static_cast<Eigen::Index>(n));
        for (std::size_t j = 0; j < n; ++j)
          v(static_cast<Eigen::Index>(j)) = phase ? z[j] * std::polar(1.0, theta[j]) : z[j];
        const Eigen::VectorXcd w = u * v;
        return nf(std::span<const mc::Complex>(w.data(), n));
      };
      const auto plain = mc::mc_mean(s, opts.samples, [&](mc::Engine& e) { return rotated(s.unitary(e), false); });
      const auto phased = mc::mc_mean(s, opts.samples, [&](mc::Engine& e) { return rotated(s.unitary(e), true); });
      const auto diff = mc::mc_mean(s, opts.samples, [&](mc::Engine& e) {
        const auto u = s.unitary(e);
        return rotated(u, true) - rotated(u, false);
      });
      if (!plain.agrees_with(exact) || !phased.agrees_with(exact) || !diff.agrees_with(0.0))
        return c.fail("mc " + mc_tag(opts, n) + " --poly \"" + render_poly(f) + "\": " + show(plain) + " / " +
                      show(phased) + " vs " + std::to_string(exact.real()));
    }
  }
  return c;
}

CheckResult monomial_integrals(const Options& opts) {
  CheckResult c{"sphere sampling matches exact monomial integrals"};
  for (std::size_t n = 1; n <= 3; ++n) {
    std::vector<BiMonomial> mons;
    for (int a = 0; a <= 3; ++a)
      for (int b = 0; b <= 3; ++b)
        for (const auto& al : multi_indices(n, a))
          for (const auto& be : multi_indices(n, b)) mons.push_back({al, be});
    const mc::HaarSampler s(opts.seed, n, opts.threads);
    const auto est = mc::mc_integrate_monomials(mons, s, opts.samples);
    for (std::size_t i = 0; i < mons.size(); ++i, ++c.cases) {
      const double exact = integrate_monomial(n, mons[i].alpha, mons[i].beta).get_d();
      if (!est[i].agrees_with(exact))
        return c.fail("mc " + mc_tag(opts, n) + " --poly \"" + render_poly(BiPoly::monomial(mons[i])) +
                      "\": " + show(est[i]) + " vs " + std::to_string(exact));
    }
  }
  return c;
}

CheckResult projection_estimates(const Options& opts) {
  CheckResult c{"projection estimates at e1"};
  const SphereContext ctx(2);
  const mc::HaarSampler s(opts.seed, 2, opts.threads);
  const mc::SphereFunction z1 = [](std::span<const mc::Complex> z) { return z[0]; };
  const std::string tag = "mc " + mc_tag(opts, 2);

  ++c.cases;
  if (const auto e = mc::mc_integrate(NumericPoly(parse_poly("z1^2*w1^2", 2)), s, opts.samples);
      !e.agrees_with(1.0 / 3.0))
    return c.fail(tag + " --poly \"z1^2*w1^2\": " + show(e) + " vs 1/3");
  ++c.cases;
  if (const auto e = mc::mc_project(z1, {1, 0}, ctx, s, opts.samples); !e.agrees_with(1.0))
    return c.fail(tag + " --poly z1 --bidegree 1,0: " + show(e));
  ++c.cases;
  if (const auto e = mc::mc_project(z1, {0, 1}, ctx, s, opts.samples); !e.agrees_with(0.0))
    return c.fail(tag + " --poly z1 --bidegree 0,1: " + show(e));

  const mc::BallAutomorphism phi({0.5, 0.0});
  const auto f = mc::compose(BiPoly::z(2, 1), phi);
  const std::pair<Bidegree, double> expected[] = {{{0, 0}, 0.5}, {{1, 0}, -0.75}, {{2, 0}, -0.375}};
  for (const auto& [bd, value] : expected) {
    ++c.cases;
    const auto e = mc::mc_project(f, bd, ctx, s, opts.samples);
    if (!e.agrees_with(value) || !e.is_nonzero())
      return c.fail(tag + " --poly z1 --moebius 1/2,0 --bidegree " + render_bd(bd) + ": " + show(e) + " vs " +
                    std::to_string(value));
  }
  for (const Bidegree bd : {Bidegree{1, 1}, Bidegree{0, 1}, Bidegree{2, 1}}) {
    ++c.cases;
    const auto e = mc::mc_project(f, bd, ctx, s, opts.samples);
    if (!e.agrees_with(0.0))
      return c.fail(tag + " --poly z1 --moebius 1/2,0 --bidegree " + render_bd(bd) + ": " + show(e));
  }
  return c;
}

CheckResult ladder_estimates(const Options& opts) {
  CheckResult c{"Moebius ladder evidence"};
  const SphereContext ctx(2);
  const mc::HaarSampler s(opts.seed, 2, opts.threads);
  const std::string tag = "mc " + mc_tag(opts, 2) + " --ladder 1,0";
  ++c.cases;
  const auto ev = mc::moebius_ladder_evidence({1, 0}, {0.5, 0.0}, ctx, s, opts.samples);
  if (!ev.evidence()) return c.fail(tag + " --moebius 1/2,0: no ladder evidence");
  ++c.cases;
  const auto ev0 = mc::moebius_ladder_evidence({1, 0}, {0.0, 0.0}, ctx, s, opts.samples);
  for (const auto& e : ev0.entries)
    if (e.target != Bidegree{1, 0} && !e.estimate.agrees_with(0.0))
      return c.fail(tag + " --moebius 0,0: (" + render_bd(e.target) + ") component nonzero");
  ++c.cases;
  const auto kept = mc::mc_project(mc::compose(BiPoly::z(2, 1), mc::BallAutomorphism({0.0, 0.0})), {1, 0}, ctx, s,
                                   opts.samples);
  if (!kept.agrees_with(-1.0) || !kept.is_nonzero())
    return c.fail("mc " + mc_tag(opts, 2) + " --poly z1 --moebius 0,0 --bidegree 1,0: " + show(kept));
  for (const auto* poly : {"z1*z2", "z2^2 - 3*z1"}) {
    ++c.cases;
    const auto f = mc::compose(parse_poly(poly, 2), mc::BallAutomorphism({{1.0 / 3.0, 0.0}, {0.0, 0.25}}));
    for (int q = 1; q <= 2; ++q)
      for (int p = 0; p <= 2; ++p) {
        const auto e = mc::mc_project(f, {p, q}, ctx, s, opts.samples);
        if (!e.agrees_with(0.0))
          return c.fail("mc " + mc_tag(opts, 2) + " --poly \"" + poly + "\" --moebius 1/3,(0+1/4i) --bidegree " +
                        render_bd({p, q}) + ": " + show(e));
      }
  }
  return c;
}

CheckResult reproducibility(const Options& opts) {
  CheckResult c{"estimates reproducible across runs and thread counts"};
  const NumericPoly f(parse_poly("z1^2*w1^2 + (1/3-i)*z2*w1", 2));
  const auto e1 = mc::mc_integrate(f, mc::HaarSampler(opts.seed, 2, 1), opts.samples);
  const auto e2 = mc::mc_integrate(f, mc::HaarSampler(opts.seed, 2, 1), opts.samples);
  const auto e4 = mc::mc_integrate(f, mc::HaarSampler(opts.seed, 2, 4), opts.samples);
  c.cases = 3;
  auto same = [](const mc::QuadEstimate& a, const mc::QuadEstimate& b) {
    return a.value == b.value && a.stderr_ == b.stderr_ && a.samples == b.samples;
  };
  if (!same(e1, e2) || !same(e1, e4)) c.fail("mc " + mc_tag(opts, 2) + " with --threads 1 vs 4");
  return c;
}

}  // namespace

SuiteReport exact_core_suite(const Options& opts) {
  Rng rng(opts.seed);
  SuiteReport r{"exact-core", {}};
  r.checks.push_back(field_axioms(rng));
  r.checks.push_back(conj_homomorphism(rng));
  r.checks.push_back(laplacian_rules(rng));
  r.checks.push_back(substitution_rules(rng));
  r.checks.push_back(kernel_rank(rng));
  r.checks.push_back(parse_roundtrip(rng));
  return r;
}

SuiteReport harmonics_suite(const Options& opts) {
  Rng rng(opts.seed);
  const int D = opts.maxdeg.value_or(4);
  SuiteReport r{"harmonics", {}};
  r.checks.push_back(integration_rules(opts, D));
  r.checks.push_back(space_structure(opts, D));
  r.checks.push_back(reproducing_identity(opts, D, rng));
  r.checks.push_back(projection_calculus(opts, D, rng));
  r.checks.push_back(unitary_invariance(opts, D, rng));
  r.checks.push_back(switcheroo(opts, rng));
  r.checks.push_back(holomorphic_dilation(opts, D, rng));
  return r;
}

SuiteReport patterns_suite(const Options& opts) {
  Rng rng(opts.seed);
  const int D = opts.maxdeg.value_or(10);
  SuiteReport r{"patterns", {}};
  r.checks.push_back(closure_properties(opts, D, rng));
  r.checks.push_back(family_truncations(D));
  r.checks.push_back(n2_family_truncations(std::min(D, 10)));
  r.checks.push_back(ladder_fixpoints());
  r.checks.push_back(gpq_closures(opts, D));
  r.checks.push_back(classification_roundtrip(D));
  return r;
}

SuiteReport product_span_suite(const Options& opts) {
  const SphereContext ctx(opts.n.value_or(3));
  const int D = opts.maxdeg.value_or(3);
  SuiteReport r{"product-span", {}};
  std::map<std::pair<Bidegree, Bidegree>, ProductSupportReport> reports;
  r.checks.push_back(product_sweep(opts, ctx, D, reports));
  r.checks.push_back(product_symmetry(reports));
  r.checks.push_back(decomposition_complete(ctx, D));
  return r;
}

SuiteReport mc_suite(const Options& opts) {
  SuiteReport r{"mc", {}};
  r.checks.push_back(automorphism_invariants(opts));
  r.checks.push_back(haar_unitarity(opts));
  r.checks.push_back(haar_phase_invariance(opts));
  r.checks.push_back(monomial_integrals(opts));
  r.checks.push_back(projection_estimates(opts));
  r.checks.push_back(ladder_estimates(opts));
  r.checks.push_back(reproducibility(opts));
  return r;
}

}  // namespace harmalg::verify
