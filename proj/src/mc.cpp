#include "harmalg/mc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>

namespace harmalg::mc {

bool QuadEstimate::agrees_with(Complex reference, double k) const {
  // the absolute floor covers zero-variance integrands, where stderr is rounding noise
  return std::abs(value - reference) <= k * stderr_ + 1e-12;
}

bool QuadEstimate::is_nonzero(double k, double floor) const {
  const double m = std::abs(value);
  return m > k * stderr_ && m > floor;
}

BallAutomorphism::BallAutomorphism(CVector a) : a_(std::move(a)) {
  norm2_ = 0.0;
  for (const auto& x : a_) norm2_ += std::norm(x);
  if (a_.empty()) throw std::invalid_argument("automorphism center must have dimension >= 1");
  if (!(norm2_ < 1.0)) throw std::invalid_argument("automorphism center must lie in the open unit ball");
  s_ = std::sqrt(1.0 - norm2_);
}

CVector BallAutomorphism::apply(std::span<const Complex> z) const {
  const std::size_t n = a_.size();
  if (z.size() != n) throw DimensionMismatch("automorphism: point dimension mismatch");
  CVector out(n);
  if (norm2_ == 0.0) {
    for (std::size_t j = 0; j < n; ++j) out[j] = -z[j];
    return out;
  }
  Complex za = 0.0;  // <z, a>
  for (std::size_t j = 0; j < n; ++j) za += z[j] * std::conj(a_[j]);
  const Complex denom = 1.0 - za;
  if (std::abs(denom) < 1e-14) throw SingularDenominator("automorphism: 1 - <z,a> vanishes");
  const Complex t = za / norm2_;  // P_a z = t a
  for (std::size_t j = 0; j < n; ++j) {
    const Complex pz = t * a_[j];
    const Complex qz = z[j] - pz;
    out[j] = (a_[j] - pz - s_ * qz) / denom;
  }
  return out;
}

CVector automorphism_apply(const BallAutomorphism& phi, std::span<const Complex> z) { return phi.apply(z); }

unsigned default_threads() {
  if (const char* env = std::getenv("HARMALG_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

HaarSampler::HaarSampler(std::uint64_t seed, std::size_t n, unsigned threads)
    : seed_(seed), n_(n), threads_(threads ? threads : default_threads()) {
  if (n == 0) throw std::invalid_argument("sampler dimension must be at least 1");
}

Engine HaarSampler::chunk_engine(std::size_t chunk) const {
  std::seed_seq seq{static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32),
                    static_cast<std::uint32_t>(chunk), static_cast<std::uint32_t>(chunk >> 32)};
  return Engine(seq);
}

namespace {

Complex complex_gaussian(Engine& eng) {
  std::normal_distribution<double> g(0.0, std::sqrt(0.5));
  const double re = g(eng);
  const double im = g(eng);
  return {re, im};
}

}  // namespace

CVector HaarSampler::sphere_point(Engine& eng) const {
  CVector z(n_);
  double norm = 0.0;
  do {
    norm = 0.0;
    for (auto& x : z) {
      x = complex_gaussian(eng);
      norm += std::norm(x);
    }
  } while (norm == 0.0);
  norm = std::sqrt(norm);
  for (auto& x : z) x /= norm;
  return z;
}

Eigen::MatrixXcd HaarSampler::unitary(Engine& eng) const {
  const auto n = static_cast<Eigen::Index>(n_);
  Eigen::MatrixXcd g(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) g(i, j) = complex_gaussian(eng);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    const double m = std::abs(d);
    if (m > 0) q.col(j) *= d / m;
  }
  return q;
}

double unitarity_defect(const Eigen::MatrixXcd& u) {
  return (u * u.adjoint() - Eigen::MatrixXcd::Identity(u.rows(), u.cols())).norm();
}

namespace {

struct ChunkStats {
  std::size_t count = 0;
  Complex mean = 0.0;
  double m2 = 0.0;  // sum |x - mean|^2
};

void merge(ChunkStats& acc, const ChunkStats& c) {
  if (c.count == 0) return;
  if (acc.count == 0) {
    acc = c;
    return;
  }
  const double na = static_cast<double>(acc.count), nc = static_cast<double>(c.count);
  const double nt = na + nc;
  const Complex delta = c.mean - acc.mean;
  acc.mean += delta * (nc / nt);
  acc.m2 += c.m2 + std::norm(delta) * na * nc / nt;
  acc.count += c.count;
}

QuadEstimate finish(const ChunkStats& total) {
  QuadEstimate est;
  est.value = total.mean;
  est.samples = total.count;
  est.stderr_ = std::sqrt(std::max(0.0, total.m2) / static_cast<double>(total.count - 1)) /
                std::sqrt(static_cast<double>(total.count));
  return est;
}

template <class F>
void run_chunks(unsigned threads, std::size_t chunks, F&& run_chunk) {
  const auto workers = static_cast<unsigned>(std::min<std::size_t>(threads, chunks));
  if (workers <= 1) {
    for (std::size_t k = 0; k < chunks; ++k) run_chunk(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < workers; ++t)
    pool.emplace_back([&] {
      for (std::size_t k; (k = next.fetch_add(1)) < chunks;) run_chunk(k);
    });
  for (auto& th : pool) th.join();
}

}  // namespace

QuadEstimate mc_mean(const HaarSampler& sampler, std::size_t samples,
                     const std::function<Complex(Engine&)>& draw) {
  if (samples < 2) throw std::invalid_argument("Monte Carlo needs at least 2 samples");
  const std::size_t chunks = (samples + HaarSampler::kChunk - 1) / HaarSampler::kChunk;
  std::vector<ChunkStats> stats(chunks);

  auto run_chunk = [&](std::size_t k) {
    Engine eng = sampler.chunk_engine(k);
    const std::size_t count = std::min(HaarSampler::kChunk, samples - k * HaarSampler::kChunk);
    ChunkStats s;
    for (std::size_t i = 0; i < count; ++i) {
      const Complex x = draw(eng);
      ++s.count;
      const Complex delta = x - s.mean;
      s.mean += delta / static_cast<double>(s.count);
      s.m2 += std::real(std::conj(delta) * (x - s.mean));
    }
    stats[k] = s;
  };

  run_chunks(sampler.threads(), chunks, run_chunk);

  ChunkStats total;
  for (const auto& s : stats) merge(total, s);
  return finish(total);
}

QuadEstimate mc_integrate(const SphereFunction& f, const HaarSampler& sampler, std::size_t samples) {
  return mc_mean(sampler, samples, [&](Engine& eng) {
    const CVector z = sampler.sphere_point(eng);
    return f(z);
  });
}

std::vector<QuadEstimate> mc_integrate_monomials(const std::vector<BiMonomial>& monomials,
                                                 const HaarSampler& sampler, std::size_t samples) {
  if (samples < 2) throw std::invalid_argument("Monte Carlo needs at least 2 samples");
  const std::size_t n = sampler.dim();
  int max_exp = 0;
  for (const auto& m : monomials) {
    if (m.alpha.size() != n || m.beta.size() != n) throw DimensionMismatch("monomial dimension mismatch");
    for (std::size_t j = 0; j < n; ++j) max_exp = std::max({max_exp, m.alpha[j], m.beta[j]});
  }
  const std::size_t stride = static_cast<std::size_t>(max_exp) + 1;
  const std::size_t chunks = (samples + HaarSampler::kChunk - 1) / HaarSampler::kChunk;
  std::vector<std::vector<ChunkStats>> stats(chunks, std::vector<ChunkStats>(monomials.size()));

  auto run_chunk = [&](std::size_t k) {
    Engine eng = sampler.chunk_engine(k);
    const std::size_t count = std::min(HaarSampler::kChunk, samples - k * HaarSampler::kChunk);
    std::vector<Complex> pw(n * stride), cpw(n * stride);
    auto& st = stats[k];
    for (std::size_t i = 0; i < count; ++i) {
      const CVector z = sampler.sphere_point(eng);
      for (std::size_t j = 0; j < n; ++j) {
        pw[j * stride] = cpw[j * stride] = 1.0;
        for (std::size_t e = 1; e < stride; ++e) {
          pw[j * stride + e] = pw[j * stride + e - 1] * z[j];
          cpw[j * stride + e] = cpw[j * stride + e - 1] * std::conj(z[j]);
        }
      }
      for (std::size_t t = 0; t < monomials.size(); ++t) {
        Complex x = 1.0;
        for (std::size_t j = 0; j < n; ++j)
          x *= pw[j * stride + monomials[t].alpha[j]] * cpw[j * stride + monomials[t].beta[j]];
        ChunkStats& s = st[t];
        ++s.count;
        const Complex delta = x - s.mean;
        s.mean += delta / static_cast<double>(s.count);
        s.m2 += std::real(std::conj(delta) * (x - s.mean));
      }
    }
  };
  run_chunks(sampler.threads(), chunks, run_chunk);

  std::vector<QuadEstimate> out(monomials.size());
  for (std::size_t t = 0; t < monomials.size(); ++t) {
    ChunkStats total;
    for (std::size_t k = 0; k < chunks; ++k) merge(total, stats[k][t]);
    out[t] = finish(total);
  }
  return out;
}

HaarAverage haar_average_check(const BiPoly& f, std::span<const Complex> z, const HaarSampler& sampler,
                               std::size_t samples) {
  if (f.dim() != sampler.dim() || z.size() != sampler.dim())
    throw DimensionMismatch("haar_average_check: dimension mismatch");
  const NumericPoly fn(f);
  const auto n = static_cast<Eigen::Index>(z.size());
  Eigen::VectorXcd zv(n);
  for (Eigen::Index i = 0; i < n; ++i) zv(i) = z[static_cast<std::size_t>(i)];

  HaarAverage out;
  out.haar = mc_mean(sampler, samples, [&](Engine& eng) {
    const Eigen::VectorXcd uz = sampler.unitary(eng) * zv;
    return fn(std::span<const Complex>(uz.data(), static_cast<std::size_t>(n)));
  });
  out.exact.value = integrate(f).to_complex();
  out.exact.samples = 0;
  return out;
}

QuadEstimate mc_project(const SphereFunction& f, Bidegree bd, const SphereContext& ctx,
                        const HaarSampler& sampler, std::size_t samples, const std::optional<SpherePoint>& z0) {
  if (sampler.dim() != ctx.n()) throw DimensionMismatch("mc_project: sampler dimension mismatch");
  std::vector<GaussRational> e1(ctx.n());
  e1[0] = 1;
  const SpherePoint point = z0 ? *z0 : SpherePoint(e1);
  const NumericPoly kernel(zonal_kernel(ctx.space(bd), point).kernel);
  return mc_integrate([&](std::span<const Complex> z) { return f(z) * std::conj(kernel(z)); }, sampler,
                      samples);
}

SphereFunction compose(const BiPoly& f, const BallAutomorphism& phi) {
  if (f.dim() != phi.dim()) throw DimensionMismatch("compose: dimension mismatch");
  return [fn = NumericPoly(f), phi](std::span<const Complex> z) {
    const CVector w = phi.apply(z);
    return fn(w);
  };
}

LadderEvidence moebius_ladder_evidence(Bidegree source, const CVector& a, const SphereContext& ctx,
                                       const HaarSampler& sampler, std::size_t samples) {
  if (source.p < 1) throw std::invalid_argument("ladder evidence needs p >= 1");
  const BallAutomorphism phi(a);
  const auto space = ctx.space(source);

  LadderEvidence ev;
  ev.source = source;
  ev.a = a;
  const Bidegree lower{source.p - 1, source.q}, upper{source.p + 1, source.q};
  std::vector<Bidegree> targets{lower, source, upper};
  std::vector<Bidegree> holo_probes;
  if (source.q == 0) {
    for (int qq = 1; qq <= 2; ++qq)
      for (int pp = std::max(0, source.p - 1); pp <= source.p + 1; ++pp) holo_probes.push_back({pp, qq});
    ev.holomorphic_vanishing = true;
  }

  for (std::size_t k = 0; k < space->dim(); ++k) {
    const SphereFunction g = compose(space->basis()[k], phi);
    for (const auto& t : targets) {
      LadderEntry e{k, t, mc_project(g, t, ctx, sampler, samples)};
      if (t == lower && e.estimate.is_nonzero()) ev.lower_found = true;
      if (t == upper && e.estimate.is_nonzero()) ev.upper_found = true;
      ev.entries.push_back(e);
    }
    for (const auto& t : holo_probes) {
      LadderEntry e{k, t, mc_project(g, t, ctx, sampler, samples)};
      if (!e.estimate.agrees_with(0.0)) ev.holomorphic_vanishing = false;
      ev.entries.push_back(e);
    }
  }
  return ev;
}

}  // namespace harmalg::mc
