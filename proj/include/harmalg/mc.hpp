#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "harmalg/sphere.hpp"

namespace harmalg::mc {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;
using SphereFunction = std::function<Complex(std::span<const Complex>)>;

struct QuadEstimate {
  Complex value;
  double stderr_ = 0.0;  // sample standard deviation / sqrt(samples)
  std::size_t samples = 0;

  // |value - reference| <= k * stderr + 1e-12
  bool agrees_with(Complex reference, double k = 4.0) const;
  // |value| > k * stderr and |value| > floor
  bool is_nonzero(double k = 4.0, double floor = 1e-3) const;
};

class SingularDenominator : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The involutive automorphism of the unit ball exchanging 0 and a:
//   phi_a(z) = (a - P_a z - s_a Q_a z) / (1 - <z,a>),
// P_a the orthogonal projection onto span(a), Q_a = I - P_a,
// s_a = sqrt(1 - |a|^2). For a = 0 this is z -> -z.
class BallAutomorphism {
 public:
  explicit BallAutomorphism(CVector a);

  const CVector& center() const { return a_; }
  std::size_t dim() const { return a_.size(); }
  CVector apply(std::span<const Complex> z) const;

 private:
  CVector a_;
  double norm2_;
  double s_;
};

CVector automorphism_apply(const BallAutomorphism& phi, std::span<const Complex> z);

using Engine = std::mt19937_64;

// Deterministic source of uniform sphere points and Haar unitaries. Sampling
// is split into fixed-size chunks; chunk k draws from an engine seeded by
// (seed, k), so results do not depend on the thread count.
class HaarSampler {
 public:
  static constexpr std::size_t kChunk = 4096;

  HaarSampler(std::uint64_t seed, std::size_t n, unsigned threads = 0);

  std::uint64_t seed() const { return seed_; }
  std::size_t dim() const { return n_; }
  unsigned threads() const { return threads_; }

  Engine chunk_engine(std::size_t chunk) const;

  CVector sphere_point(Engine& eng) const;
  Eigen::MatrixXcd unitary(Engine& eng) const;

 private:
  std::uint64_t seed_;
  std::size_t n_;
  unsigned threads_;
};

// Default worker count: HARMALG_THREADS if set, else hardware concurrency.
unsigned default_threads();

double unitarity_defect(const Eigen::MatrixXcd& u);

// Mean of draw(engine) over samples draws, chunked as described above.
QuadEstimate mc_mean(const HaarSampler& sampler, std::size_t samples,
                     const std::function<Complex(Engine&)>& draw);

QuadEstimate mc_integrate(const SphereFunction& f, const HaarSampler& sampler, std::size_t samples);

// One pass over the sample points estimating every monomial integral.
std::vector<QuadEstimate> mc_integrate_monomials(const std::vector<BiMonomial>& monomials,
                                                 const HaarSampler& sampler, std::size_t samples);

struct HaarAverage {
  QuadEstimate haar;   // mean of f(U z) over Haar-random U
  QuadEstimate exact;  // exact integral of f over S, stderr 0
  bool agrees(double k = 4.0) const { return haar.agrees_with(exact.value, k); }
};

HaarAverage haar_average_check(const BiPoly& f, std::span<const Complex> z, const HaarSampler& sampler,
                               std::size_t samples);

// Estimates (pi_pq f)(z0) = integral of f * conj(K_z0). z0 defaults to e_1.
QuadEstimate mc_project(const SphereFunction& f, Bidegree bd, const SphereContext& ctx,
                        const HaarSampler& sampler, std::size_t samples,
                        const std::optional<SpherePoint>& z0 = std::nullopt);

SphereFunction compose(const BiPoly& f, const BallAutomorphism& phi);

struct LadderEntry {
  std::size_t basis_index;
  Bidegree target;
  QuadEstimate estimate;
};

struct LadderEvidence {
  Bidegree source;
  CVector a;
  std::vector<LadderEntry> entries;
  bool lower_found = false;  // some basis element has a nonzero (p-1,q) estimate
  bool upper_found = false;  // same for (p+1,q)
  // For q == 0: every probed (p',q') with q' > 0 estimate is within k*stderr of 0.
  std::optional<bool> holomorphic_vanishing;
  bool evidence() const { return lower_found && upper_found && holomorphic_vanishing.value_or(true); }
};

LadderEvidence moebius_ladder_evidence(Bidegree source, const CVector& a, const SphereContext& ctx,
                                       const HaarSampler& sampler, std::size_t samples);

}  // namespace harmalg::mc
