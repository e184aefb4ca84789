#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "harmalg/matrix.hpp"
#include "harmalg/poly.hpp"

namespace harmalg {

// Integral of z^alpha conj(z)^beta over the unit sphere of C^n against the
// normalized rotation-invariant measure: zero unless alpha == beta, else
// (n-1)! alpha! / (n-1+|alpha|)!.
Rational integrate_monomial(std::size_t n, const MultiIndex& alpha, const MultiIndex& beta);

// Integral of f over the sphere (no conjugation).
GaussRational integrate(const BiPoly& f);

// <f, g> = integral of f * conj(g).
GaussRational inner_product(const BiPoly& f, const BiPoly& g);

// Bilinear pairing: integral of f * g.
GaussRational bilinear_pairing(const BiPoly& f, const BiPoly& g);

// The harmonic polynomials of bidegree (p,q) restricted to S.
//
// The Laplacian commutes with the torus action, so the bidegree-(p,q)
// monomials split by weight alpha - beta into blocks that the Laplacian maps
// independently. The basis is the union of the block kernels, and the Gram
// matrix is block diagonal with respect to that split.
class HarmonicSpace {
 public:
  struct Block {
    std::vector<int> weight;
    std::size_t offset = 0;  // first basis index
    std::size_t size = 0;
    RatMatrix gram;
  };

  HarmonicSpace(std::size_t n, Bidegree bd);

  std::size_t dim_ambient() const { return n_; }
  Bidegree bidegree() const { return bd_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<BiPoly>& basis() const { return basis_; }
  const RatMatrix& gram() const { return gram_; }
  const std::vector<Block>& blocks() const { return blocks_; }

  // Coefficients a with pi(f) = sum_k a_k basis_k.
  RatVector projection_coefficients(const BiPoly& f) const;
  BiPoly project(const BiPoly& f) const;
  // True iff f is not orthogonal to this space.
  bool detects(const BiPoly& f) const;
  BiPoly combine(const RatVector& coeffs) const;

 private:
  std::size_t n_;
  Bidegree bd_;
  std::vector<BiPoly> basis_;
  RatMatrix gram_;
  std::vector<Block> blocks_;
  std::map<std::vector<int>, std::size_t> block_of_weight_;
};

// Binds operations to a dimension n and memoizes the spaces H(p,q). Copies
// share the cache; the cache is internally synchronized.
class SphereContext {
 public:
  explicit SphereContext(std::size_t n);

  std::size_t n() const { return n_; }
  std::shared_ptr<const HarmonicSpace> space(Bidegree bd) const;

 private:
  struct Cache {
    std::mutex mu;
    std::map<Bidegree, std::shared_ptr<const HarmonicSpace>> spaces;
  };
  std::size_t n_;
  std::shared_ptr<Cache> cache_;
};

HarmonicSpace harmonic_basis(const SphereContext& ctx, Bidegree bd);

class NotOnSphere : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A point of S with exact coordinates (sum |z_j|^2 == 1).
class SpherePoint {
 public:
  explicit SpherePoint(std::vector<GaussRational> coords);
  const std::vector<GaussRational>& coords() const { return coords_; }
  std::size_t dim() const { return coords_.size(); }
  std::vector<std::complex<double>> to_complex() const;

 private:
  std::vector<GaussRational> coords_;
};

struct ZonalKernel {
  std::shared_ptr<const HarmonicSpace> space;
  SpherePoint point;
  BiPoly kernel;
};

// The reproducing element K_z of H(p,q): <f, K_z> = f(z) for f in H(p,q).
ZonalKernel zonal_kernel(std::shared_ptr<const HarmonicSpace> space, const SpherePoint& z);

BiPoly project_bidegree(const SphereContext& ctx, const BiPoly& f, Bidegree bd);

// Bidegrees (a-j, b-j) reachable from the term bidegrees (a,b) of f.
BidegreeSet candidate_bidegrees(const BiPoly& f);

// {(p,q) : pi_pq f != 0}. With max_total set, only bidegrees of total degree
// at most max_total are probed.
BidegreeSet bidegree_support(const SphereContext& ctx, const BiPoly& f,
                             std::optional<int> max_total = std::nullopt);

}  // namespace harmalg
