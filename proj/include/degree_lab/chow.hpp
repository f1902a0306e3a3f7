#pragma once

#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "degree_lab/fan.hpp"
#include "degree_lab/lp.hpp"

namespace degree_lab {

/// Rational Chow ring of a complete simplicial fan, presented on squarefree
/// monomials x_sigma (sigma a cone, codimension = number of rays).
///
/// Relations in codimension c: for every cone tau with c - 1 rays and every m
/// in a basis of tau-perp, sum over cones sigma = tau + rho of <m, u_rho> x_sigma.
/// The quotient basis is the set of non-pivot columns of the reduced echelon
/// form, cones ordered lexicographically. Orbit closures: [V(sigma)] =
/// mult(sigma) x_sigma.
class ChowRing {
 public:
  explicit ChowRing(Fan fan);

  const Fan& fan() const { return fan_; }
  std::size_t rank() const { return fan_.rank(); }

  /// Cones with `codim` rays (the generators in that codimension).
  const std::vector<IndexSet>& generators(std::size_t codim) const;
  /// Relation rows over generators(codim), x-monomial normalization.
  const RatMat& relations(std::size_t codim) const;
  /// Positions (into generators(codim)) of the echelon basis.
  const std::vector<std::size_t>& basis(std::size_t codim) const;
  std::size_t dim(std::size_t codim) const { return basis(codim).size(); }

  /// Normal form of a vector over generators(codim): supported on the basis.
  RatVec reduce(std::size_t codim, RatVec x) const;
  /// x * x_rho, codimension codim + 1, not reduced.
  RatVec times_ray(std::size_t codim, const RatVec& x, int ray) const;
  /// Degree of a top-codimension vector: sum x_sigma / mult(sigma).
  Rat degree(const RatVec& top) const;

  Int multiplicity(std::size_t codim, std::size_t position) const { return mults_.at(codim).at(position); }

 private:
  struct Level {
    std::vector<IndexSet> cones;
    RatMat relations;
    RatMat echelon;
    std::vector<std::size_t> pivots;
    std::vector<std::size_t> basis;
  };
  Fan fan_;
  std::vector<Level> levels_;
  std::vector<std::vector<Int>> mults_;
};

/// Shared ring for a fan, built once per fan and reused.
std::shared_ptr<const ChowRing> chow_ring(const Fan& fan);

/// Element of N^k (codimension k): reduced coefficients over x_sigma.
struct DualClass {
  std::shared_ptr<const ChowRing> ring;
  std::size_t codim = 0;
  RatVec coeffs;

  bool operator==(const DualClass& other) const { return codim == other.codim && coeffs == other.coeffs; }
};

/// Element of N_k (dimension k): coordinates on the echelon basis, with respect
/// to the generators [V(sigma)], sigma with n - k rays.
struct CycleClass {
  std::shared_ptr<const ChowRing> ring;
  std::size_t dim = 0;
  RatVec coords;

  bool operator==(const CycleClass& other) const { return dim == other.dim && coords == other.coords; }
};

/// Presentation of N_k (dimension k) by orbit closures.
struct CycleBasis {
  std::shared_ptr<const ChowRing> ring;
  std::size_t dim = 0;
  /// Cones sigma with n - k rays; generator [V(sigma)].
  std::vector<IndexSet> generators;
  /// Relation rows in [V(sigma)] normalization.
  RatMat relations;
  /// Positions of the echelon basis among generators.
  std::vector<std::size_t> basis;

  std::size_t size() const { return basis.size(); }
};

CycleBasis numerical_basis(const Fan& fan, std::size_t k);

DualClass dual_unit(const Fan& fan);
DualClass dual_class(const TDivisor& d);
/// Basis element of N^codim (the x_sigma of basis position i).
DualClass dual_basis_element(const Fan& fan, std::size_t codim, std::size_t i);
DualClass operator*(const DualClass& a, const TDivisor& d);
DualClass operator*(const DualClass& a, const DualClass& b);
DualClass operator+(const DualClass& a, const DualClass& b);
DualClass operator-(const DualClass& a, const DualClass& b);
DualClass operator*(const Rat& s, const DualClass& a);
/// Degree of a codimension-n class.
Rat degree(const DualClass& top);
/// Product D_1 ... D_j as a class.
DualClass product(const Fan& fan, const std::vector<TDivisor>& divisors);

/// Orbit-closure generator [V(sigma)] as a class.
CycleClass orbit_class(const Fan& fan, const IndexSet& cone);
CycleClass point_class(const Fan& fan);
CycleClass fundamental_class(const Fan& fan);
/// Basis element i of N_dim.
CycleClass cycle_basis_element(const Fan& fan, std::size_t dim, std::size_t i);
CycleClass operator+(const CycleClass& a, const CycleClass& b);
CycleClass operator-(const CycleClass& a, const CycleClass& b);
CycleClass operator*(const Rat& s, const CycleClass& a);

/// Cap product with [X].
CycleClass psi(const DualClass& a);
DualClass psi_inverse(const CycleClass& z);
/// alpha cap z.
CycleClass cap(const DualClass& a, const CycleClass& z);
/// Degree of alpha cap z, alpha in N^k and z in N_k.
Rat pairing(const DualClass& a, const CycleClass& z);
/// Rows: N^k basis, columns: N_k basis.
RatMat pairing_matrix(const Fan& fan, std::size_t k);

/// Cone membership outcome: weights over the generator list, or a functional
/// on basis coordinates that is >= 0 on every generator and < 0 on the class.
struct InCone {
  RatVec weights;
};
struct NotInCone {
  RatVec functional;
};
using ConeMembership = std::variant<InCone, NotInCone>;

/// Generators of Psef_k: the classes [V(sigma)], sigma with n - k rays.
std::vector<CycleClass> psef_generators(const Fan& fan, std::size_t dim);
ConeMembership psef_member(const CycleClass& z);
/// Re-checks a membership answer from its witness or certificate alone.
bool verify_membership(const CycleClass& z, const ConeMembership& m);
/// Nonnegative pairing with every invariant cycle of complementary dimension.
bool nef_member(const DualClass& a);

/// Extreme rays of the nef cone in N^1, as divisor classes.
std::vector<DualClass> nef_cone_generators(const Fan& fan);

/// Pushforward along a refinement fine -> coarse.
CycleClass pushforward_cycles(const Fan& coarse, const CycleClass& z);
/// Pullback of a class on the target fan along x -> m x, source cones mapping
/// into target cones. Ring homomorphism built from divisor pullbacks.
DualClass pullback_dual(const DualClass& a, const IntMat& m, const Fan& source);

/// Minimal c >= 0 with d + c h nef, for h ample.
Rat nef_shift(const TDivisor& d, const TDivisor& h);
/// all_ones when ample, otherwise an ample divisor from the wall LP; nullopt
/// when the fan carries no ample divisor (not projective).
std::optional<TDivisor> ample_reference(const Fan& fan);

/// (D_1 ... D_n) by multiplying in the ring.
Rat intersection_number_ring(const std::vector<TDivisor>& divisors);
/// (D_1 ... D_n) by nef decomposition and mixed volumes.
Rat intersection_number_nef(const std::vector<TDivisor>& divisors);
/// Ring route, cross-checked by the nef route when the fan is projective.
/// Throws std::logic_error when the routes disagree.
Rat intersection_number(const std::vector<TDivisor>& divisors);

}  // namespace degree_lab
