#pragma once

#include <vector>

#include "degree_lab/chow.hpp"

namespace degree_lab {

/// Dominant monomial self-map x -> x^A of the torus. Composition is the matrix
/// product: f_A o f_B = f_{AB}. A acts on one-parameter subgroups (the fan's
/// lattice) and its transpose on characters.
class MonomialMap {
 public:
  /// Throws std::invalid_argument when A is not square or det A = 0.
  explicit MonomialMap(IntMat a);

  const IntMat& matrix() const { return a_; }
  std::size_t dim() const { return a_.rows(); }
  MonomialMap power(unsigned p) const;
  static MonomialMap identity(std::size_t n);

  bool operator==(const MonomialMap& other) const { return a_ == other.a_; }

 private:
  IntMat a_;
};

MonomialMap compose(const MonomialMap& f, const MonomialMap& g);

/// Toric resolution of the graph: the refinement of the base fan on which both
/// the identity and A are regular.
struct GraphModel {
  Fan base;
  IntMat matrix;
  Fan refinement;
};

/// Cached per (fan, matrix).
GraphModel graph_model(const MonomialMap& f, const Fan& x);

/// Polytope of a nef divisor with full-dimensional polytope; throws
/// std::domain_error otherwise.
Polytope polarization_polytope(const TDivisor& omega);
/// Primitive multiple of the ample reference (all_ones when that is ample),
/// normalized to vanish on the first maximal cone. H on P^n, O(1,1) on P1xP1.
TDivisor default_polarization(const Fan& x);
/// (omega^n).
Rat top_degree(const TDivisor& omega);

/// (pi_1^* omega^{n-k} . pi_2^* omega^k) as a mixed volume of P and A^T P.
Rat degree_k(const MonomialMap& f, const Fan& x, const TDivisor& omega, std::size_t k);
/// Same number from pullback divisors on the graph model, multiplied in its ring.
Rat degree_k_graph(const MonomialMap& f, const Fan& x, const TDivisor& omega, std::size_t k);
/// deg_n / (omega^n); equals |det A|.
Rat topological_degree(const MonomialMap& f, const Fan& x, const TDivisor& omega);

/// D with pi A = D pi, the induced map on the base. Throws
/// std::invalid_argument when no integral D exists.
MonomialMap base_map(const MonomialMap& f, const Fibration& q);
/// A restricted to ker(pi), in a basis of that kernel (rational in general).
RatMat fiber_block(const MonomialMap& f, const Fibration& q);

/// reldeg_k: mixed volume of P_X (e-k times), pi^T P_Y (l times), A^T P_X
/// (k times). Zero for k > e.
Rat relative_degree_k(const MonomialMap& f, const Fibration& q, const TDivisor& omega_x, const TDivisor& omega_y,
                      std::size_t k);
/// a_{k,j}: pi^T P_Y (l-j), P_X (e+j-k), A^T P_X (k); zero outside
/// max(0, k-e) <= j <= l.
Rat mixed_degree(const MonomialMap& f, const Fibration& q, const TDivisor& omega_x, const TDivisor& omega_y,
                 std::size_t k, std::size_t j);

/// Matrix of f^{.,k}: N^k -> N_{n-k}; column i is the image of the i-th N^k
/// basis element, pulled back to the graph model, capped with its fundamental
/// class and pushed to X. Empty for k > n.
RatMat pullback_operator(const MonomialMap& f, const Fan& x, std::size_t k);

/// Cone-decomposition norms for operators N^k -> N_{n-k}. Source unit ball:
/// the hull of +-g/(g . omega^{n-k}) over products g of k extremal nef divisors.
/// Target: ||z|| = min (omega^{n-k} . (z+ + z-)) over z = z+ - z- with z+-
/// nonnegative combinations of invariant cycles.
struct NormSpec {
  Fan fan;
  TDivisor omega;
  std::size_t k;
};

/// Exact target norm of a dimension-(n-k) class (LP).
Rat cycle_norm(const NormSpec& spec, const CycleClass& z);
/// Exact operator norm. Throws std::domain_error on degenerate norm data.
Rat operator_norm(const RatMat& m, const NormSpec& spec);

}  // namespace degree_lab
