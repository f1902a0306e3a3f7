#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "degree_lab/matrix.hpp"
#include "degree_lab/polytope.hpp"
#include "degree_lab/triangulation.hpp"

namespace degree_lab {

/// Raw fan input: rays and maximal cones as ray-index lists.
struct FanData {
  std::size_t rank = 0;
  std::vector<IntVec> rays;
  std::vector<IndexSet> max_cones;
};

enum class FanIssueKind {
  DimensionMismatch,
  ZeroRay,
  NonPrimitiveRay,
  DuplicateRay,
  BadRayIndex,
  WrongConeSize,
  DuplicateCone,
  NonSimplicialCone,
  UnusedRay,
  NotComplete,
};

std::string_view to_string(FanIssueKind kind);

struct FanIssue {
  FanIssueKind kind;
  std::string message;
  IndexSet cone;  // offending cone, when there is one
  int ray = -1;   // offending ray, when there is one
};

class FanError : public std::runtime_error {
 public:
  explicit FanError(std::vector<FanIssue> issues);
  const std::vector<FanIssue>& issues() const { return issues_; }

 private:
  std::vector<FanIssue> issues_;
};

/// Complete simplicial fan. Immutable; copies share one representation.
class Fan {
 public:
  std::size_t rank() const;
  const std::vector<IntVec>& rays() const;
  /// Sorted ray-index lists, in lexicographic order.
  const std::vector<IndexSet>& max_cones() const;
  /// All cones with k rays (0 <= k <= rank), lexicographic.
  const std::vector<IndexSet>& cones(std::size_t k) const;
  bool is_cone(const IndexSet& cone) const;
  /// Position of a cone in cones(cone.size()), if it is one.
  std::optional<std::size_t> cone_position(const IndexSet& cone) const;
  std::optional<int> ray_index(const IntVec& ray) const;

  /// Index of the lattice generated by the cone's rays in its saturation.
  Int multiplicity(const IndexSet& cone) const;

  /// Dual basis of a maximal cone: rows w_i with <w_i, u_j> = delta_ij.
  const RatMat& dual_basis(std::size_t max_cone) const;

  /// A maximal cone containing v and the coordinates of v in its rays.
  std::pair<std::size_t, RatVec> locate(const RatVec& v) const;
  /// Smallest cone containing v (rays with positive coordinate).
  IndexSet containing_cone(const RatVec& v) const;

  bool operator==(const Fan& other) const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
  friend std::variant<Fan, std::vector<FanIssue>> validate_fan(const FanData& data);
};

using FanCheck = std::variant<Fan, std::vector<FanIssue>>;

/// Checks primitivity, distinctness, simpliciality, that every facet of a
/// maximal cone is shared by exactly one other maximal cone lying on the other
/// side, and that a generic direction lies in exactly one maximal cone.
FanCheck validate_fan(const FanData& data);
/// validate_fan, throwing FanError on issues.
Fan make_fan(const FanData& data);
FanData to_data(const Fan& fan);

Fan projective_space(std::size_t n);
Fan product_fan(const Fan& a, const Fan& b);
Fan product_of_projective_spaces(const std::vector<std::size_t>& dims);
Fan hirzebruch(int a);
/// Stellar subdivision at the primitive sum of the cone's rays.
Fan blowup(const Fan& fan, const IndexSet& cone);

/// Torus-invariant Q-divisor sum a_rho D_rho.
struct TDivisor {
  Fan fan;
  RatVec coeffs;

  TDivisor(Fan f, RatVec a);
  static TDivisor zero(const Fan& f);
  static TDivisor ray(const Fan& f, std::size_t index);
  /// a_rho = 1 for every ray.
  static TDivisor all_ones(const Fan& f);

  bool operator==(const TDivisor& other) const { return fan == other.fan && coeffs == other.coeffs; }
};

TDivisor operator+(const TDivisor& a, const TDivisor& b);
TDivisor operator-(const TDivisor& a, const TDivisor& b);
TDivisor operator*(const Rat& s, const TDivisor& d);

/// m_sigma with <m_sigma, u_rho> = -a_rho on the rays of the maximal cone.
RatVec local_functional(const TDivisor& d, std::size_t max_cone);
bool is_nef(const TDivisor& d);
bool is_ample(const TDivisor& d);

/// {m : <m, u_rho> >= -a_rho}. Throws std::domain_error when empty.
Polytope divisor_polytope(const TDivisor& d);

/// Support-function value: sum c_rho a_rho where v = sum c_rho u_rho in a
/// maximal cone containing v. Linear on each cone.
Rat support_value(const TDivisor& d, const RatVec& v);

/// True when a maps every maximal cone of source into some cone of target.
bool maps_cones_into(const Fan& source, const IntMat& a, const Fan& target);

class RefinementError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Complete simplicial fan refining source whose cones a maps into cones of
/// target. Pieces sigma intersect a^{-1}(tau) are triangulated by placing with
/// rays in lexicographic order.
Fan common_refinement(const Fan& source, const IntMat& a, const Fan& target);
/// Square nonsingular a, source = target. Throws RefinementError when det a = 0.
Fan common_refinement(const Fan& fan, const IntMat& a);
/// True when every cone of fine lies in a cone of coarse.
bool refines(const Fan& fine, const Fan& coarse);

/// Pullback along x -> a x of a divisor on target to source (compatible).
TDivisor pullback_divisor(const TDivisor& d, const IntMat& a, const Fan& source);

/// Surjective toric morphism given by a rank-l projection l x n.
struct Fibration {
  Fan source;
  Fan target;
  IntMat projection;

  Fibration(Fan src, Fan tgt, IntMat proj);
  std::size_t relative_dimension() const { return source.rank() - target.rank(); }
};

}  // namespace degree_lab
