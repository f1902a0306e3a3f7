#pragma once

#include <map>
#include <vector>

#include "degree_lab/matrix.hpp"

namespace degree_lab {

using IndexSet = std::vector<int>;

/// Placing triangulation of a vector configuration, inserted in the given
/// order. Works for affine point sets through homogenization (append a 1) and
/// for the extreme rays of a pointed cone directly. Vectors that do not raise
/// the rank and see no boundary facet are left out.
///
/// The restriction of a placing triangulation to a face is the placing
/// triangulation of that face under the induced order, which is what makes
/// independently triangulated cones of a polyhedral fan fit together.
class PlacingTriangulation {
 public:
  explicit PlacingTriangulation(const std::vector<RatVec>& vectors);

  std::size_t rank() const { return rank_; }
  /// Maximal simplices, each a sorted list of `rank()` vector indices.
  const std::vector<IndexSet>& simplices() const { return simplices_; }
  /// Boundary facets (sorted, `rank() - 1` indices) mapped to the opposite
  /// vertex of the unique simplex containing them.
  const std::map<IndexSet, int>& boundary() const { return boundary_; }

  /// Coordinates of a vector of the span in the internal basis.
  RatVec coordinates(const RatVec& v) const;
  /// Pivot rows used for coordinates and the inverse of the basis restricted to
  /// them; a functional phi on coordinates lifts to phi^T * basis_inverse on
  /// these rows.
  const std::vector<std::size_t>& pivot_rows() const { return pivot_rows_; }
  const RatMat& basis_inverse() const { return basis_inv_; }

 private:
  void insert(int index);
  void rebuild_basis();
  int orientation(const IndexSet& facet, int extra) const;

  std::vector<RatVec> vectors_;
  std::size_t dim_;
  std::size_t rank_ = 0;
  std::vector<int> basis_;
  std::vector<std::size_t> pivot_rows_;
  RatMat basis_inv_;
  std::vector<RatVec> coords_;
  std::vector<IndexSet> simplices_;
  std::map<IndexSet, int> boundary_;
};

}  // namespace degree_lab
