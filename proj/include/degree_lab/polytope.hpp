#pragma once

#include <span>
#include <vector>

#include "degree_lab/matrix.hpp"
#include "degree_lab/triangulation.hpp"

namespace degree_lab {

/// <normal, x> >= offset, normal primitive integral.
struct Halfspace {
  IntVec normal;
  Rat offset;
  bool operator==(const Halfspace&) const = default;
};

/// <normal, x> == offset.
struct Equation {
  RatVec normal;
  Rat offset;
};

/// Convex hull of finitely many rational points. Possibly lower-dimensional.
class Polytope {
 public:
  /// Throws std::invalid_argument for an empty point set or mixed dimensions.
  static Polytope hull(std::vector<RatVec> points);
  static Polytope hull(const std::vector<IntVec>& points);
  static Polytope point(RatVec p);
  static Polytope origin(std::size_t n);

  std::size_t ambient_dim() const { return n_; }
  /// Affine dimension, -1 never occurs (empty polytopes are not representable).
  int dim() const { return dim_; }
  /// Extreme points, lexicographically sorted.
  const std::vector<RatVec>& vertices() const { return vertices_; }
  /// Irredundant facets relative to the affine hull.
  const std::vector<Halfspace>& facets() const { return facets_; }
  /// Affine hull equations (empty for full-dimensional polytopes).
  const std::vector<Equation>& equations() const { return equations_; }

  bool contains(const RatVec& x) const;
  Polytope scaled(const Rat& s) const;
  Polytope translated(const RatVec& t) const;

  /// Full-dimensional simplices of a placing triangulation of the vertices;
  /// empty when the polytope is lower-dimensional.
  std::vector<std::vector<RatVec>> triangulation() const;

  bool operator==(const Polytope& other) const { return n_ == other.n_ && vertices_ == other.vertices_; }

 private:
  std::size_t n_ = 0;
  int dim_ = 0;
  std::vector<RatVec> vertices_;
  std::vector<Halfspace> facets_;
  std::vector<Equation> equations_;
  Rat volume_ = 0;

  friend Rat volume(const Polytope& p);
};

Polytope minkowski_sum(const Polytope& p, const Polytope& q);

/// Image of p under x -> m x.
Polytope linear_image(const RatMat& m, const Polytope& p);
Polytope linear_image(const IntMat& m, const Polytope& p);

/// n-dimensional volume; 0 for lower-dimensional polytopes.
Rat volume(const Polytope& p);

/// Volume as the sum of the placing-triangulation simplex volumes; an
/// independent route to volume().
Rat triangulation_volume(const Polytope& p);

/// Normalized mixed volume, MV(P, ..., P) = n! vol(P). Identical bodies are
/// grouped and the inclusion-exclusion terms are evaluated on the OpenMP team.
Rat mixed_volume(std::span<const Polytope> bodies);
/// The plain 2^n - 1 term inclusion-exclusion on one thread.
Rat mixed_volume_serial(std::span<const Polytope> bodies);

/// Integer points of p by bounding-box scan. Throws std::length_error when the
/// box exceeds `max_box` points.
Int lattice_point_count(const Polytope& p, std::size_t max_box = 20'000'000);

}  // namespace degree_lab
