#include "degree_lab/triangulation.hpp"

#include <algorithm>
#include <stdexcept>

namespace degree_lab {

namespace {

int sign_of(const Rat& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

IndexSet with(IndexSet s, int extra) {
  s.insert(std::upper_bound(s.begin(), s.end(), extra), extra);
  return s;
}

IndexSet without(const IndexSet& s, int drop) {
  IndexSet out;
  out.reserve(s.size() - 1);
  for (int x : s)
    if (x != drop) out.push_back(x);
  return out;
}

}  // namespace

PlacingTriangulation::PlacingTriangulation(const std::vector<RatVec>& vectors)
    : vectors_(vectors), dim_(vectors.empty() ? 0 : vectors.front().size()) {
  coords_.resize(vectors.size());
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != dim_) throw std::invalid_argument("PlacingTriangulation: mixed dimensions");
    insert(static_cast<int>(i));
  }
}

void PlacingTriangulation::rebuild_basis() {
  std::vector<RatVec> cols;
  for (int b : basis_) cols.push_back(vectors_[static_cast<std::size_t>(b)]);
  RatMat bt = RatMat::from_rows(cols);  // rank_ x dim_
  RatMat work = bt;
  pivot_rows_ = rref(work);
  RatMat square(rank_, rank_);
  for (std::size_t i = 0; i < rank_; ++i)
    for (std::size_t j = 0; j < rank_; ++j) square(i, j) = bt(j, pivot_rows_[i]);
  basis_inv_ = inverse(square);
}

RatVec PlacingTriangulation::coordinates(const RatVec& v) const {
  RatVec restricted(rank_);
  for (std::size_t i = 0; i < rank_; ++i) restricted[i] = v[pivot_rows_[i]];
  return basis_inv_ * restricted;
}

int PlacingTriangulation::orientation(const IndexSet& facet, int extra) const {
  RatMat m(rank_, rank_);
  for (std::size_t c = 0; c < facet.size(); ++c) {
    const RatVec& x = coords_[static_cast<std::size_t>(facet[c])];
    for (std::size_t r = 0; r < rank_; ++r) m(r, c) = x[r];
  }
  const RatVec& x = coords_[static_cast<std::size_t>(extra)];
  for (std::size_t r = 0; r < rank_; ++r) m(r, rank_ - 1) = x[r];
  return sign_of(determinant(m));
}

void PlacingTriangulation::insert(int index) {
  const RatVec& v = vectors_[static_cast<std::size_t>(index)];
  bool in_span = false;
  RatVec c;
  if (rank_ > 0) {
    c = coordinates(v);
    RatVec back(dim_, Rat(0));
    for (std::size_t k = 0; k < rank_; ++k) {
      const RatVec& b = vectors_[static_cast<std::size_t>(basis_[k])];
      for (std::size_t i = 0; i < dim_; ++i) back[i] += c[k] * b[i];
    }
    in_span = back == v;
  } else {
    in_span = std::all_of(v.begin(), v.end(), [](const Rat& x) { return x == 0; });
    if (in_span) return;  // zero vector carries no information
  }

  if (!in_span) {
    basis_.push_back(index);
    ++rank_;
    rebuild_basis();
    std::map<IndexSet, int> boundary;
    if (simplices_.empty()) {
      simplices_.push_back({index});
      boundary[{}] = index;
    } else {
      for (const auto& s : simplices_) boundary[s] = index;
      for (const auto& [facet, apex] : boundary_) boundary[with(facet, index)] = apex;
      for (auto& s : simplices_) s = with(s, index);
    }
    boundary_ = std::move(boundary);
    for (std::size_t i = 0; i < vectors_.size(); ++i) {
      if (i <= static_cast<std::size_t>(index)) {
        coords_[i] = coordinates(vectors_[i]);
      }
    }
    return;
  }

  coords_[static_cast<std::size_t>(index)] = std::move(c);

  std::vector<IndexSet> visible;
  for (const auto& [facet, apex] : boundary_) {
    if (orientation(facet, index) * orientation(facet, apex) < 0) visible.push_back(facet);
  }
  if (visible.empty()) return;

  std::map<IndexSet, int> fresh;
  for (const auto& facet : visible) {
    boundary_.erase(facet);
    IndexSet simplex = with(facet, index);
    for (int x : facet) {
      IndexSet g = without(simplex, x);
      auto it = fresh.find(g);
      if (it != fresh.end()) fresh.erase(it);
      else fresh.emplace(std::move(g), x);
    }
    simplices_.push_back(std::move(simplex));
  }
  for (auto& [g, apex] : fresh) boundary_.emplace(g, apex);
}

}  // namespace degree_lab
