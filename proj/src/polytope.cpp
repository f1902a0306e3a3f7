#include "degree_lab/polytope.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "degree_lab/parallel.hpp"

namespace degree_lab {

namespace {

Int floor_of(const Rat& r) {
  Int out;
  mpz_fdiv_q(out.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return out;
}

Int ceil_of(const Rat& r) {
  Int out;
  mpz_cdiv_q(out.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return out;
}

RatVec homogenize(const RatVec& p) {
  RatVec q = p;
  q.emplace_back(1);
  return q;
}

// |det(p_1 - c, ..., p_n - c)|
Rat simplex_det(const std::vector<const RatVec*>& pts, const RatVec& apex) {
  const std::size_t n = apex.size();
  RatMat m(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) m(i, j) = (*pts[j])[i] - apex[i];
  return abs(determinant(m));
}

}  // namespace

Polytope Polytope::hull(std::vector<RatVec> points) {
  if (points.empty()) throw std::invalid_argument("Polytope::hull: empty point set");
  const std::size_t n = points.front().size();
  for (const auto& p : points)
    if (p.size() != n) throw std::invalid_argument("Polytope::hull: dimension mismatch");
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  std::vector<RatVec> lifted;
  lifted.reserve(points.size());
  for (const auto& p : points) lifted.push_back(homogenize(p));
  PlacingTriangulation tri(lifted);

  Polytope out;
  out.n_ = n;
  const std::size_t r = tri.rank();
  out.dim_ = static_cast<int>(r) - 1;

  for (auto& e : nullspace(RatMat::from_rows(lifted))) {
    Rat off = -e.back();
    e.pop_back();
    out.equations_.push_back({std::move(e), std::move(off)});
  }

  // Facet functionals on the homogenized space, deduplicated by primitive form.
  std::set<IntVec> functionals;
  if (r >= 2) {
    const auto& piv = tri.pivot_rows();
    const RatMat& binv = tri.basis_inverse();
    for (const auto& [facet, apex] : tri.boundary()) {
      std::vector<RatVec> rows;
      for (int idx : facet) rows.push_back(tri.coordinates(lifted[static_cast<std::size_t>(idx)]));
      auto ns = nullspace(RatMat::from_rows(rows));
      if (ns.size() != 1) throw std::logic_error("Polytope::hull: degenerate boundary simplex");
      const RatVec& phi_c = ns.front();
      RatVec phi(n + 1, Rat(0));
      for (std::size_t j = 0; j < r; ++j) {
        Rat s = 0;
        for (std::size_t i = 0; i < r; ++i) s += phi_c[i] * binv(i, j);
        phi[piv[j]] = s;
      }
      if (dot(phi, lifted[static_cast<std::size_t>(apex)]) < 0)
        for (auto& x : phi) x = -x;
      functionals.insert(primitive(phi));
    }
  }

  for (const auto& f : functionals) {
    IntVec normal(f.begin(), f.end() - 1);
    IntVec u = primitive(normal);
    std::size_t k = 0;
    while (normal[k] == 0) ++k;
    Rat s = Rat(u[k]) / Rat(normal[k]);
    out.facets_.push_back({std::move(u), -s * Rat(f.back())});
  }
  std::sort(out.facets_.begin(), out.facets_.end(),
            [](const Halfspace& a, const Halfspace& b) { return a.normal != b.normal ? a.normal < b.normal : a.offset < b.offset; });

  // A point is extreme when its active constraints pin it down.
  for (std::size_t i = 0; i < points.size(); ++i) {
    std::vector<RatVec> active;
    for (const auto& e : out.equations_) {
      RatVec row = e.normal;
      row.push_back(-e.offset);
      active.push_back(std::move(row));
    }
    for (const auto& f : out.facets_) {
      if (dot(to_rat(f.normal), points[i]) == f.offset) {
        RatVec row = to_rat(f.normal);
        row.push_back(-f.offset);
        active.push_back(std::move(row));
      }
    }
    if (!active.empty() && rank(RatMat::from_rows(active)) == n) out.vertices_.push_back(points[i]);
  }
  if (n == 0) out.vertices_ = points;

  if (r == n + 1 && n > 0) {
    // Cone the boundary from an interior point of the first simplex.
    const auto& first = tri.simplices().front();
    RatVec c(n, Rat(0));
    for (int idx : first)
      for (std::size_t j = 0; j < n; ++j) c[j] += points[static_cast<std::size_t>(idx)][j];
    for (auto& x : c) x /= static_cast<long>(first.size());
    Rat total = 0;
    std::vector<const RatVec*> pts(n);
    for (const auto& [facet, apex] : tri.boundary()) {
      for (std::size_t j = 0; j < n; ++j) pts[j] = &points[static_cast<std::size_t>(facet[j])];
      total += simplex_det(pts, c);
    }
    out.volume_ = total / Rat(factorial(static_cast<unsigned>(n)));
  }
  return out;
}

Polytope Polytope::hull(const std::vector<IntVec>& points) {
  std::vector<RatVec> pts;
  pts.reserve(points.size());
  for (const auto& p : points) pts.push_back(to_rat(p));
  return hull(std::move(pts));
}

Polytope Polytope::point(RatVec p) { return hull(std::vector<RatVec>{std::move(p)}); }

Polytope Polytope::origin(std::size_t n) { return point(RatVec(n, Rat(0))); }

bool Polytope::contains(const RatVec& x) const {
  if (x.size() != n_) throw std::invalid_argument("Polytope::contains: dimension mismatch");
  for (const auto& e : equations_)
    if (dot(e.normal, x) != e.offset) return false;
  for (const auto& f : facets_)
    if (dot(x, f.normal) < f.offset) return false;
  return true;
}

Polytope Polytope::scaled(const Rat& s) const {
  std::vector<RatVec> pts = vertices_;
  for (auto& p : pts)
    for (auto& x : p) x *= s;
  return hull(std::move(pts));
}

Polytope Polytope::translated(const RatVec& t) const {
  if (t.size() != n_) throw std::invalid_argument("Polytope::translated: dimension mismatch");
  std::vector<RatVec> pts = vertices_;
  for (auto& p : pts)
    for (std::size_t i = 0; i < n_; ++i) p[i] += t[i];
  return hull(std::move(pts));
}

std::vector<std::vector<RatVec>> Polytope::triangulation() const {
  if (dim_ != static_cast<int>(n_)) return {};
  std::vector<RatVec> lifted;
  for (const auto& v : vertices_) lifted.push_back(homogenize(v));
  PlacingTriangulation tri(lifted);
  std::vector<std::vector<RatVec>> out;
  for (const auto& s : tri.simplices()) {
    std::vector<RatVec> simplex;
    for (int idx : s) simplex.push_back(vertices_[static_cast<std::size_t>(idx)]);
    out.push_back(std::move(simplex));
  }
  return out;
}

Polytope minkowski_sum(const Polytope& p, const Polytope& q) {
  if (p.ambient_dim() != q.ambient_dim()) throw std::invalid_argument("minkowski_sum: dimension mismatch");
  std::vector<RatVec> pts;
  pts.reserve(p.vertices().size() * q.vertices().size());
  for (const auto& a : p.vertices())
    for (const auto& b : q.vertices()) {
      RatVec s = a;
      for (std::size_t i = 0; i < s.size(); ++i) s[i] += b[i];
      pts.push_back(std::move(s));
    }
  return Polytope::hull(std::move(pts));
}

Polytope linear_image(const RatMat& m, const Polytope& p) {
  if (m.cols() != p.ambient_dim()) throw std::invalid_argument("linear_image: dimension mismatch");
  std::vector<RatVec> pts;
  for (const auto& v : p.vertices()) pts.push_back(m * v);
  return Polytope::hull(std::move(pts));
}

Polytope linear_image(const IntMat& m, const Polytope& p) { return linear_image(to_rat(m), p); }

Rat volume(const Polytope& p) { return p.volume_; }

Rat triangulation_volume(const Polytope& p) {
  Rat total = 0;
  const std::size_t n = p.ambient_dim();
  if (n == 0) return 0;
  std::vector<const RatVec*> pts(n);
  for (const auto& s : p.triangulation()) {
    for (std::size_t j = 0; j < n; ++j) pts[j] = &s[j + 1];
    total += simplex_det(pts, s[0]);
  }
  return total / Rat(factorial(static_cast<unsigned>(n)));
}

namespace {

void check_bodies(std::span<const Polytope> bodies) {
  const std::size_t n = bodies.size();
  if (n == 0) throw std::invalid_argument("mixed_volume: no bodies");
  for (const auto& b : bodies)
    if (b.ambient_dim() != n) throw std::invalid_argument("mixed_volume: need n bodies in dimension n");
}

Polytope weighted_sum(const std::vector<const Polytope*>& bodies, const std::vector<unsigned>& weights) {
  const std::size_t n = bodies.front()->ambient_dim();
  Polytope acc = Polytope::origin(n);
  for (std::size_t i = 0; i < bodies.size(); ++i) {
    if (weights[i] == 0) continue;
    acc = minkowski_sum(acc, weights[i] == 1 ? *bodies[i] : bodies[i]->scaled(Rat(weights[i])));
  }
  return acc;
}

}  // namespace

Rat mixed_volume(std::span<const Polytope> bodies) {
  check_bodies(bodies);
  const std::size_t n = bodies.size();
  std::vector<const Polytope*> distinct;
  std::vector<unsigned> mult;
  for (const auto& b : bodies) {
    auto it = std::find_if(distinct.begin(), distinct.end(), [&](const Polytope* d) { return *d == b; });
    if (it == distinct.end()) {
      distinct.push_back(&b);
      mult.push_back(1);
    } else {
      ++mult[static_cast<std::size_t>(it - distinct.begin())];
    }
  }

  // Terms are weight vectors 0 <= s_i <= r_i, enumerated in a fixed order.
  std::vector<std::vector<unsigned>> terms;
  std::vector<unsigned> s(distinct.size(), 0);
  while (true) {
    std::size_t i = 0;
    while (i < s.size() && s[i] == mult[i]) s[i++] = 0;
    if (i == s.size()) break;
    ++s[i];
    terms.push_back(s);
  }

  std::vector<Rat> vols(terms.size());
  parallel_for(terms.size(), [&](std::size_t t) { vols[t] = volume(weighted_sum(distinct, terms[t])); });

  Rat total = 0;
  for (std::size_t t = 0; t < terms.size(); ++t) {
    if (vols[t] == 0) continue;
    unsigned size = 0;
    Int coeff = 1;
    for (std::size_t i = 0; i < distinct.size(); ++i) {
      size += terms[t][i];
      coeff *= binomial(mult[i], terms[t][i]);
    }
    Rat term = Rat(coeff) * vols[t];
    if ((n - size) % 2 == 1) total -= term;
    else total += term;
  }
  return total;
}

Rat mixed_volume_serial(std::span<const Polytope> bodies) {
  check_bodies(bodies);
  const std::size_t n = bodies.size();
  Rat total = 0;
  for (unsigned long mask = 1; mask < (1UL << n); ++mask) {
    Polytope acc = Polytope::origin(n);
    std::size_t size = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1UL << i)) {
        acc = minkowski_sum(acc, bodies[i]);
        ++size;
      }
    }
    if ((n - size) % 2 == 1) total -= volume(acc);
    else total += volume(acc);
  }
  return total;
}

Int lattice_point_count(const Polytope& p, std::size_t max_box) {
  const std::size_t n = p.ambient_dim();
  if (n == 0) return 1;
  std::vector<Int> lo(n), hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rat mn = p.vertices().front()[i], mx = mn;
    for (const auto& v : p.vertices()) {
      mn = std::min(mn, v[i]);
      mx = std::max(mx, v[i]);
    }
    lo[i] = ceil_of(mn);
    hi[i] = floor_of(mx);
    if (hi[i] < lo[i]) return 0;
  }
  Int box = 1;
  for (std::size_t i = 0; i < n; ++i) box *= hi[i] - lo[i] + 1;
  if (box > Int(static_cast<unsigned long>(max_box))) throw std::length_error("lattice_point_count: bounding box too large");

  Int count = 0;
  std::vector<Int> cur = lo;
  RatVec x(n);
  while (true) {
    for (std::size_t i = 0; i < n; ++i) x[i] = cur[i];
    if (p.contains(x)) ++count;
    std::size_t i = 0;
    while (i < n && cur[i] == hi[i]) {
      cur[i] = lo[i];
      ++i;
    }
    if (i == n) break;
    ++cur[i];
  }
  return count;
}

}  // namespace degree_lab
