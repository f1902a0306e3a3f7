#include "degree_lab/fan.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "degree_lab/parallel.hpp"

namespace degree_lab {

struct Fan::Impl {
  std::size_t n = 0;
  std::vector<IntVec> rays;
  std::vector<IndexSet> max_cones;
  std::vector<std::vector<IndexSet>> cones;
  std::vector<std::map<IndexSet, std::size_t>> positions;
  std::map<IntVec, int> ray_pos;
  std::vector<RatMat> duals;
};

namespace {

std::string cone_text(const IndexSet& c) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
  os << "}";
  return os.str();
}

std::string vec_text(const IntVec& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].get_str();
  os << ")";
  return os.str();
}

RatMat ray_columns(const std::vector<IntVec>& rays, const IndexSet& cone, std::size_t n) {
  RatMat m(n, cone.size());
  for (std::size_t j = 0; j < cone.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) m(i, j) = rays[static_cast<std::size_t>(cone[j])][i];
  return m;
}

bool all_nonneg(const RatVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rat& x) { return x >= 0; });
}

}  // namespace

std::string_view to_string(FanIssueKind kind) {
  switch (kind) {
    case FanIssueKind::DimensionMismatch: return "DimensionMismatch";
    case FanIssueKind::ZeroRay: return "ZeroRay";
    case FanIssueKind::NonPrimitiveRay: return "NonPrimitiveRay";
    case FanIssueKind::DuplicateRay: return "DuplicateRay";
    case FanIssueKind::BadRayIndex: return "BadRayIndex";
    case FanIssueKind::WrongConeSize: return "WrongConeSize";
    case FanIssueKind::DuplicateCone: return "DuplicateCone";
    case FanIssueKind::NonSimplicialCone: return "NonSimplicialCone";
    case FanIssueKind::UnusedRay: return "UnusedRay";
    case FanIssueKind::NotComplete: return "NotComplete";
  }
  return "Unknown";
}

namespace {

std::string join_issues(const std::vector<FanIssue>& issues) {
  std::string out = "invalid fan:";
  for (const auto& i : issues) out += " [" + std::string(to_string(i.kind)) + "] " + i.message + ";";
  return out;
}

}  // namespace

FanError::FanError(std::vector<FanIssue> issues) : std::runtime_error(join_issues(issues)), issues_(std::move(issues)) {}

std::size_t Fan::rank() const { return impl_->n; }
const std::vector<IntVec>& Fan::rays() const { return impl_->rays; }
const std::vector<IndexSet>& Fan::max_cones() const { return impl_->max_cones; }

const std::vector<IndexSet>& Fan::cones(std::size_t k) const {
  if (k > impl_->n) throw std::out_of_range("Fan::cones: dimension out of range");
  return impl_->cones[k];
}

bool Fan::is_cone(const IndexSet& cone) const { return cone_position(cone).has_value(); }

std::optional<std::size_t> Fan::cone_position(const IndexSet& cone) const {
  if (cone.size() > impl_->n) return std::nullopt;
  const auto& pos = impl_->positions[cone.size()];
  auto it = pos.find(cone);
  if (it == pos.end()) return std::nullopt;
  return it->second;
}

std::optional<int> Fan::ray_index(const IntVec& ray) const {
  auto it = impl_->ray_pos.find(ray);
  if (it == impl_->ray_pos.end()) return std::nullopt;
  return it->second;
}

Int Fan::multiplicity(const IndexSet& cone) const {
  const std::size_t k = cone.size();
  if (k == 0) return 1;
  Int g = 0;
  for (const auto& rows : k_subsets(static_cast<int>(impl_->n), static_cast<int>(k))) {
    IntMat m(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        m(i, j) = impl_->rays[static_cast<std::size_t>(cone[j])][static_cast<std::size_t>(rows[i])];
    Int d = determinant(m);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
  }
  return g;
}

const RatMat& Fan::dual_basis(std::size_t max_cone) const { return impl_->duals.at(max_cone); }

std::pair<std::size_t, RatVec> Fan::locate(const RatVec& v) const {
  if (v.size() != impl_->n) throw std::invalid_argument("Fan::locate: dimension mismatch");
  for (std::size_t s = 0; s < impl_->max_cones.size(); ++s) {
    RatVec c = impl_->duals[s] * v;
    if (all_nonneg(c)) return {s, std::move(c)};
  }
  throw std::logic_error("Fan::locate: vector outside the support of a complete fan");
}

IndexSet Fan::containing_cone(const RatVec& v) const {
  auto [s, c] = locate(v);
  IndexSet out;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] > 0) out.push_back(impl_->max_cones[s][i]);
  return out;
}

bool Fan::operator==(const Fan& other) const {
  if (impl_ == other.impl_) return true;
  return impl_->n == other.impl_->n && impl_->rays == other.impl_->rays && impl_->max_cones == other.impl_->max_cones;
}

FanCheck validate_fan(const FanData& data) {
  std::vector<FanIssue> issues;
  const std::size_t n = data.rank;
  if (n == 0) {
    issues.push_back({FanIssueKind::DimensionMismatch, "rank must be positive", {}, -1});
    return issues;
  }
  std::map<IntVec, int> seen;
  for (std::size_t i = 0; i < data.rays.size(); ++i) {
    const auto& r = data.rays[i];
    const int idx = static_cast<int>(i);
    if (r.size() != n) {
      issues.push_back({FanIssueKind::DimensionMismatch, "ray " + std::to_string(i) + " has wrong length", {}, idx});
      continue;
    }
    Int g = gcd_of(r);
    if (g == 0) {
      issues.push_back({FanIssueKind::ZeroRay, "ray " + std::to_string(i) + " is zero", {}, idx});
      continue;
    }
    if (g != 1)
      issues.push_back({FanIssueKind::NonPrimitiveRay, "ray " + std::to_string(i) + " " + vec_text(r) + " is not primitive", {}, idx});
    auto [it, fresh] = seen.emplace(r, idx);
    if (!fresh)
      issues.push_back({FanIssueKind::DuplicateRay, "ray " + std::to_string(i) + " repeats ray " + std::to_string(it->second), {}, idx});
  }
  if (!issues.empty()) return issues;

  std::vector<IndexSet> cones;
  std::set<IndexSet> cone_set;
  std::vector<bool> used(data.rays.size(), false);
  for (const auto& raw : data.max_cones) {
    IndexSet c = raw;
    std::sort(c.begin(), c.end());
    bool ok = true;
    for (int x : c) {
      if (x < 0 || static_cast<std::size_t>(x) >= data.rays.size()) {
        issues.push_back({FanIssueKind::BadRayIndex, "cone " + cone_text(raw) + " uses unknown ray " + std::to_string(x), raw, x});
        ok = false;
      }
    }
    if (!ok) continue;
    if (std::adjacent_find(c.begin(), c.end()) != c.end() || c.size() != n) {
      issues.push_back({FanIssueKind::WrongConeSize,
                        "cone " + cone_text(raw) + " must list " + std::to_string(n) + " distinct rays", raw, -1});
      continue;
    }
    if (!cone_set.insert(c).second) {
      issues.push_back({FanIssueKind::DuplicateCone, "cone " + cone_text(raw) + " is listed twice", raw, -1});
      continue;
    }
    if (determinant(ray_columns(data.rays, c, n)) == 0) {
      issues.push_back({FanIssueKind::NonSimplicialCone,
                        "cone " + cone_text(raw) + " has dependent rays; triangulate it into simplicial cones", raw, -1});
      continue;
    }
    for (int x : c) used[static_cast<std::size_t>(x)] = true;
    cones.push_back(std::move(c));
  }
  if (!issues.empty()) return issues;
  for (std::size_t i = 0; i < used.size(); ++i)
    if (!used[i])
      issues.push_back({FanIssueKind::UnusedRay, "ray " + std::to_string(i) + " lies in no maximal cone", {}, static_cast<int>(i)});
  if (!issues.empty()) return issues;
  std::sort(cones.begin(), cones.end());

  // Facet adjacency: exactly two maximal cones on opposite sides.
  std::map<IndexSet, std::vector<std::pair<std::size_t, int>>> facets;
  for (std::size_t s = 0; s < cones.size(); ++s)
    for (int apex : cones[s]) {
      IndexSet f;
      for (int x : cones[s])
        if (x != apex) f.push_back(x);
      facets[f].emplace_back(s, apex);
    }
  for (const auto& [f, owners] : facets) {
    const IndexSet& first = cones[owners.front().first];
    if (owners.size() != 2) {
      issues.push_back({FanIssueKind::NotComplete,
                        "facet " + cone_text(f) + " of cone " + cone_text(first) + " is shared by " +
                            std::to_string(owners.size()) + " maximal cones (need 2)",
                        first, -1});
      continue;
    }
    std::vector<RatVec> rows;
    for (int x : f) rows.push_back(to_rat(data.rays[static_cast<std::size_t>(x)]));
    RatVec normal = rows.empty() ? RatVec{Rat(1)} : nullspace(RatMat::from_rows(rows)).front();
    Rat s0 = dot(normal, data.rays[static_cast<std::size_t>(owners[0].second)]);
    Rat s1 = dot(normal, data.rays[static_cast<std::size_t>(owners[1].second)]);
    if (s0 * s1 >= 0)
      issues.push_back({FanIssueKind::NotComplete,
                        "cones " + cone_text(first) + " and " + cone_text(cones[owners[1].first]) +
                            " overlap across facet " + cone_text(f),
                        first, -1});
  }
  if (!issues.empty()) return issues;

  std::vector<RatMat> duals;
  for (const auto& c : cones) duals.push_back(inverse(ray_columns(data.rays, c, n)));

  // Covering degree along a direction off every cone wall.
  for (long t = 2;; ++t) {
    RatVec v(n);
    Rat p = 1;
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = p;
      p *= t;
    }
    bool generic = true;
    int covering = 0;
    for (const auto& w : duals) {
      RatVec c = w * v;
      if (std::any_of(c.begin(), c.end(), [](const Rat& x) { return x == 0; })) {
        generic = false;
        break;
      }
      if (all_nonneg(c)) ++covering;
    }
    if (!generic) continue;
    if (covering != 1)
      issues.push_back({FanIssueKind::NotComplete,
                        "a generic direction lies in " + std::to_string(covering) + " maximal cones (need 1)", {}, -1});
    break;
  }
  if (!issues.empty()) return issues;

  auto impl = std::make_shared<Fan::Impl>();
  impl->n = n;
  impl->rays = data.rays;
  impl->max_cones = cones;
  impl->duals = std::move(duals);
  for (std::size_t i = 0; i < data.rays.size(); ++i) impl->ray_pos[data.rays[i]] = static_cast<int>(i);
  std::vector<std::set<IndexSet>> faces(n + 1);
  for (const auto& c : cones) {
    for (unsigned long mask = 0; mask < (1UL << n); ++mask) {
      IndexSet f;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (1UL << i)) f.push_back(c[i]);
      faces[f.size()].insert(std::move(f));
    }
  }
  impl->cones.resize(n + 1);
  impl->positions.resize(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    impl->cones[k].assign(faces[k].begin(), faces[k].end());
    for (std::size_t i = 0; i < impl->cones[k].size(); ++i) impl->positions[k][impl->cones[k][i]] = i;
  }
  Fan fan;
  fan.impl_ = std::move(impl);
  return fan;
}

Fan make_fan(const FanData& data) {
  auto r = validate_fan(data);
  if (auto* issues = std::get_if<std::vector<FanIssue>>(&r)) throw FanError(*issues);
  return std::get<Fan>(std::move(r));
}

FanData to_data(const Fan& fan) { return {fan.rank(), fan.rays(), fan.max_cones()}; }

Fan projective_space(std::size_t n) {
  if (n == 0) throw std::invalid_argument("projective_space: n must be positive");
  FanData d;
  d.rank = n;
  for (std::size_t i = 0; i < n; ++i) {
    IntVec e(n, 0);
    e[i] = 1;
    d.rays.push_back(e);
  }
  d.rays.emplace_back(n, -1);
  d.max_cones = k_subsets(static_cast<int>(n + 1), static_cast<int>(n));
  return make_fan(d);
}

Fan product_fan(const Fan& a, const Fan& b) {
  const std::size_t na = a.rank(), nb = b.rank();
  FanData d;
  d.rank = na + nb;
  for (const auto& r : a.rays()) {
    IntVec v = r;
    v.resize(na + nb, 0);
    d.rays.push_back(v);
  }
  for (const auto& r : b.rays()) {
    IntVec v(na, 0);
    v.insert(v.end(), r.begin(), r.end());
    d.rays.push_back(v);
  }
  const int shift = static_cast<int>(a.rays().size());
  for (const auto& ca : a.max_cones())
    for (const auto& cb : b.max_cones()) {
      IndexSet c = ca;
      for (int x : cb) c.push_back(x + shift);
      d.max_cones.push_back(c);
    }
  return make_fan(d);
}

Fan product_of_projective_spaces(const std::vector<std::size_t>& dims) {
  if (dims.empty()) throw std::invalid_argument("product_of_projective_spaces: no factors");
  Fan f = projective_space(dims.front());
  for (std::size_t i = 1; i < dims.size(); ++i) f = product_fan(f, projective_space(dims[i]));
  return f;
}

Fan hirzebruch(int a) {
  FanData d;
  d.rank = 2;
  d.rays = {IntVec{1, 0}, IntVec{0, 1}, IntVec{-1, a}, IntVec{0, -1}};
  d.max_cones = {{0, 1}, {1, 2}, {2, 3}, {0, 3}};
  return make_fan(d);
}

Fan blowup(const Fan& fan, const IndexSet& cone_in) {
  IndexSet cone = cone_in;
  std::sort(cone.begin(), cone.end());
  if (cone.size() < 2 || !fan.is_cone(cone)) throw std::invalid_argument("blowup: need a cone of dimension >= 2");
  IntVec sum(fan.rank(), 0);
  for (int x : cone)
    for (std::size_t i = 0; i < fan.rank(); ++i) sum[i] += fan.rays()[static_cast<std::size_t>(x)][i];
  FanData d = to_data(fan);
  const int fresh = static_cast<int>(d.rays.size());
  d.rays.push_back(primitive(sum));
  d.max_cones.clear();
  for (const auto& c : fan.max_cones()) {
    if (!std::includes(c.begin(), c.end(), cone.begin(), cone.end())) {
      d.max_cones.push_back(c);
      continue;
    }
    for (int drop : cone) {
      IndexSet nc;
      for (int x : c)
        if (x != drop) nc.push_back(x);
      nc.push_back(fresh);
      d.max_cones.push_back(nc);
    }
  }
  return make_fan(d);
}

TDivisor::TDivisor(Fan f, RatVec a) : fan(std::move(f)), coeffs(std::move(a)) {
  if (coeffs.size() != fan.rays().size()) throw std::invalid_argument("TDivisor: coefficient count differs from ray count");
}

TDivisor TDivisor::zero(const Fan& f) { return {f, RatVec(f.rays().size(), Rat(0))}; }

TDivisor TDivisor::ray(const Fan& f, std::size_t index) {
  TDivisor d = zero(f);
  d.coeffs.at(index) = 1;
  return d;
}

TDivisor TDivisor::all_ones(const Fan& f) { return {f, RatVec(f.rays().size(), Rat(1))}; }

TDivisor operator+(const TDivisor& a, const TDivisor& b) {
  if (!(a.fan == b.fan)) throw std::invalid_argument("TDivisor: different fans");
  RatVec c = a.coeffs;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.coeffs[i];
  return {a.fan, std::move(c)};
}

TDivisor operator-(const TDivisor& a, const TDivisor& b) { return a + Rat(-1) * b; }

TDivisor operator*(const Rat& s, const TDivisor& d) {
  RatVec c = d.coeffs;
  for (auto& x : c) x *= s;
  return {d.fan, std::move(c)};
}

RatVec local_functional(const TDivisor& d, std::size_t max_cone) {
  const auto& cone = d.fan.max_cones().at(max_cone);
  const RatMat& w = d.fan.dual_basis(max_cone);
  const std::size_t n = d.fan.rank();
  RatVec m(n, Rat(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[j] -= w(i, j) * d.coeffs[static_cast<std::size_t>(cone[i])];
  return m;
}

namespace {

// sign of <m_sigma, u_rho> + a_rho over all (sigma, rho): nef iff all >= 0,
// ample iff additionally > 0 whenever rho is not in sigma.
bool convexity(const TDivisor& d, bool strict) {
  const auto& rays = d.fan.rays();
  for (std::size_t s = 0; s < d.fan.max_cones().size(); ++s) {
    RatVec m = local_functional(d, s);
    const auto& cone = d.fan.max_cones()[s];
    for (std::size_t r = 0; r < rays.size(); ++r) {
      Rat v = dot(m, rays[r]) + d.coeffs[r];
      bool inside = std::binary_search(cone.begin(), cone.end(), static_cast<int>(r));
      if (v < 0) return false;
      if (strict && !inside && v == 0) return false;
    }
  }
  return true;
}

}  // namespace

bool is_nef(const TDivisor& d) { return convexity(d, false); }
bool is_ample(const TDivisor& d) { return convexity(d, true); }

Polytope divisor_polytope(const TDivisor& d) {
  const std::size_t n = d.fan.rank();
  std::vector<RatVec> pts;
  if (is_nef(d)) {
    for (std::size_t s = 0; s < d.fan.max_cones().size(); ++s) pts.push_back(local_functional(d, s));
    return Polytope::hull(std::move(pts));
  }
  const auto& rays = d.fan.rays();
  for (const auto& subset : k_subsets(static_cast<int>(rays.size()), static_cast<int>(n))) {
    RatMat m(n, n);
    RatVec rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto r = static_cast<std::size_t>(subset[i]);
      for (std::size_t j = 0; j < n; ++j) m(i, j) = rays[r][j];
      rhs[i] = -d.coeffs[r];
    }
    if (determinant(m) == 0) continue;
    RatVec x = solve(m, rhs);
    bool ok = true;
    for (std::size_t r = 0; r < rays.size() && ok; ++r) ok = dot(x, rays[r]) >= -d.coeffs[r];
    if (ok) pts.push_back(std::move(x));
  }
  if (pts.empty()) throw std::domain_error("divisor_polytope: polytope is empty");
  return Polytope::hull(std::move(pts));
}

Rat support_value(const TDivisor& d, const RatVec& v) {
  auto [s, c] = d.fan.locate(v);
  Rat total = 0;
  const auto& cone = d.fan.max_cones()[s];
  for (std::size_t i = 0; i < c.size(); ++i) total += c[i] * d.coeffs[static_cast<std::size_t>(cone[i])];
  return total;
}

bool maps_cones_into(const Fan& source, const IntMat& a, const Fan& target) {
  if (a.rows() != target.rank() || a.cols() != source.rank()) throw std::invalid_argument("maps_cones_into: dimension mismatch");
  const RatMat ar = to_rat(a);
  for (const auto& cone : source.max_cones()) {
    std::vector<RatVec> images;
    for (int x : cone) images.push_back(ar * to_rat(source.rays()[static_cast<std::size_t>(x)]));
    bool found = false;
    for (std::size_t t = 0; t < target.max_cones().size() && !found; ++t) {
      const RatMat& w = target.dual_basis(t);
      found = std::all_of(images.begin(), images.end(), [&](const RatVec& v) { return all_nonneg(w * v); });
    }
    if (!found) return false;
  }
  return true;
}

namespace {

// Extreme rays of the pointed cone {x : rows x >= 0}, as primitive vectors.
std::vector<IntVec> extreme_rays(const std::vector<RatVec>& rows, std::size_t n) {
  std::set<IntVec> out;
  for (const auto& subset : k_subsets(static_cast<int>(rows.size()), static_cast<int>(n) - 1)) {
    std::vector<RatVec> sub;
    for (int i : subset) sub.push_back(rows[static_cast<std::size_t>(i)]);
    std::vector<RatVec> ns;
    if (sub.empty()) ns = {RatVec{Rat(1)}};
    else ns = nullspace(RatMat::from_rows(sub));
    if (ns.size() != 1) continue;
    for (int sign : {1, -1}) {
      RatVec r = ns.front();
      if (sign < 0)
        for (auto& x : r) x = -x;
      bool ok = std::all_of(rows.begin(), rows.end(), [&](const RatVec& w) { return dot(w, r) >= 0; });
      if (ok) out.insert(primitive(r));
    }
  }
  return {out.begin(), out.end()};
}

}  // namespace

Fan common_refinement(const Fan& source, const IntMat& a, const Fan& target) {
  const std::size_t n = source.rank();
  if (a.rows() != target.rank() || a.cols() != n) throw std::invalid_argument("common_refinement: dimension mismatch");
  const RatMat ar = to_rat(a);
  const auto& smax = source.max_cones();
  const auto& tmax = target.max_cones();

  // Full-dimensional pieces sigma intersect a^{-1}(tau), one slot per pair.
  std::vector<std::vector<IntVec>> pieces(smax.size() * tmax.size());
  parallel_for(pieces.size(), [&](std::size_t idx) {
    const std::size_t s = idx / tmax.size(), t = idx % tmax.size();
    std::vector<RatVec> rows;
    const RatMat& ws = source.dual_basis(s);
    for (std::size_t i = 0; i < n; ++i) rows.push_back(ws.row_vector(i));
    const RatMat wt = target.dual_basis(t) * ar;
    for (std::size_t i = 0; i < wt.rows(); ++i) rows.push_back(wt.row_vector(i));
    auto rays = extreme_rays(rows, n);
    std::vector<RatVec> rr;
    for (const auto& r : rays) rr.push_back(to_rat(r));
    if (rays.size() >= n && rank(RatMat::from_rows(rr)) == n) pieces[idx] = std::move(rays);
  });

  // Source rays keep their positions; new rays follow in lexicographic order.
  std::set<IntVec> all;
  for (const auto& p : pieces) all.insert(p.begin(), p.end());
  FanData d;
  d.rank = n;
  d.rays = source.rays();
  for (const auto& r : all)
    if (!source.ray_index(r)) d.rays.push_back(r);
  std::map<IntVec, int> index;
  for (std::size_t i = 0; i < d.rays.size(); ++i) index[d.rays[i]] = static_cast<int>(i);

  for (const auto& p : pieces) {
    if (p.empty()) continue;
    // p is sorted, so the placing order is lexicographic on every piece.
    std::vector<RatVec> vecs;
    for (const auto& r : p) vecs.push_back(to_rat(r));
    PlacingTriangulation tri(vecs);
    for (const auto& s : tri.simplices()) {
      IndexSet c;
      for (int i : s) c.push_back(index.at(p[static_cast<std::size_t>(i)]));
      d.max_cones.push_back(std::move(c));
    }
  }
  return make_fan(d);
}

Fan common_refinement(const Fan& fan, const IntMat& a) {
  if (!a.is_square() || a.rows() != fan.rank()) throw std::invalid_argument("common_refinement: dimension mismatch");
  if (determinant(a) == 0) throw RefinementError("common_refinement: SingularMatrix");
  return common_refinement(fan, a, fan);
}

bool refines(const Fan& fine, const Fan& coarse) {
  if (fine.rank() != coarse.rank()) return false;
  return maps_cones_into(fine, IntMat::identity(fine.rank()), coarse);
}

TDivisor pullback_divisor(const TDivisor& d, const IntMat& a, const Fan& source) {
  if (!maps_cones_into(source, a, d.fan))
    throw RefinementError("pullback_divisor: the map does not send cones of the source into cones of the target");
  const RatMat ar = to_rat(a);
  RatVec c;
  for (const auto& r : source.rays()) c.push_back(support_value(d, ar * to_rat(r)));
  return {source, std::move(c)};
}

Fibration::Fibration(Fan src, Fan tgt, IntMat proj) : source(std::move(src)), target(std::move(tgt)), projection(std::move(proj)) {
  if (projection.rows() != target.rank() || projection.cols() != source.rank())
    throw std::invalid_argument("Fibration: projection has wrong shape");
  if (target.rank() > source.rank()) throw std::invalid_argument("Fibration: target rank exceeds source rank");
  if (rank(to_rat(projection)) != target.rank()) throw std::invalid_argument("Fibration: projection is not surjective");
  if (!maps_cones_into(source, projection, target))
    throw std::invalid_argument("Fibration: projection does not map cones into cones");
}

}  // namespace degree_lab
