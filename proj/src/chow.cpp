#include "degree_lab/chow.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>

namespace degree_lab {

namespace {

IndexSet with_ray(const IndexSet& cone, int ray) {
  IndexSet out = cone;
  out.insert(std::lower_bound(out.begin(), out.end(), ray), ray);
  return out;
}

bool has_ray(const IndexSet& cone, int ray) { return std::binary_search(cone.begin(), cone.end(), ray); }

void check_same_ring(const std::shared_ptr<const ChowRing>& a, const std::shared_ptr<const ChowRing>& b) {
  if (a != b && !(a->fan() == b->fan())) throw std::invalid_argument("classes live on different fans");
}

}  // namespace

ChowRing::ChowRing(Fan fan) : fan_(std::move(fan)) {
  const std::size_t n = fan_.rank();
  const auto& rays = fan_.rays();
  std::vector<RatVec> qrays;
  for (const auto& r : rays) qrays.push_back(to_rat(r));

  levels_.resize(n + 1);
  mults_.resize(n + 1);
  for (std::size_t c = 0; c <= n; ++c) {
    Level& lv = levels_[c];
    lv.cones = fan_.cones(c);
    for (const auto& s : lv.cones) mults_[c].push_back(fan_.multiplicity(s));

    std::vector<RatVec> rows;
    if (c > 0) {
      for (const auto& tau : fan_.cones(c - 1)) {
        RatMat span(tau.size(), n);
        for (std::size_t i = 0; i < tau.size(); ++i)
          for (std::size_t j = 0; j < n; ++j) span(i, j) = qrays[static_cast<std::size_t>(tau[i])][j];
        for (const auto& m : nullspace(span)) {
          RatVec row(lv.cones.size(), Rat(0));
          bool any = false;
          for (std::size_t rho = 0; rho < rays.size(); ++rho) {
            if (has_ray(tau, static_cast<int>(rho))) continue;
            auto pos = fan_.cone_position(with_ray(tau, static_cast<int>(rho)));
            if (!pos) continue;
            Rat v = dot(m, qrays[rho]);
            if (v != 0) {
              row[*pos] = v;
              any = true;
            }
          }
          if (any) rows.push_back(std::move(row));
        }
      }
    }
    lv.relations = rows.empty() ? RatMat(0, lv.cones.size()) : RatMat::from_rows(rows);
    lv.echelon = lv.relations;
    lv.pivots = rref(lv.echelon);
    std::vector<bool> pivot(lv.cones.size(), false);
    for (auto p : lv.pivots) pivot[p] = true;
    for (std::size_t j = 0; j < lv.cones.size(); ++j)
      if (!pivot[j]) lv.basis.push_back(j);
  }
}

const std::vector<IndexSet>& ChowRing::generators(std::size_t codim) const { return levels_.at(codim).cones; }
const RatMat& ChowRing::relations(std::size_t codim) const { return levels_.at(codim).relations; }
const std::vector<std::size_t>& ChowRing::basis(std::size_t codim) const { return levels_.at(codim).basis; }

RatVec ChowRing::reduce(std::size_t codim, RatVec x) const {
  const Level& lv = levels_.at(codim);
  if (x.size() != lv.cones.size()) throw std::invalid_argument("ChowRing::reduce: wrong vector length");
  for (std::size_t i = 0; i < lv.pivots.size(); ++i) {
    const std::size_t p = lv.pivots[i];
    if (x[p] == 0) continue;
    const Rat f = x[p];
    for (std::size_t j = p; j < x.size(); ++j)
      if (lv.echelon(i, j) != 0) x[j] -= f * lv.echelon(i, j);
  }
  return x;
}

RatVec ChowRing::times_ray(std::size_t codim, const RatVec& x, int ray) const {
  const std::size_t n = rank();
  if (codim >= n) throw std::invalid_argument("ChowRing::times_ray: degree exceeds dimension");
  const Level& lv = levels_.at(codim);
  const auto& rays = fan_.rays();
  RatVec out(levels_[codim + 1].cones.size(), Rat(0));
  for (std::size_t s = 0; s < lv.cones.size(); ++s) {
    if (x[s] == 0) continue;
    const IndexSet& sigma = lv.cones[s];
    if (!has_ray(sigma, ray)) {
      if (auto pos = fan_.cone_position(with_ray(sigma, ray))) out[*pos] += x[s];
      continue;
    }
    // Self-intersection: trade x_ray for the other rays via a character that is
    // 1 on ray and 0 on the remaining rays of a maximal cone containing sigma.
    std::size_t hat = 0;
    const auto& maxes = fan_.max_cones();
    while (!std::includes(maxes[hat].begin(), maxes[hat].end(), sigma.begin(), sigma.end())) ++hat;
    const IndexSet& big = maxes[hat];
    const std::size_t row = static_cast<std::size_t>(std::find(big.begin(), big.end(), ray) - big.begin());
    const RatMat& w = fan_.dual_basis(hat);
    RatVec m = w.row_vector(row);
    for (std::size_t other = 0; other < rays.size(); ++other) {
      if (has_ray(big, static_cast<int>(other))) continue;
      Rat v = dot(m, rays[other]);
      if (v == 0) continue;
      if (auto pos = fan_.cone_position(with_ray(sigma, static_cast<int>(other)))) out[*pos] -= x[s] * v;
    }
  }
  return out;
}

Rat ChowRing::degree(const RatVec& top) const {
  const std::size_t n = rank();
  Rat total = 0;
  for (std::size_t s = 0; s < top.size(); ++s)
    if (top[s] != 0) total += top[s] / Rat(mults_[n][s]);
  return total;
}

std::shared_ptr<const ChowRing> chow_ring(const Fan& fan) {
  static std::mutex mutex;
  static std::deque<std::shared_ptr<const ChowRing>> cache;
  constexpr std::size_t capacity = 64;
  {
    std::lock_guard lock(mutex);
    for (const auto& r : cache)
      if (r->fan() == fan) return r;
  }
  auto built = std::make_shared<const ChowRing>(fan);
  std::lock_guard lock(mutex);
  for (const auto& r : cache)
    if (r->fan() == fan) return r;
  cache.push_back(built);
  if (cache.size() > capacity) cache.pop_front();
  return built;
}

CycleBasis numerical_basis(const Fan& fan, std::size_t k) {
  const std::size_t n = fan.rank();
  if (k > n) throw std::out_of_range("numerical_basis: k out of range");
  auto ring = chow_ring(fan);
  const std::size_t c = n - k;
  CycleBasis out;
  out.ring = ring;
  out.dim = k;
  out.generators = ring->generators(c);
  out.basis = ring->basis(c);
  // Same relations rescaled to the orbit-closure generators: the row of
  // (tau, m) becomes sum <m, u_{sigma,tau}> [V(sigma)], with
  // <m, u_{sigma,tau}> = <m, u_rho> mult(tau) / mult(sigma).
  const RatMat& rel = ring->relations(c);
  out.relations = rel;
  if (c > 0) {
    const auto& taus = fan.cones(c - 1);
    const auto& rays = fan.rays();
    std::size_t row = 0;
    for (const auto& tau : taus) {
      RatMat span(tau.size(), n);
      for (std::size_t i = 0; i < tau.size(); ++i)
        for (std::size_t j = 0; j < n; ++j) span(i, j) = Rat(rays[static_cast<std::size_t>(tau[i])][j]);
      const Rat mt(fan.multiplicity(tau));
      for (const auto& m : nullspace(span)) {
        bool any = false;
        for (std::size_t rho = 0; rho < rays.size() && !any; ++rho)
          if (!has_ray(tau, static_cast<int>(rho)) && fan.is_cone(with_ray(tau, static_cast<int>(rho))) &&
              dot(m, rays[rho]) != 0)
            any = true;
        if (!any) continue;
        for (std::size_t j = 0; j < rel.cols(); ++j)
          if (rel(row, j) != 0) out.relations(row, j) = rel(row, j) * mt / Rat(ring->multiplicity(c, j));
        ++row;
      }
    }
  }
  return out;
}

// ---- dual classes ----

DualClass dual_unit(const Fan& fan) { return {chow_ring(fan), 0, RatVec{Rat(1)}}; }

DualClass dual_class(const TDivisor& d) {
  auto ring = chow_ring(d.fan);
  RatVec x(ring->generators(1).size(), Rat(0));
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = d.coeffs[static_cast<std::size_t>(ring->generators(1)[i][0])];
  return {ring, 1, ring->reduce(1, std::move(x))};
}

DualClass dual_basis_element(const Fan& fan, std::size_t codim, std::size_t i) {
  auto ring = chow_ring(fan);
  RatVec x(ring->generators(codim).size(), Rat(0));
  x.at(ring->basis(codim).at(i)) = 1;
  return {ring, codim, std::move(x)};
}

DualClass operator*(const DualClass& a, const TDivisor& d) { return a * dual_class(d); }

DualClass operator*(const DualClass& a, const DualClass& b) {
  check_same_ring(a.ring, b.ring);
  const ChowRing& ring = *a.ring;
  const std::size_t c = a.codim + b.codim;
  if (c > ring.rank()) throw std::invalid_argument("product exceeds the dimension");
  RatVec total(ring.generators(c).size(), Rat(0));
  const auto& taus = ring.generators(b.codim);
  for (std::size_t t = 0; t < taus.size(); ++t) {
    if (b.coeffs[t] == 0) continue;
    RatVec x = a.coeffs;
    std::size_t level = a.codim;
    for (int ray : taus[t]) {
      x = ring.reduce(level + 1, ring.times_ray(level, x, ray));
      ++level;
    }
    for (std::size_t j = 0; j < total.size(); ++j)
      if (x[j] != 0) total[j] += b.coeffs[t] * x[j];
  }
  return {a.ring, c, ring.reduce(c, std::move(total))};
}

DualClass operator+(const DualClass& a, const DualClass& b) {
  check_same_ring(a.ring, b.ring);
  if (a.codim != b.codim) throw std::invalid_argument("DualClass: adding different degrees");
  RatVec x = a.coeffs;
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += b.coeffs[i];
  return {a.ring, a.codim, std::move(x)};
}

DualClass operator*(const Rat& s, const DualClass& a) {
  RatVec x = a.coeffs;
  for (auto& v : x) v *= s;
  return {a.ring, a.codim, std::move(x)};
}

DualClass operator-(const DualClass& a, const DualClass& b) { return a + Rat(-1) * b; }

Rat degree(const DualClass& top) {
  if (top.codim != top.ring->rank()) throw std::invalid_argument("degree: class is not of top degree");
  return top.ring->degree(top.coeffs);
}

DualClass product(const Fan& fan, const std::vector<TDivisor>& divisors) {
  DualClass acc = dual_unit(fan);
  for (const auto& d : divisors) acc = acc * d;
  return acc;
}

// ---- cycle classes ----

namespace {

// Orbit-closure coefficients y over generators(c) -> echelon coordinates.
RatVec cycle_coords(const ChowRing& ring, std::size_t c, RatVec y) {
  for (std::size_t j = 0; j < y.size(); ++j) y[j] *= Rat(ring.multiplicity(c, j));
  RatVec x = ring.reduce(c, std::move(y));
  RatVec coords;
  for (auto b : ring.basis(c)) coords.push_back(x[b] / Rat(ring.multiplicity(c, b)));
  return coords;
}

std::size_t level_of(const CycleClass& z) { return z.ring->rank() - z.dim; }

}  // namespace

CycleClass orbit_class(const Fan& fan, const IndexSet& cone) {
  auto ring = chow_ring(fan);
  auto pos = fan.cone_position(cone);
  if (!pos) throw std::invalid_argument("orbit_class: not a cone of the fan");
  const std::size_t c = cone.size();
  RatVec y(ring->generators(c).size(), Rat(0));
  y[*pos] = 1;
  return {ring, fan.rank() - c, cycle_coords(*ring, c, std::move(y))};
}

CycleClass point_class(const Fan& fan) { return orbit_class(fan, fan.max_cones().front()); }

CycleClass fundamental_class(const Fan& fan) { return orbit_class(fan, {}); }

CycleClass cycle_basis_element(const Fan& fan, std::size_t dim, std::size_t i) {
  auto ring = chow_ring(fan);
  RatVec coords(ring->dim(fan.rank() - dim), Rat(0));
  coords.at(i) = 1;
  return {ring, dim, std::move(coords)};
}

CycleClass operator+(const CycleClass& a, const CycleClass& b) {
  check_same_ring(a.ring, b.ring);
  if (a.dim != b.dim) throw std::invalid_argument("CycleClass: adding different dimensions");
  RatVec x = a.coords;
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += b.coords[i];
  return {a.ring, a.dim, std::move(x)};
}

CycleClass operator*(const Rat& s, const CycleClass& a) {
  RatVec x = a.coords;
  for (auto& v : x) v *= s;
  return {a.ring, a.dim, std::move(x)};
}

CycleClass operator-(const CycleClass& a, const CycleClass& b) { return a + Rat(-1) * b; }

// x_sigma cap [X] = [V(sigma)] / mult(sigma).
CycleClass psi(const DualClass& a) {
  const ChowRing& ring = *a.ring;
  RatVec coords;
  for (auto b : ring.basis(a.codim)) coords.push_back(a.coeffs[b] / Rat(ring.multiplicity(a.codim, b)));
  return {a.ring, ring.rank() - a.codim, std::move(coords)};
}

DualClass psi_inverse(const CycleClass& z) {
  const ChowRing& ring = *z.ring;
  const std::size_t c = level_of(z);
  RatVec x(ring.generators(c).size(), Rat(0));
  const auto& basis = ring.basis(c);
  for (std::size_t i = 0; i < basis.size(); ++i) x[basis[i]] = z.coords[i] * Rat(ring.multiplicity(c, basis[i]));
  return {z.ring, c, std::move(x)};
}

CycleClass cap(const DualClass& a, const CycleClass& z) { return psi(a * psi_inverse(z)); }

Rat pairing(const DualClass& a, const CycleClass& z) {
  if (a.codim != z.dim) throw std::invalid_argument("pairing: degree and dimension differ");
  return degree(a * psi_inverse(z));
}

RatMat pairing_matrix(const Fan& fan, std::size_t k) {
  auto ring = chow_ring(fan);
  const std::size_t n = fan.rank();
  if (k > n) throw std::out_of_range("pairing_matrix: k out of range");
  const std::size_t rows = ring->dim(k), cols = ring->dim(n - k);
  RatMat m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    DualClass a = dual_basis_element(fan, k, i);
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = pairing(a, cycle_basis_element(fan, k, j));
  }
  return m;
}

// ---- cones ----

std::vector<CycleClass> psef_generators(const Fan& fan, std::size_t dim) {
  if (dim > fan.rank()) throw std::out_of_range("psef_generators: dimension out of range");
  std::vector<CycleClass> out;
  for (const auto& s : fan.cones(fan.rank() - dim)) out.push_back(orbit_class(fan, s));
  return out;
}

namespace {

RatMat generator_matrix(const std::vector<CycleClass>& gens, std::size_t rows) {
  RatMat a(rows, gens.size());
  for (std::size_t j = 0; j < gens.size(); ++j)
    for (std::size_t i = 0; i < rows; ++i) a(i, j) = gens[j].coords[i];
  return a;
}

}  // namespace

ConeMembership psef_member(const CycleClass& z) {
  auto gens = psef_generators(z.ring->fan(), z.dim);
  RatMat a = generator_matrix(gens, z.coords.size());
  auto r = lp_feasible(a, z.coords);
  if (auto* w = std::get_if<LpFeasible>(&r)) return InCone{w->x};
  return NotInCone{std::get<LpInfeasible>(r).y};
}

bool verify_membership(const CycleClass& z, const ConeMembership& m) {
  auto gens = psef_generators(z.ring->fan(), z.dim);
  RatMat a = generator_matrix(gens, z.coords.size());
  if (auto* in = std::get_if<InCone>(&m)) return verify_witness(a, z.coords, LpFeasible{in->weights});
  return verify_certificate(a, z.coords, LpInfeasible{std::get<NotInCone>(m).functional});
}

bool nef_member(const DualClass& a) {
  const Fan& fan = a.ring->fan();
  for (const auto& z : psef_generators(fan, a.codim))
    if (pairing(a, z) < 0) return false;
  return true;
}

std::vector<DualClass> nef_cone_generators(const Fan& fan) {
  auto ring = chow_ring(fan);
  const std::size_t d = ring->dim(1);
  auto curves = psef_generators(fan, 1);
  std::vector<RatVec> walls;
  std::vector<DualClass> basis;
  for (std::size_t i = 0; i < d; ++i) basis.push_back(dual_basis_element(fan, 1, i));
  for (const auto& c : curves) {
    RatVec row;
    for (const auto& b : basis) row.push_back(pairing(b, c));
    if (std::any_of(row.begin(), row.end(), [](const Rat& v) { return v != 0; })) walls.push_back(std::move(row));
  }
  std::set<IntVec> seen;
  std::vector<DualClass> out;
  auto consider = [&](const RatVec& v) {
    for (const auto& w : walls)
      if (dot(w, v) < 0) return;
    IntVec p = primitive(v);
    if (!seen.insert(p).second) return;
    RatVec x(ring->generators(1).size(), Rat(0));
    for (std::size_t i = 0; i < d; ++i) x[ring->basis(1)[i]] = Rat(p[i]);
    out.push_back({ring, 1, std::move(x)});
  };
  if (d == 1) {
    consider(RatVec{Rat(1)});
    consider(RatVec{Rat(-1)});
    return out;
  }
  for (const auto& subset : k_subsets(static_cast<int>(walls.size()), static_cast<int>(d - 1))) {
    RatMat m(d - 1, d);
    for (std::size_t i = 0; i < d - 1; ++i)
      for (std::size_t j = 0; j < d; ++j) m(i, j) = walls[static_cast<std::size_t>(subset[i])][j];
    auto ns = nullspace(m);
    if (ns.size() != 1) continue;
    RatVec neg = ns[0];
    for (auto& v : neg) v = -v;
    consider(ns[0]);
    consider(neg);
  }
  return out;
}

// ---- functoriality ----

CycleClass pushforward_cycles(const Fan& coarse, const CycleClass& z) {
  const Fan& fine = z.ring->fan();
  if (fine.rank() != coarse.rank() || !refines(fine, coarse))
    throw std::invalid_argument("pushforward_cycles: source fan does not refine the target fan");
  const std::size_t n = fine.rank();
  const std::size_t c = n - z.dim;
  auto target = chow_ring(coarse);
  RatVec y(target->generators(c).size(), Rat(0));
  const auto& basis = z.ring->basis(c);
  const auto& gens = z.ring->generators(c);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (z.coords[i] == 0) continue;
    const IndexSet& s = gens[basis[i]];
    RatVec centre(n, Rat(0));
    for (int r : s)
      for (std::size_t j = 0; j < n; ++j) centre[j] += Rat(fine.rays()[static_cast<std::size_t>(r)][j]);
    IndexSet image = coarse.containing_cone(centre);
    if (image.size() != s.size()) continue;
    y[*coarse.cone_position(image)] += z.coords[i];
  }
  return {target, z.dim, cycle_coords(*target, c, std::move(y))};
}

DualClass pullback_dual(const DualClass& a, const IntMat& m, const Fan& source) {
  const Fan& target = a.ring->fan();
  if (!maps_cones_into(source, m, target))
    throw RefinementError("pullback_dual: the map does not send cones of the source into cones of the target");
  std::vector<DualClass> rays;
  for (std::size_t r = 0; r < target.rays().size(); ++r)
    rays.push_back(dual_class(pullback_divisor(TDivisor::ray(target, r), m, source)));
  auto ring = chow_ring(source);
  RatVec zero(ring->generators(a.codim).size(), Rat(0));
  DualClass total{ring, a.codim, zero};
  const auto& gens = a.ring->generators(a.codim);
  for (std::size_t t = 0; t < gens.size(); ++t) {
    if (a.coeffs[t] == 0) continue;
    DualClass term = dual_unit(source);
    for (int r : gens[t]) term = term * rays[static_cast<std::size_t>(r)];
    total = total + a.coeffs[t] * term;
  }
  return total;
}

// ---- intersection numbers ----

namespace {

// L(d)_{sigma, rho} = <m_sigma(d), u_rho> + d_rho for rho outside sigma; d is
// nef iff all are >= 0 and ample iff all are > 0.
std::vector<Rat> wall_values(const TDivisor& d) {
  const Fan& fan = d.fan;
  std::vector<Rat> out;
  for (std::size_t s = 0; s < fan.max_cones().size(); ++s) {
    RatVec m = local_functional(d, s);
    const auto& cone = fan.max_cones()[s];
    for (std::size_t r = 0; r < fan.rays().size(); ++r)
      if (!has_ray(cone, static_cast<int>(r))) out.push_back(dot(m, fan.rays()[r]) + d.coeffs[r]);
  }
  return out;
}

}  // namespace

Rat nef_shift(const TDivisor& d, const TDivisor& h) {
  if (!(d.fan == h.fan)) throw std::invalid_argument("nef_shift: different fans");
  auto ld = wall_values(d), lh = wall_values(h);
  Rat c = 0;
  for (std::size_t i = 0; i < ld.size(); ++i) {
    if (lh[i] <= 0) throw std::invalid_argument("nef_shift: reference divisor is not ample");
    if (ld[i] < 0) c = std::max(c, Rat(-ld[i] / lh[i]));
  }
  return c;
}

std::optional<TDivisor> ample_reference(const Fan& fan) {
  TDivisor ones = TDivisor::all_ones(fan);
  if (is_ample(ones)) return ones;
  // Free a = a_plus - a_minus with every wall value L(a) - s = 1, s >= 0.
  const std::size_t r = fan.rays().size();
  std::vector<std::vector<Rat>> cols;  // wall values of each unit divisor
  for (std::size_t i = 0; i < r; ++i) cols.push_back(wall_values(TDivisor::ray(fan, i)));
  const std::size_t walls = cols.empty() ? 0 : cols[0].size();
  RatMat a(walls, 2 * r + walls);
  RatVec b(walls, Rat(1));
  for (std::size_t w = 0; w < walls; ++w) {
    for (std::size_t i = 0; i < r; ++i) {
      a(w, i) = cols[i][w];
      a(w, r + i) = -cols[i][w];
    }
    a(w, 2 * r + w) = -1;
  }
  auto res = lp_feasible(a, b);
  auto* ok = std::get_if<LpFeasible>(&res);
  if (!ok) return std::nullopt;
  RatVec coeffs(r);
  Int den = 1;
  for (std::size_t i = 0; i < r; ++i) {
    coeffs[i] = ok->x[i] - ok->x[r + i];
    den = lcm(den, coeffs[i].get_den());
  }
  for (auto& c : coeffs) c *= Rat(den);
  TDivisor h(fan, std::move(coeffs));
  if (!is_ample(h)) throw std::logic_error("ample_reference: LP solution is not ample");
  return h;
}

Rat intersection_number_ring(const std::vector<TDivisor>& divisors) {
  if (divisors.empty()) throw std::invalid_argument("intersection_number: no divisors");
  const Fan& fan = divisors.front().fan;
  if (divisors.size() != fan.rank()) throw std::invalid_argument("intersection_number: need exactly n divisors");
  return degree(product(fan, divisors));
}

Rat intersection_number_nef(const std::vector<TDivisor>& divisors) {
  if (divisors.empty()) throw std::invalid_argument("intersection_number: no divisors");
  const Fan& fan = divisors.front().fan;
  const std::size_t n = fan.rank();
  if (divisors.size() != n) throw std::invalid_argument("intersection_number: need exactly n divisors");
  auto h = ample_reference(fan);
  if (!h) throw std::domain_error("intersection_number_nef: fan carries no ample divisor");
  // D_i = N_i - c_i H with N_i nef; expand the product over subsets.
  std::vector<Rat> shift;
  std::vector<Polytope> nef_poly;
  for (const auto& d : divisors) {
    if (!(d.fan == fan)) throw std::invalid_argument("intersection_number: different fans");
    shift.push_back(nef_shift(d, *h));
    nef_poly.push_back(divisor_polytope(d + shift.back() * *h));
  }
  const Polytope ph = divisor_polytope(*h);
  Rat total = 0;
  for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
    Rat coeff = 1;
    std::vector<Polytope> bodies;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1) {
        bodies.push_back(nef_poly[i]);
      } else {
        coeff *= -shift[i];
        bodies.push_back(ph);
      }
    }
    if (coeff == 0) continue;
    total += coeff * mixed_volume(bodies);
  }
  return total;
}

Rat intersection_number(const std::vector<TDivisor>& divisors) {
  Rat ring = intersection_number_ring(divisors);
  if (!ample_reference(divisors.front().fan)) return ring;
  Rat nef = intersection_number_nef(divisors);
  if (ring != nef)
    throw std::logic_error("intersection_number: ring route " + to_string(ring) + " and nef route " + to_string(nef) +
                           " disagree");
  return ring;
}

}  // namespace degree_lab
