#include "degree_lab/maps.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <stdexcept>

namespace degree_lab {

MonomialMap::MonomialMap(IntMat a) : a_(std::move(a)) {
  if (!a_.is_square() || a_.rows() == 0) throw std::invalid_argument("MonomialMap: matrix must be square");
  if (determinant(a_) == 0) throw std::invalid_argument("MonomialMap: det A = 0, map is not dominant");
}

MonomialMap MonomialMap::power(unsigned p) const { return MonomialMap(matrix_power(a_, p)); }

MonomialMap MonomialMap::identity(std::size_t n) { return MonomialMap(IntMat::identity(n)); }

MonomialMap compose(const MonomialMap& f, const MonomialMap& g) { return MonomialMap(f.matrix() * g.matrix()); }

GraphModel graph_model(const MonomialMap& f, const Fan& x) {
  if (f.dim() != x.rank()) throw std::invalid_argument("graph_model: map and fan dimensions differ");
  static std::mutex mutex;
  static std::deque<GraphModel> cache;
  constexpr std::size_t capacity = 32;
  {
    std::lock_guard lock(mutex);
    for (const auto& g : cache)
      if (g.matrix == f.matrix() && g.base == x) return g;
  }
  GraphModel built{x, f.matrix(), common_refinement(x, f.matrix())};
  std::lock_guard lock(mutex);
  cache.push_back(built);
  if (cache.size() > capacity) cache.pop_front();
  return built;
}

Polytope polarization_polytope(const TDivisor& omega) {
  if (!is_nef(omega)) throw std::domain_error("polarization is not nef");
  Polytope p = divisor_polytope(omega);
  if (p.dim() != static_cast<int>(omega.fan.rank())) throw std::domain_error("polarization is not big (degenerate polytope)");
  return p;
}

namespace {

bool is_integral(const RatVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rat& c) { return c.get_den() == 1; });
}

}  // namespace

TDivisor default_polarization(const Fan& x) {
  auto h = ample_reference(x);
  if (!h) throw std::domain_error("fan carries no ample divisor");
  // Move to the representative vanishing on the first maximal cone, then divide
  // by the largest t that keeps every coefficient and local functional integral.
  RatVec m0 = local_functional(*h, 0);
  RatVec shifted(x.rays().size());
  Rat top = 0;
  for (std::size_t r = 0; r < shifted.size(); ++r) {
    shifted[r] = h->coeffs[r] + dot(m0, x.rays()[r]);
    top = std::max(top, shifted[r]);
  }
  for (long t = top.get_num().get_si(); t > 1; --t) {
    TDivisor d(x, shifted);
    for (auto& c : d.coeffs) c /= t;
    if (!is_integral(d.coeffs)) continue;
    bool cartier = true;
    for (std::size_t s = 0; s < x.max_cones().size() && cartier; ++s) cartier = is_integral(local_functional(d, s));
    if (cartier) return d;
  }
  return TDivisor(x, shifted);
}

Rat top_degree(const TDivisor& omega) {
  Polytope p = polarization_polytope(omega);
  std::vector<Polytope> bodies(omega.fan.rank(), p);
  return mixed_volume(bodies);
}

namespace {

void check_map(const MonomialMap& f, const Fan& x, const TDivisor& omega, std::size_t k) {
  if (f.dim() != x.rank()) throw std::invalid_argument("map and fan dimensions differ");
  if (!(omega.fan == x)) throw std::invalid_argument("polarization lives on a different fan");
  if (k > x.rank()) throw std::out_of_range("degree index k exceeds the dimension");
}

Polytope dual_image(const IntMat& a, const Polytope& p) { return linear_image(transpose(a), p); }

}  // namespace

Rat degree_k(const MonomialMap& f, const Fan& x, const TDivisor& omega, std::size_t k) {
  check_map(f, x, omega, k);
  const std::size_t n = x.rank();
  Polytope p = polarization_polytope(omega);
  Polytope q = dual_image(f.matrix(), p);
  std::vector<Polytope> bodies(n - k, p);
  bodies.insert(bodies.end(), k, q);
  return mixed_volume(bodies);
}

Rat degree_k_graph(const MonomialMap& f, const Fan& x, const TDivisor& omega, std::size_t k) {
  check_map(f, x, omega, k);
  polarization_polytope(omega);
  const std::size_t n = x.rank();
  GraphModel g = graph_model(f, x);
  TDivisor first = pullback_divisor(omega, IntMat::identity(n), g.refinement);
  TDivisor second = pullback_divisor(omega, f.matrix(), g.refinement);
  std::vector<TDivisor> ds(n - k, first);
  ds.insert(ds.end(), k, second);
  return intersection_number_ring(ds);
}

Rat topological_degree(const MonomialMap& f, const Fan& x, const TDivisor& omega) {
  return degree_k(f, x, omega, x.rank()) / top_degree(omega);
}

MonomialMap base_map(const MonomialMap& f, const Fibration& q) {
  const IntMat& pi = q.projection;
  if (f.dim() != q.source.rank()) throw std::invalid_argument("base_map: map and fibration dimensions differ");
  const std::size_t l = pi.rows();
  IntMat pa = pi * f.matrix();
  RatMat e = to_rat(pi);
  auto cols = rref(e);
  RatMat pj(l, l), paj(l, l);
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t c = 0; c < l; ++c) {
      pj(i, c) = pi(i, cols[c]);
      paj(i, c) = pa(i, cols[c]);
    }
  RatMat d = paj * inverse(pj);
  IntMat di;
  try {
    di = to_int(d);
  } catch (const std::domain_error&) {
    throw std::invalid_argument("map is not compatible with the fibration (no integral base action)");
  }
  if (!(di * pi == pa)) throw std::invalid_argument("map is not compatible with the fibration (pi A != D pi)");
  return MonomialMap(di);
}

RatMat fiber_block(const MonomialMap& f, const Fibration& q) {
  base_map(f, q);
  const std::size_t n = f.dim();
  auto kernel = nullspace(to_rat(q.projection));
  const std::size_t e = kernel.size();
  RatMat k = RatMat::from_columns(kernel, n);
  RatMat ak = to_rat(f.matrix()) * k;
  RatMat kt = transpose(k);
  auto rows = rref(kt);  // independent rows of k
  RatMat kr(e, e), akr(e, e);
  for (std::size_t i = 0; i < e; ++i)
    for (std::size_t j = 0; j < e; ++j) {
      kr(i, j) = k(rows[i], j);
      akr(i, j) = ak(rows[i], j);
    }
  RatMat fb = inverse(kr) * akr;
  if (!(k * fb == ak)) throw std::logic_error("fiber_block: kernel is not invariant");
  return fb;
}

namespace {

struct FibrationBodies {
  Polytope px, qx, py;
  std::size_t n, l, e;
};

FibrationBodies fibration_bodies(const MonomialMap& f, const Fibration& q, const TDivisor& omega_x,
                                 const TDivisor& omega_y) {
  base_map(f, q);
  if (!(omega_x.fan == q.source) || !(omega_y.fan == q.target))
    throw std::invalid_argument("polarizations do not live on the fibration's fans");
  Polytope px = polarization_polytope(omega_x);
  Polytope py = linear_image(transpose(q.projection), polarization_polytope(omega_y));
  return {px, dual_image(f.matrix(), px), py, q.source.rank(), q.target.rank(), q.relative_dimension()};
}

Rat fibration_mv(const FibrationBodies& b, std::size_t base, std::size_t total, std::size_t image) {
  std::vector<Polytope> bodies(base, b.py);
  bodies.insert(bodies.end(), total, b.px);
  bodies.insert(bodies.end(), image, b.qx);
  return mixed_volume(bodies);
}

}  // namespace

Rat relative_degree_k(const MonomialMap& f, const Fibration& q, const TDivisor& omega_x, const TDivisor& omega_y,
                      std::size_t k) {
  FibrationBodies b = fibration_bodies(f, q, omega_x, omega_y);
  if (k > b.e) return 0;
  return fibration_mv(b, b.l, b.e - k, k);
}

Rat mixed_degree(const MonomialMap& f, const Fibration& q, const TDivisor& omega_x, const TDivisor& omega_y,
                 std::size_t k, std::size_t j) {
  FibrationBodies b = fibration_bodies(f, q, omega_x, omega_y);
  if (k > b.n || j > b.l || j + b.e < k) return 0;
  return fibration_mv(b, b.l - j, b.e + j - k, k);
}

RatMat pullback_operator(const MonomialMap& f, const Fan& x, std::size_t k) {
  if (f.dim() != x.rank()) throw std::invalid_argument("pullback_operator: map and fan dimensions differ");
  const std::size_t n = x.rank();
  if (k > n) return RatMat(0, 0);
  GraphModel g = graph_model(f, x);
  auto ring = chow_ring(x);
  const std::size_t d = ring->dim(k);
  RatMat m(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    DualClass up = pullback_dual(dual_basis_element(x, k, i), f.matrix(), g.refinement);
    CycleClass z = pushforward_cycles(x, psi(up));
    for (std::size_t r = 0; r < d; ++r) m(r, i) = z.coords[r];
  }
  return m;
}

namespace {

DualClass omega_power(const TDivisor& omega, std::size_t p) {
  DualClass acc = dual_unit(omega.fan);
  DualClass w = dual_class(omega);
  for (std::size_t i = 0; i < p; ++i) acc = acc * w;
  return acc;
}

void combos(std::size_t count, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
            std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < count; ++i) {
    cur.push_back(i);
    combos(count, k, i, cur, out);
    cur.pop_back();
  }
}

}  // namespace

Rat cycle_norm(const NormSpec& spec, const CycleClass& z) {
  const std::size_t n = spec.fan.rank();
  if (z.dim != n - spec.k) throw std::invalid_argument("cycle_norm: class has the wrong dimension");
  DualClass w = omega_power(spec.omega, n - spec.k);
  auto gens = psef_generators(spec.fan, n - spec.k);
  const std::size_t rows = z.coords.size(), m = gens.size();
  RatMat a(rows, 2 * m);
  RatVec c(2 * m);
  for (std::size_t j = 0; j < m; ++j) {
    Rat weight = pairing(w, gens[j]);
    bool zero = std::all_of(gens[j].coords.begin(), gens[j].coords.end(), [](const Rat& v) { return v == 0; });
    if (weight <= 0 && !zero) throw std::domain_error("degenerate norm data: invariant cycle of nonpositive degree");
    c[j] = c[m + j] = weight;
    for (std::size_t i = 0; i < rows; ++i) {
      a(i, j) = gens[j].coords[i];
      a(i, m + j) = -gens[j].coords[i];
    }
  }
  auto res = lp_minimize(c, a, z.coords);
  if (auto* opt = std::get_if<LpOptimal>(&res)) return opt->value;
  throw std::domain_error("degenerate norm data: invariant cycles do not span");
}

Rat operator_norm(const RatMat& m, const NormSpec& spec) {
  const Fan& x = spec.fan;
  const std::size_t n = x.rank(), k = spec.k;
  if (k > n) return 0;
  auto ring = chow_ring(x);
  const std::size_t d = ring->dim(k);
  if (m.rows() != d || m.cols() != d) throw std::invalid_argument("operator_norm: matrix shape does not match N^k");

  std::vector<DualClass> gens;
  if (k == 0) {
    gens.push_back(dual_unit(x));
  } else {
    auto nef = nef_cone_generators(x);
    std::vector<std::vector<std::size_t>> picks;
    std::vector<std::size_t> cur;
    combos(nef.size(), k, 0, cur, picks);
    for (const auto& p : picks) {
      DualClass g = dual_unit(x);
      for (auto i : p) g = g * nef[i];
      gens.push_back(g);
    }
  }
  RatMat span(gens.size(), d);
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = 0; j < d; ++j) span(i, j) = gens[i].coeffs[ring->basis(k)[j]];
  if (rank(span) != d) throw std::domain_error("degenerate norm data: nef products do not span N^k");

  DualClass w = omega_power(spec.omega, n - k);
  Rat best = 0;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    RatVec coords = span.row_vector(i);
    if (std::all_of(coords.begin(), coords.end(), [](const Rat& v) { return v == 0; })) continue;
    Rat weight = degree(gens[i] * w);
    if (weight <= 0) throw std::domain_error("degenerate norm data: nef product of nonpositive degree");
    CycleClass image{ring, n - k, m * coords};
    Rat value = cycle_norm(spec, image) / weight;
    if (value > best) best = value;
  }
  return best;
}

}  // namespace degree_lab
