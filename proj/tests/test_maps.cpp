#include <random>

#include "doctest.h"
#include "degree_lab/maps.hpp"

using namespace degree_lab;

namespace {

// Degree of the homogenized monomial map on P^n: shift every exponent column
// to be nonnegative, then the degree is the largest total exponent among the
// components {1, x^{a_1}, ..., x^{a_n}}.
Int homogenized_degree(const IntMat& a) {
  const std::size_t n = a.rows();
  std::vector<IntVec> comps{IntVec(n, Int(0))};
  for (std::size_t i = 0; i < n; ++i) comps.push_back(a.row_vector(i));
  Int d = 0;
  for (const auto& v : comps) {
    Int total = 0;
    for (std::size_t c = 0; c < n; ++c) {
      Int lo = 0;
      for (const auto& w : comps) lo = std::min(lo, w[c]);
      total += v[c] - lo;
    }
    d = std::max(d, total);
  }
  return d;
}

IntMat random_matrix(std::size_t n, std::mt19937& rng, int lo = -3, int hi = 3) {
  std::uniform_int_distribution<int> d(lo, hi);
  while (true) {
    IntMat a(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = d(rng);
    if (determinant(a) != 0) return a;
  }
}

// O(1,1): one ray divisor from each factor.
TDivisor bidegree_one(const Fan& x) {
  RatVec c(x.rays().size(), Rat(0));
  for (std::size_t i = 0; i < c.size(); i += 2) c[i] = 1;
  return {x, c};
}

Fibration first_projection_p1p1() {
  return Fibration(product_of_projective_spaces({1, 1}), projective_space(1), IntMat{{1, 0}});
}

}  // namespace

TEST_CASE("monomial map basics") {
  CHECK_THROWS_AS(MonomialMap(IntMat{{1, 2}, {2, 4}}), std::invalid_argument);
  CHECK_THROWS_AS(MonomialMap(IntMat{{1, 2}}), std::invalid_argument);
  MonomialMap f(IntMat{{2, 1}, {1, 1}});
  CHECK(f.power(2).matrix() == IntMat{{5, 3}, {3, 2}});
  CHECK(compose(f, f) == f.power(2));
  CHECK(f.power(0) == MonomialMap::identity(2));
}

TEST_CASE("degree examples on the plane") {
  Fan p2 = projective_space(2);
  TDivisor h = TDivisor::ray(p2, 0);
  for (std::size_t k = 0; k <= 2; ++k) CHECK(degree_k(MonomialMap::identity(2), p2, h, k) == 1);
  CHECK(degree_k(MonomialMap(IntMat{{-1, 0}, {0, -1}}), p2, h, 1) == 2);
  CHECK(degree_k(MonomialMap(IntMat{{2, 1}, {1, 1}}), p2, h, 1) == 3);
  CHECK(degree_k(MonomialMap(IntMat{{5, 3}, {3, 2}}), p2, h, 1) == 8);
}

TEST_CASE("first degree matches homogenization") {
  std::mt19937 rng(41);
  for (std::size_t n : {2u, 3u}) {
    Fan pn = projective_space(n);
    TDivisor h = TDivisor::ray(pn, 0);
    for (int t = 0; t < 15; ++t) {
      IntMat a = random_matrix(n, rng);
      CHECK(degree_k(MonomialMap(a), pn, h, 1) == Rat(homogenized_degree(a)));
    }
  }
}

TEST_CASE("topological degree is the lattice index") {
  Fan p2 = projective_space(2);
  TDivisor h = TDivisor::ray(p2, 0);
  CHECK(topological_degree(MonomialMap(IntMat{{-1, 0}, {0, -1}}), p2, h) == 1);
  CHECK(topological_degree(MonomialMap(IntMat{{2, 1}, {1, 1}}), p2, h) == 1);
  CHECK(topological_degree(MonomialMap(IntMat{{2, 0}, {0, 2}}), p2, h) == 4);
  std::mt19937 rng(43);
  std::vector<Fan> fans{product_of_projective_spaces({1, 1}), hirzebruch(1), projective_space(3)};
  for (const auto& x : fans) {
    TDivisor w = default_polarization(x);
    for (int t = 0; t < 5; ++t) {
      IntMat a = random_matrix(x.rank(), rng);
      Int det = determinant(a);
      CHECK(topological_degree(MonomialMap(a), x, w) == Rat(abs(det)));
    }
  }
}

TEST_CASE("mixed-volume and graph routes agree") {
  std::mt19937 rng(47);
  std::vector<Fan> fans{projective_space(2), product_of_projective_spaces({1, 1}), hirzebruch(1),
                        blowup(projective_space(2), {0, 1}), projective_space(3)};
  for (const auto& x : fans) {
    TDivisor w = default_polarization(x);
    for (int t = 0; t < 3; ++t) {
      MonomialMap f(random_matrix(x.rank(), rng, -2, 2));
      for (std::size_t k = 0; k <= x.rank(); ++k) CHECK(degree_k(f, x, w, k) == degree_k_graph(f, x, w, k));
    }
  }
}

TEST_CASE("degrees are log-concave") {
  std::mt19937 rng(53);
  for (std::size_t n : {2u, 3u}) {
    Fan x = n == 2 ? hirzebruch(2) : product_of_projective_spaces({1, 1, 1});
    TDivisor w = default_polarization(x);
    for (int t = 0; t < 6; ++t) {
      MonomialMap f(random_matrix(n, rng));
      for (std::size_t k = 1; k < n; ++k)
        CHECK(degree_k(f, x, w, k) * degree_k(f, x, w, k) >= degree_k(f, x, w, k - 1) * degree_k(f, x, w, k + 1));
    }
  }
}

TEST_CASE("polarization must be nef and big") {
  Fan p2 = projective_space(2);
  MonomialMap f = MonomialMap::identity(2);
  CHECK_THROWS_AS(degree_k(f, p2, TDivisor::zero(p2), 1), std::domain_error);
  CHECK_THROWS_AS(degree_k(f, p2, Rat(-1) * TDivisor::ray(p2, 0), 1), std::domain_error);
  Fan p1p1 = product_of_projective_spaces({1, 1});
  CHECK_THROWS_AS(degree_k(MonomialMap::identity(2), p1p1, TDivisor::ray(p1p1, 0), 1), std::domain_error);
}

TEST_CASE("relative and mixed degrees") {
  Fibration q = first_projection_p1p1();
  TDivisor wx = bidegree_one(q.source);
  TDivisor wy = TDivisor::ray(q.target, 0);
  MonomialMap f(IntMat{{2, 0}, {1, 3}});
  CHECK(base_map(f, q).matrix() == IntMat{{2}});
  CHECK(fiber_block(f, q) == RatMat{{Rat(3)}});
  CHECK(relative_degree_k(f, q, wx, wy, 1) == 3);
  CHECK(relative_degree_k(f, q, wx, wy, 0) == 1);
  CHECK(relative_degree_k(f, q, wx, wy, 2) == 0);
  CHECK(mixed_degree(f, q, wx, wy, 1, 0) == 3);
  CHECK(mixed_degree(f, q, wx, wy, 1, 1) == degree_k(f, q.source, wx, 1));
  CHECK(mixed_degree(MonomialMap::identity(2), q, wx, wy, 1, 1) == 2);
  CHECK(mixed_degree(f, q, wx, wy, 2, 0) == 0);

  CHECK_THROWS_AS(relative_degree_k(MonomialMap(IntMat{{1, 1}, {0, 1}}), q, wx, wy, 1), std::invalid_argument);

  // Finite case: the fibration is the identity, reldeg_0 = (omega_Y^l).
  Fan p2 = projective_space(2);
  Fibration same(p2, p2, IntMat::identity(2));
  TDivisor h = TDivisor::ray(p2, 0);
  CHECK(relative_degree_k(MonomialMap(IntMat{{2, 1}, {1, 1}}), same, h, h, 0) == 1);
}

TEST_CASE("mixed degrees interpolate on a three-fold") {
  Fibration q(product_of_projective_spaces({1, 1, 1}), product_of_projective_spaces({1, 1}), IntMat{{1, 0, 0}, {0, 1, 0}});
  TDivisor wx = bidegree_one(q.source), wy = bidegree_one(q.target);
  MonomialMap f(IntMat{{1, 1, 0}, {0, 2, 0}, {1, -1, 3}});
  for (std::size_t k = 0; k <= 3; ++k) {
    CHECK(mixed_degree(f, q, wx, wy, k, 0) == relative_degree_k(f, q, wx, wy, k));
    CHECK(mixed_degree(f, q, wx, wy, k, 2) == degree_k(f, q.source, wx, k));
  }
  CHECK(fiber_block(f, q) == RatMat{{Rat(3)}});
}

TEST_CASE("pullback operator examples") {
  Fan p2 = projective_space(2);
  for (std::size_t k = 0; k <= 2; ++k) {
    RatMat m = pullback_operator(MonomialMap::identity(2), p2, k);
    RatMat expected(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.cols(); ++i) {
      CycleClass z = psi(dual_basis_element(p2, k, i));
      for (std::size_t r = 0; r < m.rows(); ++r) expected(r, i) = z.coords[r];
    }
    CHECK(m == expected);
  }
  RatMat cremona = pullback_operator(MonomialMap(IntMat{{-1, 0}, {0, -1}}), p2, 1);
  REQUIRE(cremona.rows() == 1);
  // H maps to twice the line class.
  auto ring = chow_ring(p2);
  DualClass h = dual_class(TDivisor::ray(p2, 0));
  RatVec hc{h.coeffs[ring->basis(1)[0]]};
  CycleClass image{ring, 1, cremona * hc};
  CHECK(image == Rat(2) * orbit_class(p2, {0}));
  CHECK(pullback_operator(MonomialMap::identity(2), p2, 3).rows() == 0);
}

TEST_CASE("pullback operator keeps positivity") {
  std::mt19937 rng(59);
  std::vector<Fan> fans{product_of_projective_spaces({1, 1}), hirzebruch(1), projective_space(3)};
  for (const auto& x : fans) {
    TDivisor w = default_polarization(x);
    auto ring = chow_ring(x);
    for (int t = 0; t < 3; ++t) {
      MonomialMap f(random_matrix(x.rank(), rng, -2, 2));
      for (std::size_t k = 0; k <= x.rank(); ++k) {
        DualClass wk = dual_unit(x);
        for (std::size_t i = 0; i < k; ++i) wk = wk * w;
        RatVec coords;
        for (auto b : ring->basis(k)) coords.push_back(wk.coeffs[b]);
        CycleClass image{ring, x.rank() - k, pullback_operator(f, x, k) * coords};
        CHECK(std::holds_alternative<InCone>(psef_member(image)));
        // Its degree against omega^{n-k} is deg_k.
        DualClass rest = dual_unit(x);
        for (std::size_t i = k; i < x.rank(); ++i) rest = rest * w;
        CHECK(pairing(rest, image) == degree_k(f, x, w, k));
      }
    }
  }
}

TEST_CASE("operator norm examples") {
  Fan p2 = projective_space(2);
  TDivisor h = TDivisor::ray(p2, 0);
  NormSpec spec{p2, h, 1};
  CHECK(operator_norm(RatMat(1, 1), spec) == 0);
  CHECK(operator_norm(pullback_operator(MonomialMap::identity(2), p2, 1), spec) == 1);
  CHECK(operator_norm(pullback_operator(MonomialMap(IntMat{{-1, 0}, {0, -1}}), p2, 1), spec) == 2);
  CHECK(operator_norm(pullback_operator(MonomialMap(IntMat{{2, 1}, {1, 1}}), p2, 1), spec) == 3);
  CHECK_THROWS_AS(operator_norm(RatMat(2, 2), spec), std::invalid_argument);
}

TEST_CASE("operator norm is comparable to the degree") {
  Fan x = product_of_projective_spaces({1, 1});
  TDivisor w = bidegree_one(x);
  NormSpec spec{x, w, 1};
  MonomialMap f(IntMat{{1, 1}, {0, 1}});
  std::vector<Rat> ratios;
  for (unsigned p = 1; p <= 4; ++p) {
    MonomialMap fp = f.power(p);
    Rat norm = operator_norm(pullback_operator(fp, x, 1), spec);
    CHECK(norm > 0);
    ratios.push_back(norm / degree_k(fp, x, w, 1));
  }
  auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
  CHECK(*hi <= 10 * *lo);
  // Scaling the polarization leaves the norm unchanged.
  NormSpec doubled{x, Rat(2) * w, 1};
  RatMat m = pullback_operator(f, x, 1);
  CHECK(operator_norm(m, doubled) == operator_norm(m, spec));
}

TEST_CASE("default polarization is the primitive ample class") {
  Fan p2 = projective_space(2);
  CHECK(default_polarization(p2).coeffs == RatVec{0, 0, 1});
  CHECK(top_degree(default_polarization(projective_space(3))) == 1);
  CHECK(top_degree(default_polarization(product_of_projective_spaces({1, 1}))) == 2);
  for (int a = 0; a <= 3; ++a) {
    TDivisor w = default_polarization(hirzebruch(a));
    CHECK(is_ample(w));
    // Halving would leave the Cartier lattice.
    TDivisor half = Rat(1, 2) * w;
    bool integral = true;
    for (std::size_t s = 0; s < w.fan.max_cones().size(); ++s)
      for (const auto& c : local_functional(half, s)) integral = integral && c.get_den() == 1;
    CHECK(!integral);
  }
}

TEST_CASE("refinements carry an ample certificate") {
  std::mt19937 rng(19);
  for (const Fan& x : {projective_space(2), product_of_projective_spaces({1, 1}), hirzebruch(1), projective_space(3)}) {
    for (int t = 0; t < 4; ++t) {
      IntMat a = random_matrix(x.rank(), rng, -2, 2);
      Fan r = common_refinement(x, a);
      auto h = ample_reference(r);
      REQUIRE(h);
      CHECK(is_ample(*h));
    }
  }
}
