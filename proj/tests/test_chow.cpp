#include <cmath>
#include <random>

#include "doctest.h"
#include "degree_lab/chow.hpp"

using namespace degree_lab;

namespace {

std::vector<std::pair<std::string, Fan>> catalog() {
  std::vector<std::pair<std::string, Fan>> out{
      {"P2", projective_space(2)},
      {"P3", projective_space(3)},
      {"P1xP1", product_of_projective_spaces({1, 1})},
      {"P1xP1xP1", product_of_projective_spaces({1, 1, 1})},
      {"F0", hirzebruch(0)},
      {"F1", hirzebruch(1)},
      {"F2", hirzebruch(2)},
      {"F3", hirzebruch(3)},
      {"BlP2", blowup(projective_space(2), {0, 1})},
      {"BlP3pt", blowup(projective_space(3), {0, 1, 2})},
      {"BlP3line", blowup(projective_space(3), {0, 1})},
      {"P1xP2", product_of_projective_spaces({1, 2})},
  };
  return out;
}

// Weighted plane P(1,2,1): u0 + 2 u1 + u2 = 0; cone {0,2} has index 2.
Fan weighted_plane() { return make_fan({2, {{1, 0}, {0, 1}, {-1, -2}}, {{0, 1}, {1, 2}, {0, 2}}}); }

// Intersection form of a smooth complete toric surface from the angular order
// of its rays: neighbours meet once, D_i^2 = -a_i with u_{i-1} + u_{i+1} = a_i u_i.
RatMat surface_form(const Fan& f) {
  const auto& rays = f.rays();
  const std::size_t r = rays.size();
  std::vector<std::size_t> order(r);
  for (std::size_t i = 0; i < r; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::atan2(rays[a][1].get_d(), rays[a][0].get_d()) < std::atan2(rays[b][1].get_d(), rays[b][0].get_d());
  });
  RatMat m(r, r);
  for (std::size_t k = 0; k < r; ++k) {
    std::size_t prev = order[(k + r - 1) % r], cur = order[k], next = order[(k + 1) % r];
    m(cur, next) = m(next, cur) = 1;
    Int sx = rays[prev][0] + rays[next][0], sy = rays[prev][1] + rays[next][1];
    Int a = rays[cur][0] != 0 ? Int(sx / rays[cur][0]) : Int(sy / rays[cur][1]);
    m(cur, cur) = Rat(-a);
  }
  return m;
}

TDivisor random_divisor(const Fan& f, std::mt19937& rng, int lo = -3, int hi = 3) {
  std::uniform_int_distribution<int> d(lo, hi);
  RatVec c;
  for (std::size_t i = 0; i < f.rays().size(); ++i) c.emplace_back(d(rng));
  return {f, c};
}

CycleClass random_cycle(const Fan& f, std::size_t dim, std::mt19937& rng) {
  std::uniform_int_distribution<int> d(-4, 4);
  CycleClass z = Rat(0) * cycle_basis_element(f, dim, 0);
  for (std::size_t i = 0; i < z.coords.size(); ++i) z.coords[i] = Rat(d(rng), 1 + (d(rng) + 4) % 3);
  return z;
}

DualClass random_dual(const Fan& f, std::size_t codim, std::mt19937& rng) {
  return psi_inverse(random_cycle(f, f.rank() - codim, rng));
}

bool in_cone(const ConeMembership& m) { return std::holds_alternative<InCone>(m); }

IntMat random_unimodular_ish(std::size_t n, std::mt19937& rng) {
  std::uniform_int_distribution<int> d(-2, 2);
  while (true) {
    IntMat a(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = d(rng);
    if (determinant(a) != 0) return a;
  }
}

}  // namespace

TEST_CASE("numerical basis dimensions") {
  CHECK(numerical_basis(projective_space(2), 1).size() == 1);
  CHECK(numerical_basis(projective_space(2), 1).generators.size() == 3);
  CHECK(numerical_basis(hirzebruch(1), 1).size() == 2);
  CHECK(numerical_basis(hirzebruch(1), 1).generators.size() == 4);
  for (const auto& [name, f] : catalog()) {
    CAPTURE(name);
    auto b0 = numerical_basis(f, 0);
    CHECK(b0.size() == 1);
    CHECK(numerical_basis(f, f.rank()).size() == 1);
    // Picard rank of a complete simplicial fan: rays minus rank.
    CHECK(numerical_basis(f, f.rank() - 1).size() == f.rays().size() - f.rank());
  }
  CHECK_THROWS_AS(numerical_basis(projective_space(2), 3), std::out_of_range);
}

TEST_CASE("relation rows vanish on orbit-closure data") {
  // Every relation row, read with [V(sigma)] coefficients, is a combination of
  // the ring relations rescaled column-wise by 1/mult, so both have equal rank.
  Fan f = weighted_plane();
  auto b = numerical_basis(f, 1);
  CHECK(rank(b.relations) == rank(chow_ring(f)->relations(1)));
  CHECK(b.size() == 1);
}

TEST_CASE("intersection number examples") {
  Fan p2 = projective_space(2);
  TDivisor h = TDivisor::ray(p2, 0);
  CHECK(intersection_number({h, h}) == 1);
  CHECK(intersection_number({h, Rat(-1) * h}) == -1);

  Fan f1 = hirzebruch(1);
  TDivisor s = TDivisor::ray(f1, 1);  // e2: the curve of self-intersection -1
  TDivisor f = TDivisor::ray(f1, 2);  // (-1, 1): a fibre
  CHECK(intersection_number({s, s}) == -1);
  CHECK(intersection_number({s, f}) == 1);
  CHECK(intersection_number({f, f}) == 0);

  Fan p3 = projective_space(3);
  TDivisor h3 = TDivisor::ray(p3, 2);
  CHECK(intersection_number({h3, h3, h3}) == 1);

  Fan w = weighted_plane();
  CHECK(intersection_number({TDivisor::ray(w, 0), TDivisor::ray(w, 2)}) == Rat(1, 2));
  CHECK(intersection_number({TDivisor::ray(w, 1), TDivisor::ray(w, 1)}) == 2);
  CHECK(intersection_number({TDivisor::ray(w, 0), TDivisor::ray(w, 0)}) == Rat(1, 2));
}

TEST_CASE("intersection form matches the smooth surface oracle") {
  std::vector<Fan> surfaces{hirzebruch(0), hirzebruch(1), hirzebruch(2), hirzebruch(3),
                            blowup(projective_space(2), {0, 1}),
                            blowup(blowup(projective_space(2), {0, 1}), {0, 3})};
  for (const auto& f : surfaces) {
    RatMat oracle = surface_form(f);
    for (std::size_t i = 0; i < f.rays().size(); ++i)
      for (std::size_t j = 0; j < f.rays().size(); ++j)
        CHECK(intersection_number_ring({TDivisor::ray(f, i), TDivisor::ray(f, j)}) == oracle(i, j));
  }
}

TEST_CASE("product of projective lines") {
  // (a1 H1 + b1 H2)(a2 H1 + b2 H2) = a1 b2 + a2 b1 on P1 x P1.
  Fan f = product_of_projective_spaces({1, 1});
  std::mt19937 rng(7);
  for (int t = 0; t < 20; ++t) {
    TDivisor d1 = random_divisor(f, rng), d2 = random_divisor(f, rng);
    // Rays 0,1 belong to the first factor, 2,3 to the second.
    Rat a1 = d1.coeffs[0] + d1.coeffs[1], b1 = d1.coeffs[2] + d1.coeffs[3];
    Rat a2 = d2.coeffs[0] + d2.coeffs[1], b2 = d2.coeffs[2] + d2.coeffs[3];
    CHECK(intersection_number({d1, d2}) == a1 * b2 + a2 * b1);
  }
}

TEST_CASE("ring and mixed-volume routes agree") {
  std::mt19937 rng(11);
  for (const auto& [name, f] : catalog()) {
    CAPTURE(name);
    REQUIRE(ample_reference(f).has_value());
    for (int t = 0; t < 6; ++t) {
      std::vector<TDivisor> ds;
      for (std::size_t i = 0; i < f.rank(); ++i) ds.push_back(random_divisor(f, rng));
      CHECK(intersection_number_ring(ds) == intersection_number_nef(ds));
    }
  }
}

TEST_CASE("ample reference and nef shift") {
  for (const auto& [name, f] : catalog()) {
    CAPTURE(name);
    auto h = ample_reference(f);
    REQUIRE(h);
    CHECK(is_ample(*h));
    std::mt19937 rng(3);
    TDivisor d = random_divisor(f, rng);
    Rat c = nef_shift(d, *h);
    CHECK(is_nef(d + c * *h));
    if (c > 0) CHECK_FALSE(is_nef(d + (c - Rat(1, 1000)) * *h));
  }
}

TEST_CASE("psi examples and isomorphism") {
  Fan p2 = projective_space(2);
  CHECK(psi(dual_unit(p2)) == fundamental_class(p2));
  DualClass h = dual_class(TDivisor::ray(p2, 0));
  CHECK(psi(h) == orbit_class(p2, {1}));
  CHECK(psi(h * h) == point_class(p2));
  std::mt19937 rng(5);
  for (const auto& [name, f] : catalog()) {
    for (std::size_t k = 0; k <= f.rank(); ++k) {
      CycleClass z = random_cycle(f, k, rng);
      CHECK(psi(psi_inverse(z)) == z);
      DualClass a = random_dual(f, k, rng);
      CHECK(psi_inverse(psi(a)) == a);
    }
  }
}

TEST_CASE("pairing is nondegenerate") {
  for (const auto& [name, f] : catalog()) {
    CAPTURE(name);
    for (std::size_t k = 0; k <= f.rank(); ++k) {
      RatMat m = pairing_matrix(f, k);
      REQUIRE(m.is_square());
      CHECK(determinant(m) != 0);
    }
  }
  CHECK(determinant(pairing_matrix(weighted_plane(), 1)) != 0);
}

TEST_CASE("point class has degree one") {
  for (const auto& [name, f] : catalog()) {
    CHECK(pairing(dual_unit(f), point_class(f)) == 1);
    for (const auto& s : f.max_cones()) CHECK(orbit_class(f, s) == point_class(f));
  }
}

TEST_CASE("psef membership examples") {
  Fan p2 = projective_space(2);
  auto in = psef_member(point_class(p2));
  CHECK(in_cone(in));
  CHECK(verify_membership(point_class(p2), in));
  CycleClass neg = Rat(-1) * point_class(p2);
  auto out = psef_member(neg);
  REQUIRE_FALSE(in_cone(out));
  CHECK(verify_membership(neg, out));

  Fan f1 = hirzebruch(1);
  CycleClass s = orbit_class(f1, {1});
  CHECK(in_cone(psef_member(s)));
  auto ns = psef_member(Rat(-1) * s);
  CHECK_FALSE(in_cone(ns));
  CHECK(verify_membership(Rat(-1) * s, ns));
}

TEST_CASE("psef is salient") {
  std::mt19937 rng(17);
  for (const auto& [name, f] : catalog()) {
    CAPTURE(name);
    for (std::size_t k = 0; k <= f.rank(); ++k) {
      std::vector<CycleClass> probes;
      for (std::size_t i = 0; i < chow_ring(f)->dim(f.rank() - k); ++i) probes.push_back(cycle_basis_element(f, k, i));
      for (int t = 0; t < 4; ++t) probes.push_back(random_cycle(f, k, rng));
      for (const auto& z : probes) {
        auto p = psef_member(z), q = psef_member(Rat(-1) * z);
        CHECK(verify_membership(z, p));
        CHECK(verify_membership(Rat(-1) * z, q));
        bool zero = std::all_of(z.coords.begin(), z.coords.end(), [](const Rat& v) { return v == 0; });
        CHECK((in_cone(p) && in_cone(q)) == zero);
      }
    }
  }
}

TEST_CASE("nef membership") {
  Fan p3 = projective_space(3);
  DualClass h = dual_class(TDivisor::ray(p3, 0));
  DualClass power = dual_unit(p3);
  for (int k = 0; k <= 3; ++k) {
    CHECK(nef_member(power));
    if (k < 3) power = power * h;
  }
  Fan f1 = hirzebruch(1);
  CHECK_FALSE(nef_member(dual_class(TDivisor::ray(f1, 1))));
  CHECK(nef_member(dual_class(TDivisor::ray(f1, 2))));
  CHECK(nef_member(dual_class(TDivisor::zero(f1))));
}

TEST_CASE("nef pairs nonnegatively with psef") {
  std::mt19937 rng(19);
  for (const auto& [name, f] : catalog()) {
    for (int t = 0; t < 5; ++t) {
      TDivisor d = random_divisor(f, rng, 0, 3);
      DualClass a = dual_class(d);
      CHECK(nef_member(a) == is_nef(d));
      if (!nef_member(a)) continue;
      for (const auto& z : psef_generators(f, 1)) CHECK(pairing(a, z) >= 0);
    }
  }
}

TEST_CASE("nef cone generators") {
  for (const auto& [name, f] : catalog()) {
    CAPTURE(name);
    auto gens = nef_cone_generators(f);
    CHECK(gens.size() >= chow_ring(f)->dim(1));
    for (const auto& g : gens) CHECK(nef_member(g));
  }
  CHECK(nef_cone_generators(hirzebruch(1)).size() == 2);
  CHECK(nef_cone_generators(product_of_projective_spaces({1, 1, 1})).size() == 3);
  CHECK(nef_cone_generators(projective_space(3)).size() == 1);
}

TEST_CASE("pushforward examples") {
  Fan p2 = projective_space(2);
  CycleClass z = orbit_class(p2, {1});
  CHECK(pushforward_cycles(p2, z) == z);

  Fan bl = blowup(p2, {0, 1});
  auto e = bl.ray_index(IntVec{1, 1});
  REQUIRE(e);
  CHECK(pushforward_cycles(p2, orbit_class(bl, {*e})) == Rat(0) * orbit_class(p2, {0}));
  CHECK(pushforward_cycles(p2, orbit_class(bl, {0})) == orbit_class(p2, {0}));
  CHECK(pushforward_cycles(p2, point_class(bl)) == point_class(p2));
  CHECK(pushforward_cycles(p2, fundamental_class(bl)) == fundamental_class(p2));
  CHECK_THROWS(pushforward_cycles(bl, orbit_class(p2, {0})));
}

TEST_CASE("pullback examples") {
  Fan p2 = projective_space(2);
  DualClass h = dual_class(TDivisor::ray(p2, 0));
  CHECK(pullback_dual(h, IntMat::identity(2), p2) == h);

  IntMat cremona{{-1, 0}, {0, -1}};
  Fan g = common_refinement(p2, cremona);
  TDivisor hd = TDivisor::ray(p2, 2);
  DualClass pulled = pullback_dual(dual_class(hd), cremona, g);
  TDivisor direct = pullback_divisor(hd, cremona, g);
  CHECK(pulled == dual_class(direct));
  CHECK(pullback_dual(h * h, cremona, g) == pulled * pulled);
  CHECK(degree(pulled * pulled) == 1);
}

TEST_CASE("projection formula on refinements") {
  std::mt19937 rng(23);
  std::vector<Fan> bases{projective_space(2), hirzebruch(1), projective_space(3), product_of_projective_spaces({1, 1, 1})};
  int done = 0;
  for (int t = 0; t < 24; ++t) {
    const Fan& base = bases[static_cast<std::size_t>(t) % bases.size()];
    const std::size_t n = base.rank();
    Fan fine = t % 3 == 0 ? blowup(base, base.max_cones()[static_cast<std::size_t>(t) % base.max_cones().size()])
                           : common_refinement(base, random_unimodular_ish(n, rng));
    REQUIRE(refines(fine, base));
    for (std::size_t k = 0; k <= n; ++k)
      for (std::size_t p = 0; p <= k; ++p) {
        DualClass a = random_dual(base, p, rng);
        CycleClass z = random_cycle(fine, k, rng);
        CycleClass lhs = pushforward_cycles(base, cap(pullback_dual(a, IntMat::identity(n), fine), z));
        CycleClass rhs = cap(a, pushforward_cycles(base, z));
        CHECK(lhs == rhs);
      }
    ++done;
  }
  CHECK(done == 24);
}

TEST_CASE("pullback is a ring homomorphism") {
  std::mt19937 rng(29);
  Fan p2 = projective_space(2);
  IntMat a{{2, 1}, {1, 1}};
  Fan g = common_refinement(p2, a);
  for (int t = 0; t < 5; ++t) {
    DualClass x = random_dual(p2, 1, rng), y = random_dual(p2, 1, rng);
    CHECK(pullback_dual(x * y, a, g) == pullback_dual(x, a, g) * pullback_dual(y, a, g));
  }
}
