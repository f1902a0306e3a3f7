#include <random>
#include <variant>

#include "doctest.h"
#include "degree_lab/lp.hpp"
#include "degree_lab/matrix.hpp"
#include "degree_lab/poly.hpp"

using namespace degree_lab;

namespace {

IntMat random_int(std::mt19937& rng, std::size_t n, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  IntMat m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = d(rng);
  return m;
}

RatMat random_rat(std::mt19937& rng, std::size_t rows, std::size_t cols) {
  std::uniform_int_distribution<int> num(-6, 6), den(1, 5);
  RatMat m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = Rat(num(rng), den(rng));
  return m;
}

// Leibniz expansion, independent of the elimination code.
Int leibniz_det(const IntMat& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  Int total = 0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    Int term = 1;
    for (std::size_t i = 0; i < n; ++i) term *= m(i, perm[i]);
    total += inversions % 2 ? -term : term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

}  // namespace

TEST_CASE("rational parsing and canonical form") {
  CHECK(parse_rat("6/4") == Rat(3, 2));
  CHECK(parse_rat("-3") == Rat(-3));
  CHECK(to_string(Rat(6, -4)) == "-3/2");
  CHECK(to_string(Rat(4, 2)) == "2");
  CHECK_THROWS_AS(parse_rat("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rat("x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rat(""), std::invalid_argument);
}

TEST_CASE("primitive vectors") {
  CHECK(primitive(RatVec{Rat(2, 3), Rat(4, 3)}) == IntVec{1, 2});
  CHECK(primitive(IntVec{-4, 6}) == IntVec{-2, 3});
}

TEST_CASE("root bounds bracket") {
  auto r = root_bounds(Rat(2), 2, Rat(1, 1000));
  CHECK(r.width() <= Rat(1, 1000));
  CHECK(pow(r.lo, 2) <= 2);
  CHECK(pow(r.hi, 2) >= 2);
  auto e = root_bounds(Rat(8, 27), 3, Rat(1, 10));
  CHECK(e.is_point());
  CHECK(e.lo == Rat(2, 3));
}

TEST_CASE("ext_power examples") {
  CHECK(ext_power(IntMat::identity(3), 2) == IntMat::identity(3));
  CHECK(ext_power(IntMat{{2, 1}, {1, 1}}, 2) == IntMat{{1}});
  CHECK(ext_power(IntMat{{5, 7}, {3, -1}}, 0) == IntMat{{1}});
  CHECK_THROWS(ext_power(IntMat::identity(2), 3));
}

TEST_CASE("ext_power agrees with Leibniz minors") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    IntMat a = random_int(rng, 4, -3, 3);
    IntMat e = ext_power(a, 2);
    auto subsets = k_subsets(4, 2);
    for (std::size_t i = 0; i < subsets.size(); ++i)
      for (std::size_t j = 0; j < subsets.size(); ++j) {
        IntMat minor(2, 2);
        for (std::size_t r = 0; r < 2; ++r)
          for (std::size_t c = 0; c < 2; ++c)
            minor(r, c) = a(static_cast<std::size_t>(subsets[i][r]), static_cast<std::size_t>(subsets[j][c]));
        CHECK(e(i, j) == leibniz_det(minor));
      }
    CHECK(ext_power(a, 4)(0, 0) == leibniz_det(a));
  }
}

TEST_CASE("Cauchy-Binet for exterior powers") {
  std::mt19937 rng(7);
  for (std::size_t n : {3U, 4U}) {
    for (int trial = 0; trial < 4; ++trial) {
      IntMat a = random_int(rng, n, -4, 4);
      IntMat b = random_int(rng, n, -4, 4);
      for (std::size_t k = 0; k <= n; ++k) CHECK(ext_power(a, k) * ext_power(b, k) == ext_power(a * b, k));
    }
  }
}

TEST_CASE("determinant and inverse") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 6; ++trial) {
    IntMat a = random_int(rng, 4, -5, 5);
    CHECK(determinant(a) == leibniz_det(a));
    CHECK(determinant(to_rat(a)) == Rat(leibniz_det(a)));
    if (determinant(a) != 0) CHECK(to_rat(a) * inverse(to_rat(a)) == RatMat::identity(4));
  }
  CHECK_THROWS_AS(inverse(RatMat{{1, 2}, {2, 4}}), std::domain_error);
}

TEST_CASE("nullspace vectors are annihilated") {
  RatMat m{{1, 2, 3}, {2, 4, 6}};
  auto ns = nullspace(m);
  CHECK(ns.size() == 2);
  for (const auto& v : ns) CHECK(m * v == RatVec{0, 0});
  CHECK(rank(m) == 1);
}

TEST_CASE("char_poly examples") {
  CHECK(char_poly(RatMat{{2, 1}, {1, 1}}).coeffs() == RatVec{1, -3, 1});
  CHECK(char_poly(RatMat(2, 2)).coeffs() == RatVec{0, 0, 1});
  CHECK(char_poly(RatMat::identity(2)).coeffs() == RatVec{1, -2, 1});
  CHECK_THROWS_AS(char_poly(RatMat(2, 3)), std::invalid_argument);
}

TEST_CASE("Cayley-Hamilton on random rational matrices") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 8; ++trial) {
    RatMat m = random_rat(rng, 3, 3);
    UniPoly p = char_poly(m);
    CHECK(p.degree() == 3);
    CHECK(p.leading() == 1);
    CHECK(p(m) == RatMat(3, 3));
    CHECK(p.coeff(0) == -determinant(m));
  }
}

TEST_CASE("perron_radius examples") {
  UniPoly p(RatVec{1, -3, 1});
  Interval r = perron_radius(p, Rat(1, 1000));
  CHECK(r.width() <= Rat(1, 1000));
  // (3 + sqrt 5)/2: lo below the root and hi above, by sign of p and position
  // relative to the other root (3 - sqrt 5)/2 < 1.
  CHECK(r.lo > 1);
  CHECK(p(r.lo) <= 0);
  CHECK(p(r.hi) >= 0);

  Interval two = perron_radius(UniPoly(RatVec{-2, 1}), Rat(1, 3));
  CHECK(two.lo == 2);
  CHECK(two.hi == 2);

  Interval zero = perron_radius(UniPoly(RatVec{0, 0, 1}), Rat(1, 10));
  CHECK(zero.lo == 0);
  CHECK(zero.hi == 0);

  CHECK_THROWS_AS(perron_radius(p, Rat(0)), std::invalid_argument);
  CHECK_THROWS_AS(perron_radius(UniPoly(RatVec{5}), Rat(1)), std::invalid_argument);
}

TEST_CASE("perron_radius shrinks with tol and keeps the root") {
  UniPoly p(RatVec{1, -3, 1});
  Rat prev_width = -1;
  for (int e = 1; e <= 6; ++e) {
    Rat tol = Rat(1, pow(Int(10), static_cast<unsigned>(e)));
    Interval r = perron_radius(p, tol);
    CHECK(r.width() <= tol);
    if (prev_width >= 0) CHECK(r.width() <= prev_width);
    prev_width = r.width();
    CHECK(p(r.lo) <= 0);
    CHECK(p(r.hi) >= 0);
  }
}

TEST_CASE("perron_radius on exterior-power spectra") {
  // [[2,0],[1,3]] has eigenvalues 2 and 3; its square 4 and 9.
  IntMat a{{2, 0}, {1, 3}};
  Interval r = perron_radius(char_poly(a), Rat(1, 100));
  CHECK(r.lo == 3);
  CHECK(r.hi == 3);
  Interval r2 = perron_radius(char_poly(ext_power(a, 2)), Rat(1, 100));
  CHECK(r2.lo == 6);
  CHECK(r2.hi == 6);
  // Complex pair of modulus sqrt 2 dominating a real root 1/2.
  UniPoly q = UniPoly(RatVec{2, -2, 1}) * UniPoly(RatVec{Rat(-1, 2), 1});
  Interval rq = perron_radius(q, Rat(1, 1000));
  CHECK(rq.width() <= Rat(1, 1000));
  CHECK(pow(rq.lo, 2) <= 2);
  CHECK(pow(rq.hi, 2) >= 2);
  // -3 dominates 2 in modulus.
  UniPoly s = UniPoly(RatVec{3, 1}) * UniPoly(RatVec{-2, 1});
  Interval rs = perron_radius(s, Rat(1, 100));
  CHECK(rs.lo == 3);
  CHECK(rs.hi == 3);
}

TEST_CASE("simplest rational in an interval") {
  CHECK(simplest_between(Rat(1, 3), Rat(1, 2)) == Rat(1, 2));
  CHECK(simplest_between(Rat(5, 2), Rat(7, 2)) == 3);
  CHECK(simplest_between(Rat(3, 10), Rat(4, 10)) == Rat(1, 3));
}

TEST_CASE("lp_feasible examples") {
  auto r1 = lp_feasible(RatMat{{1}}, RatVec{1});
  REQUIRE(std::holds_alternative<LpFeasible>(r1));
  CHECK(std::get<LpFeasible>(r1).x == RatVec{1});

  auto r2 = lp_feasible(RatMat{{1}}, RatVec{-1});
  REQUIRE(std::holds_alternative<LpInfeasible>(r2));
  const auto& y = std::get<LpInfeasible>(r2).y;
  CHECK(verify_certificate(RatMat{{1}}, RatVec{-1}, std::get<LpInfeasible>(r2)));
  // y^T A >= 0 with y^T b < 0 forces y = [c], c > 0.
  CHECK(y.size() == 1);
  CHECK(y[0] > 0);

  auto r3 = lp_feasible(RatMat{{1, -1}}, RatVec{0});
  REQUIRE(std::holds_alternative<LpFeasible>(r3));
  CHECK(std::get<LpFeasible>(r3).x == RatVec{0, 0});

  CHECK_THROWS_AS(lp_feasible(RatMat{{1, 2}}, RatVec{1, 2}), std::invalid_argument);
}

TEST_CASE("lp_feasible decides random systems") {
  std::mt19937 rng(19);
  int feasible = 0, infeasible = 0;
  for (int trial = 0; trial < 60; ++trial) {
    RatMat a = random_rat(rng, 3, 4);
    RatVec b = random_rat(rng, 3, 1).column(0);
    auto r = lp_feasible(a, b);
    if (auto* w = std::get_if<LpFeasible>(&r)) {
      CHECK(verify_witness(a, b, *w));
      ++feasible;
    } else {
      CHECK(verify_certificate(a, b, std::get<LpInfeasible>(r)));
      ++infeasible;
    }
  }
  CHECK(feasible > 0);
  CHECK(infeasible > 0);
}

TEST_CASE("lp_feasible on redundant and degenerate rows") {
  RatMat a{{1, 1, 0}, {2, 2, 0}, {0, 1, 1}};
  RatVec b{1, 2, 1};
  auto r = lp_feasible(a, b);
  REQUIRE(std::holds_alternative<LpFeasible>(r));
  CHECK(verify_witness(a, b, std::get<LpFeasible>(r)));
  auto r2 = lp_feasible(a, RatVec{1, 3, 1});
  REQUIRE(std::holds_alternative<LpInfeasible>(r2));
}

TEST_CASE("lp_minimize with duality") {
  // min x + 2y s.t. x + y = 3, x - y + s = 1: y = 3 - x, x <= 2, cost 6 - x.
  RatMat a{{1, 1, 0}, {1, -1, 1}};
  RatVec b{3, 1};
  RatVec c{1, 2, 0};
  auto r = lp_minimize(c, a, b);
  REQUIRE(std::holds_alternative<LpOptimal>(r));
  const auto& opt = std::get<LpOptimal>(r);
  CHECK(opt.value == 4);
  CHECK(opt.x == RatVec{2, 1, 0});
  CHECK(dot(opt.dual, b) == opt.value);
  RatVec reduced = c;
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t i = 0; i < 2; ++i) reduced[j] -= opt.dual[i] * a(i, j);
  for (const auto& v : reduced) CHECK(v >= 0);

  auto unb = lp_minimize(RatVec{-1, 0}, RatMat{{1, -1}}, RatVec{0});
  CHECK(std::holds_alternative<LpUnbounded>(unb));
  auto inf = lp_minimize(RatVec{1}, RatMat{{1}}, RatVec{-1});
  CHECK(std::holds_alternative<LpInfeasible>(inf));
}

TEST_CASE("Schur-Cohn disc test") {
  UniPoly circle(RatVec{1, 0, 1});  // roots +-i
  CHECK_FALSE(roots_inside_disc(circle, Rat(1)));
  CHECK(roots_inside_disc(circle, Rat(101, 100)));
  CHECK_FALSE(roots_inside_disc(circle, Rat(99, 100)));
  UniPoly mixed = UniPoly(RatVec{-2, 1}) * UniPoly(RatVec{Rat(1, 3), 1});
  CHECK(roots_inside_disc(mixed, Rat(21, 10)));
  CHECK_FALSE(roots_inside_disc(mixed, Rat(2)));
}
