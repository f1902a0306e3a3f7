#include <random>

#include "doctest.h"
#include "degree_lab/polytope.hpp"

using namespace degree_lab;

namespace {

Polytope simplex2() { return Polytope::hull(std::vector<IntVec>{{0, 0}, {1, 0}, {0, 1}}); }
Polytope neg_simplex2() { return Polytope::hull(std::vector<IntVec>{{0, 0}, {-1, 0}, {0, -1}}); }
Polytope square() { return Polytope::hull(std::vector<IntVec>{{0, 0}, {1, 0}, {0, 1}, {1, 1}}); }

// Shoelace formula on a counter-clockwise ordering by angle around the centroid.
Rat shoelace(std::vector<RatVec> pts) {
  Rat cx = 0, cy = 0;
  for (const auto& p : pts) {
    cx += p[0];
    cy += p[1];
  }
  cx /= static_cast<long>(pts.size());
  cy /= static_cast<long>(pts.size());
  auto half = [&](const RatVec& p) { return (p[1] - cy > 0 || (p[1] == cy && p[0] - cx > 0)) ? 0 : 1; };
  std::sort(pts.begin(), pts.end(), [&](const RatVec& a, const RatVec& b) {
    int ha = half(a), hb = half(b);
    if (ha != hb) return ha < hb;
    return (a[0] - cx) * (b[1] - cy) - (a[1] - cy) * (b[0] - cx) > 0;
  });
  Rat twice = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& a = pts[i];
    const auto& b = pts[(i + 1) % pts.size()];
    twice += a[0] * b[1] - a[1] * b[0];
  }
  return abs(twice) / 2;
}

Polytope random_polytope(std::mt19937& rng, std::size_t n, int points, int range) {
  std::uniform_int_distribution<int> d(-range, range);
  std::vector<IntVec> pts;
  for (int i = 0; i < points; ++i) {
    IntVec p(n);
    for (auto& x : p) x = d(rng);
    pts.push_back(p);
  }
  return Polytope::hull(pts);
}

Polytope cube3() {
  std::vector<IntVec> pts;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) pts.push_back({a, b, c});
  return Polytope::hull(pts);
}

}  // namespace

TEST_CASE("hull drops interior and boundary non-vertices") {
  Polytope p = Polytope::hull(std::vector<IntVec>{{0, 0}, {2, 0}, {0, 2}, {2, 2}, {1, 1}, {1, 0}, {0, 1}});
  CHECK(p.vertices() == std::vector<RatVec>{{0, 0}, {0, 2}, {2, 0}, {2, 2}});
  CHECK(p.facets().size() == 4);
  CHECK(p.dim() == 2);
  for (const auto& v : p.vertices()) CHECK(p.contains(v));
  CHECK(p.contains(RatVec{Rat(1, 2), Rat(3, 2)}));
  CHECK_FALSE(p.contains(RatVec{Rat(-1, 2), 1}));
}

TEST_CASE("lower-dimensional hulls") {
  Polytope seg = Polytope::hull(std::vector<IntVec>{{0, 0, 0}, {1, 1, 1}, {2, 2, 2}});
  CHECK(seg.dim() == 1);
  CHECK(seg.vertices().size() == 2);
  CHECK(seg.equations().size() == 2);
  CHECK(volume(seg) == 0);
  CHECK(seg.contains(RatVec{Rat(1, 2), Rat(1, 2), Rat(1, 2)}));
  CHECK_FALSE(seg.contains(RatVec{3, 3, 3}));
  CHECK_FALSE(seg.contains(RatVec{1, 1, 0}));

  Polytope tri = Polytope::hull(std::vector<IntVec>{{0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}});
  CHECK(tri.dim() == 2);
  CHECK(tri.vertices().size() == 4);
  CHECK(volume(tri) == 0);
  CHECK(tri.contains(RatVec{Rat(1, 2), Rat(1, 3), 1}));
  CHECK_FALSE(tri.contains(RatVec{Rat(3, 2), Rat(1, 3), 1}));

  Polytope pt = Polytope::origin(3);
  CHECK(pt.dim() == 0);
  CHECK(pt.vertices().size() == 1);
}

TEST_CASE("minkowski_sum examples") {
  Polytope e1 = Polytope::hull(std::vector<IntVec>{{0, 0}, {1, 0}});
  Polytope e2 = Polytope::hull(std::vector<IntVec>{{0, 0}, {0, 1}});
  CHECK(minkowski_sum(e1, e2) == square());
  CHECK(minkowski_sum(square(), Polytope::origin(2)) == square());
  Polytope hex = minkowski_sum(simplex2(), neg_simplex2());
  Polytope expected = Polytope::hull(std::vector<IntVec>{{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, -1}, {-1, 1}});
  CHECK(hex == expected);
  CHECK(hex.vertices().size() == 6);
  CHECK_THROWS_AS(minkowski_sum(square(), Polytope::origin(3)), std::invalid_argument);
}

TEST_CASE("volume examples") {
  CHECK(volume(square()) == 1);
  CHECK(volume(simplex2()) == Rat(1, 2));
  Polytope hex = minkowski_sum(simplex2(), neg_simplex2());
  CHECK(volume(hex) == 3);
  CHECK(shoelace(hex.vertices()) == 3);
  CHECK(volume(cube3()) == 1);
}

TEST_CASE("volume agrees with placing triangulation and shoelace") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    Polytope p = random_polytope(rng, 2, 8, 5);
    CHECK(volume(p) == triangulation_volume(p));
    if (p.dim() == 2) CHECK(volume(p) == shoelace(p.vertices()));
  }
  for (int trial = 0; trial < 10; ++trial) {
    Polytope p = random_polytope(rng, 3, 10, 3);
    CHECK(volume(p) == triangulation_volume(p));
  }
  for (int trial = 0; trial < 4; ++trial) {
    Polytope p = random_polytope(rng, 4, 9, 2);
    CHECK(volume(p) == triangulation_volume(p));
  }
}

TEST_CASE("facets agree with vertex form") {
  std::mt19937 rng(29);
  for (int trial = 0; trial < 10; ++trial) {
    Polytope p = random_polytope(rng, 3, 9, 3);
    for (const auto& f : p.facets()) {
      // Every facet is tight at >= dim vertices and valid at all of them.
      int tight = 0;
      for (const auto& v : p.vertices()) {
        Rat s = dot(v, f.normal);
        CHECK(s >= f.offset);
        if (s == f.offset) ++tight;
      }
      CHECK(tight >= p.dim());
    }
  }
}

TEST_CASE("mixed_volume examples") {
  std::vector<Polytope> same{simplex2(), simplex2()};
  CHECK(mixed_volume(same) == 1);
  std::vector<Polytope> cremona{simplex2(), neg_simplex2()};
  CHECK(mixed_volume(cremona) == 2);
  CHECK(mixed_volume_serial(cremona) == 2);
  std::vector<Polytope> degenerate{square(), Polytope::origin(2)};
  CHECK(mixed_volume(degenerate) == 0);
  std::vector<Polytope> wrong{square()};
  CHECK_THROWS_AS(mixed_volume(wrong), std::invalid_argument);
}

TEST_CASE("mixed_volume normalization and serial agreement") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 6; ++trial) {
    Polytope p = random_polytope(rng, 3, 7, 2);
    std::vector<Polytope> three{p, p, p};
    CHECK(mixed_volume(three) == 6 * volume(p));
    Polytope q = random_polytope(rng, 3, 6, 2);
    std::vector<Polytope> mixed{p, q, p};
    CHECK(mixed_volume(mixed) == mixed_volume_serial(mixed));
  }
}

TEST_CASE("mixed_volume symmetry on triples") {
  std::mt19937 rng(37);
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<Polytope> b{random_polytope(rng, 3, 5, 2), random_polytope(rng, 3, 5, 2), random_polytope(rng, 3, 5, 2)};
    Rat ref = mixed_volume(b);
    std::vector<int> perm{0, 1, 2};
    while (std::next_permutation(perm.begin(), perm.end())) {
      std::vector<Polytope> p{b[static_cast<std::size_t>(perm[0])], b[static_cast<std::size_t>(perm[1])],
                              b[static_cast<std::size_t>(perm[2])]};
      CHECK(mixed_volume(p) == ref);
    }
  }
}

TEST_CASE("mixed_volume multilinearity") {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 4; ++trial) {
    Polytope p = random_polytope(rng, 2, 5, 3);
    Polytope q = random_polytope(rng, 2, 5, 3);
    Polytope r = random_polytope(rng, 2, 5, 3);
    std::vector<Polytope> base{p, r};
    for (int lambda : {0, 1, 2, 3}) {
      std::vector<Polytope> scaled{p.scaled(Rat(lambda)), r};
      CHECK(mixed_volume(scaled) == lambda * mixed_volume(base));
    }
    std::vector<Polytope> sum{minkowski_sum(p, q), r};
    std::vector<Polytope> qr{q, r};
    CHECK(mixed_volume(sum) == mixed_volume(base) + mixed_volume(qr));
  }
}

TEST_CASE("Alexandrov-Fenchel inequality") {
  std::mt19937 rng(43);
  for (int trial = 0; trial < 6; ++trial) {
    const std::size_t n = trial % 2 ? 3 : 2;
    Polytope p1 = random_polytope(rng, n, 6, 2);
    Polytope p2 = random_polytope(rng, n, 6, 2);
    Polytope r = random_polytope(rng, n, 6, 2);
    auto mv = [&](const Polytope& a, const Polytope& b) {
      std::vector<Polytope> v{a, b};
      if (n == 3) v.push_back(r);
      return mixed_volume(v);
    };
    CHECK(mv(p1, p1) * mv(p2, p2) <= mv(p1, p2) * mv(p1, p2));
  }
}

TEST_CASE("lattice_point_count examples") {
  CHECK(lattice_point_count(square()) == 4);
  CHECK(lattice_point_count(simplex2()) == 3);
  CHECK(lattice_point_count(simplex2().scaled(Rat(2))) == 6);
  CHECK(lattice_point_count(cube3()) == 8);
}

TEST_CASE("Ehrhart leading term approaches volume") {
  // For a lattice polytope with boundary surface S (sum of facet volumes in the
  // lattice-normalized sense) the count is vol m^n + O(m^{n-1}); the bound
  // |count/m^n - vol| <= (#lattice points of boundary)/m^n is checked through
  // the exact Pick relation in the plane.
  std::vector<Polytope> catalog{simplex2(), square(), minkowski_sum(simplex2(), neg_simplex2()),
                                Polytope::hull(std::vector<IntVec>{{0, 0}, {2, 1}, {1, 1}})};
  for (const auto& p : catalog) {
    for (int m : {8, 16}) {
      Polytope mp = p.scaled(Rat(m));
      Int count = lattice_point_count(mp);
      Rat area = volume(mp);
      // Pick: count = area + boundary/2 + 1, so boundary = 2(count - area - 1) >= 0.
      Rat boundary = 2 * (Rat(count) - area - 1);
      CHECK(boundary >= 0);
      Rat err = abs(Rat(count) / (m * m) - volume(p));
      CHECK(err <= (boundary / 2 + 1) / (m * m));
      CHECK(err <= Rat(3 * static_cast<long>(p.vertices().size()), m));
    }
  }
  Polytope c = cube3();
  for (int m : {8, 16}) {
    Int count = lattice_point_count(c.scaled(Rat(m)));
    CHECK(count == (m + 1) * (m + 1) * (m + 1));
    Rat err = abs(Rat(count) / (m * m * m) - 1);
    CHECK(err <= Rat(7, m));
  }
}

TEST_CASE("linear image and translation") {
  IntMat a{{2, 1}, {1, 1}};
  Polytope img = linear_image(a, simplex2());
  CHECK(img == Polytope::hull(std::vector<IntVec>{{0, 0}, {2, 1}, {1, 1}}));
  CHECK(volume(img) == Rat(1, 2));
  CHECK(simplex2().translated(RatVec{1, 1}) == Polytope::hull(std::vector<IntVec>{{1, 1}, {2, 1}, {1, 2}}));
}
