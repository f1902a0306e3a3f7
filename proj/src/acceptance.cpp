#include "degree_lab/acceptance.hpp"

#include <chrono>
#include <random>
#include <sstream>

namespace degree_lab {

std::vector<NamedFan> catalog_fans() {
  return {{"P2", projective_space(2)},
          {"P3", projective_space(3)},
          {"P1xP1", product_of_projective_spaces({1, 1})},
          {"P1xP1xP1", product_of_projective_spaces({1, 1, 1})},
          {"F0", hirzebruch(0)},
          {"F1", hirzebruch(1)},
          {"F2", hirzebruch(2)},
          {"F3", hirzebruch(3)},
          {"BlP2", blowup(projective_space(2), IndexSet{0, 1})}};
}

TDivisor multidegree_one(const Fan& x) {
  RatVec c(x.rays().size(), Rat(0));
  for (std::size_t i = 0; i < c.size(); i += 2) c[i] = 1;
  return {x, c};
}

TDivisor f1_polarization() {
  Fan f1 = hirzebruch(1);
  return TDivisor::ray(f1, 1) + Rat(2) * TDivisor::ray(f1, 2);
}

std::vector<NamedMatrix> catalog_surface_maps() {
  return {{"shear", IntMat{{1, 1}, {0, 1}}},
          {"cat", IntMat{{2, 1}, {1, 1}}},
          {"cremona", IntMat{{-1, 0}, {0, -1}}},
          {"triangular", IntMat{{2, 0}, {1, 3}}},
          {"rotation6", IntMat{{0, -1}, {1, 1}}}};
}

namespace {

IntMat random_matrix(std::size_t n, std::mt19937& rng, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  while (true) {
    IntMat a(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = d(rng);
    if (determinant(a) != 0) return a;
  }
}

}  // namespace

std::vector<NamedMatrix> oracle_matrices() {
  std::vector<NamedMatrix> out{{"cat", IntMat{{2, 1}, {1, 1}}},
                               {"shear", IntMat{{1, 1}, {0, 1}}},
                               {"minus_identity", IntMat{{-1, 0}, {0, -1}}},
                               {"triangular", IntMat{{2, 0}, {1, 3}}},
                               {"rotation6", IntMat{{0, -1}, {1, 1}}},
                               {"det5", IntMat{{1, 2}, {2, -1}}},
                               {"tribonacci", IntMat{{1, 1, 0}, {0, 1, 1}, {1, 0, 0}}}};
  std::mt19937 rng(2024);
  for (int i = 0; i < 3; ++i) out.push_back({"random3_" + std::to_string(i), random_matrix(3, rng, -2, 2)});
  return out;
}

std::vector<CatalogFibration> catalog_fibrations() {
  Fan p1p1 = product_of_projective_spaces({1, 1});
  Fan p1 = projective_space(1);
  Fan cube = product_of_projective_spaces({1, 1, 1});
  CatalogFibration surface{"P1xP1->P1",
                           Fibration(p1p1, p1, IntMat{{1, 0}}),
                           multidegree_one(p1p1),
                           TDivisor::ray(p1, 0),
                           {{"triangular", IntMat{{2, 0}, {1, 3}}},
                            {"shear_down", IntMat{{1, 0}, {1, 1}}},
                            {"flip_base", IntMat{{-1, 0}, {2, 3}}}}};
  CatalogFibration threefold{"P1xP1xP1->P1xP1",
                             Fibration(cube, p1p1, IntMat{{1, 0, 0}, {0, 1, 0}}),
                             multidegree_one(cube),
                             multidegree_one(p1p1),
                             {{"cat_over_line", IntMat{{2, 1, 0}, {1, 1, 0}, {1, 0, 2}}},
                              {"periodic_base", IntMat{{0, -1, 0}, {1, 1, 0}, {1, 0, 3}}}}};
  return {surface, threefold};
}

namespace {

Rat pair_with_beta(const TDivisor& a, const TDivisor& beta) {
  std::vector<TDivisor> ds{a};
  for (std::size_t i = 1; i < a.fan.rank(); ++i) ds.push_back(beta);
  return intersection_number_ring(ds);
}

std::optional<TDivisor> random_nef(const Fan& x, std::mt19937& rng, bool big) {
  std::uniform_int_distribution<int> d(0, 3);
  for (int attempt = 0; attempt < 2000; ++attempt) {
    RatVec c(x.rays().size());
    for (auto& v : c) v = d(rng);
    TDivisor t(x, c);
    if (!is_nef(t)) continue;
    if (big) {
      try {
        polarization_polytope(t);
      } catch (const std::domain_error&) {
        continue;
      }
    }
    return t;
  }
  return std::nullopt;
}

}  // namespace

std::vector<SiuInstance> siu_catalog() {
  struct Slot {
    std::string name;
    Fan fan;
    std::vector<std::size_t> ks;
    int count;
  };
  std::vector<Slot> slots{{"P3", projective_space(3), {1, 2}, 14},
                          {"BlP3", blowup(projective_space(3), IndexSet{0, 1, 2}), {1, 2}, 12},
                          {"F1", hirzebruch(1), {1, 2}, 12},
                          {"BlF1", blowup(hirzebruch(1), IndexSet{0, 1}), {1, 2}, 12}};
  std::mt19937 rng(1337);
  std::vector<SiuInstance> out;
  for (const auto& s : slots) {
    for (int i = 0; i < s.count; ++i) {
      std::size_t k = s.ks[static_cast<std::size_t>(i) % s.ks.size()];
      auto beta = random_nef(s.fan, rng, true);
      if (!beta) throw std::logic_error("siu_catalog: no big nef divisor found on " + s.name);
      std::vector<TDivisor> factors;
      while (factors.size() < k) {
        auto a = random_nef(s.fan, rng, false);
        if (!a) throw std::logic_error("siu_catalog: no nef divisor found on " + s.name);
        if (pair_with_beta(*a, *beta) > 0) factors.push_back(*a);
      }
      out.push_back({s.name + "/k" + std::to_string(k) + "/" + std::to_string(i), s.fan, factors, *beta});
    }
  }
  return out;
}

namespace {

using Clock = std::chrono::steady_clock;

DualClass random_dual(const Fan& f, std::size_t codim, std::mt19937& rng) {
  std::uniform_int_distribution<int> d(-3, 3);
  auto ring = chow_ring(f);
  RatVec c(ring->dim(codim));
  for (auto& v : c) v = d(rng);
  return psi_inverse(CycleClass{ring, f.rank() - codim, c});
}

CycleClass random_cycle(const Fan& f, std::size_t dim, std::mt19937& rng) {
  std::uniform_int_distribution<int> d(-3, 3);
  auto ring = chow_ring(f);
  RatVec c(ring->dim(f.rank() - dim));
  for (auto& v : c) v = d(rng);
  return CycleClass{ring, dim, c};
}

bool is_zero(const RatVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rat& x) { return x == 0; });
}

CriterionResult intersection_routes() {
  CriterionResult r{1, "intersection numbers: mixed-volume route = ring route", false, {}, 0, 120};
  std::mt19937 rng(101);
  std::uniform_int_distribution<int> d(-2, 2);
  auto fans = catalog_fans();
  int mismatches = 0, total = 500;
  for (int t = 0; t < total; ++t) {
    const Fan& x = fans[static_cast<std::size_t>(t) % fans.size()].fan;
    std::vector<TDivisor> ds;
    for (std::size_t i = 0; i < x.rank(); ++i) {
      RatVec c(x.rays().size());
      for (auto& v : c) v = d(rng);
      ds.emplace_back(x, c);
    }
    if (intersection_number_ring(ds) != intersection_number_nef(ds)) ++mismatches;
  }
  r.pass = mismatches == 0;
  r.detail = std::to_string(total) + " tuples over " + std::to_string(fans.size()) + " fans, " +
             std::to_string(mismatches) + " mismatches";
  return r;
}

CriterionResult submultiplicativity() {
  CriterionResult r{2, "deg_k(f o g) <= (n-k+1)^k/(omega^n) deg_k(f) deg_k(g)", false, {}, 0, 300};
  std::mt19937 rng(202);
  Fan p2 = projective_space(2), cube = product_of_projective_spaces({1, 1, 1});
  TDivisor h = TDivisor::ray(p2, 0), w = multidegree_one(cube);
  int pairs = 200, checks = 0, violations = 0;
  std::string first;
  for (int t = 0; t < pairs; ++t) {
    bool plane = t % 2 == 0;
    const Fan& x = plane ? p2 : cube;
    const TDivisor& omega = plane ? h : w;
    MonomialMap f(random_matrix(x.rank(), rng, -3, 3)), g(random_matrix(x.rank(), rng, -3, 3));
    for (std::size_t k = 0; k <= x.rank(); ++k) {
      SubmultReport s = check_submultiplicativity(f, g, x, omega, k);
      ++checks;
      if (!s.pass) {
        ++violations;
        if (first.empty()) first = "; first violation: " + to_string(s.lhs) + " > " + to_string(s.rhs);
      }
    }
  }
  r.pass = violations == 0;
  r.detail = std::to_string(pairs) + " pairs, " + std::to_string(checks) + " comparisons, " +
             std::to_string(violations) + " violations" + first;
  return r;
}

CriterionResult polarization() {
  CriterionResult r{3, "degree ratio under O(1,1) vs O(1,2) stays within the explicit constant", false, {}, 0, 0};
  Fan p1p1 = product_of_projective_spaces({1, 1});
  RatVec c{1, 0, 2, 0};
  TDivisor omega = multidegree_one(p1p1), omega_prime(p1p1, c);
  MonomialMap f(IntMat{{2, 1}, {1, 1}});
  r.pass = true;
  std::ostringstream out;
  for (std::size_t k = 0; k <= 2; ++k) {
    PolarizationReport p = check_polarization_comparison(f, p1p1, omega, omega_prime, k, 8);
    r.pass = r.pass && p.pass;
    auto [lo, hi] = std::minmax_element(p.ratios.begin(), p.ratios.end());
    out << "k=" << k << ": ratios in [" << to_string(*lo) << ", " << to_string(*hi) << "] within ["
        << to_string(p.lower) << ", " << to_string(p.upper) << "]; ";
  }
  r.detail = out.str() + "p <= 8";
  return r;
}

CriterionResult siu() {
  CriterionResult r{4, "Siu inequality in codimension k with constant (n-k+1)^k", false, {}, 0, 180};
  auto cat = siu_catalog();
  int failed = 0, over_binomial = 0, unverified = 0;
  Rat worst = 0;
  for (const auto& inst : cat) {
    SiuReport s = siu_check(inst.fan, inst.factors, inst.beta);
    if (!s.pass) ++failed;
    if (!s.c_min_within_binomial) ++over_binomial;
    if (!verify_siu(s)) ++unverified;
    worst = std::max(worst, Rat(s.c_min / Rat(binomial(static_cast<unsigned>(inst.fan.rank()),
                                                        static_cast<unsigned>(inst.factors.size())))));
  }
  r.pass = failed == 0 && over_binomial == 0 && unverified == 0;
  r.detail = std::to_string(cat.size()) + " instances, " + std::to_string(failed) + " failures, " +
             std::to_string(over_binomial) + " with c_min > binomial(n,k), " + std::to_string(unverified) +
             " unverifiable; max c_min/binomial = " + to_string(worst);
  return r;
}

CriterionResult oracle() {
  CriterionResult r{5, "dynamical-degree intervals overlap exterior-power spectral radii", false, {}, 0, 0};
  const Rat tol(1, 100);
  int checks = 0, misses = 0;
  std::string first;
  for (const auto& m : oracle_matrices()) {
    const std::size_t n = m.matrix.rows();
    Fan pn = projective_space(n);
    TDivisor h = TDivisor::ray(pn, 0);
    MonomialMap f(m.matrix);
    for (std::size_t k = 0; k <= n; ++k) {
      LambdaEstimate e = dynamical_degree(f, pn, h, k, tol);
      Interval s = exterior_spectral_radius(to_rat(m.matrix), k, tol);
      ++checks;
      if (!overlaps(e.certified, s, tol)) {
        ++misses;
        if (first.empty())
          first = "; first miss " + m.name + " k=" + std::to_string(k) + ": [" + to_decimal(e.certified.lo) + ", " +
                  to_decimal(e.certified.hi) + "] vs [" + to_decimal(s.lo) + ", " + to_decimal(s.hi) + "]";
      }
    }
  }
  r.pass = misses == 0;
  r.detail = "10 matrices, " + std::to_string(checks) + " (matrix, k) cells, " + std::to_string(misses) + " misses" + first;
  return r;
}

CriterionResult product_formula() {
  CriterionResult r{6, "lambda_k(f) = max_j lambda_{k-j}(g) lambda_j(f, X/Y)", false, {}, 0, 0};
  const Rat tol(1, 50);
  int checks = 0, failures = 0;
  bool closed_form = true;
  std::string first;
  for (const auto& fib : catalog_fibrations()) {
    for (const auto& m : fib.maps) {
      MonomialMap f(m.matrix);
      const std::size_t n = fib.q.source.rank();
      for (std::size_t k = 0; k <= n; ++k) {
        ProductFormulaReport p = check_product_formula(f, fib.q, fib.omega_x, fib.omega_y, k, default_pmax(n), tol);
        ++checks;
        if (!p.pass) {
          ++failures;
          if (first.empty()) first = "; first failure " + fib.name + "/" + m.name + " k=" + std::to_string(k);
        }
        if (m.name == "triangular" && (k == 1 || k == 2)) {
          const Rat expect = k == 1 ? 3 : 6;
          auto mid = [](const Interval& iv) { return Rat((iv.lo + iv.hi) / 2); };
          closed_form = closed_form && mid(p.lhs.tail) == expect && mid(p.rhs_tail) == expect;
        }
      }
    }
  }
  r.pass = failures == 0 && closed_form;
  r.detail = "5 maps, " + std::to_string(checks) + " (map, k) cells, " + std::to_string(failures) +
             " failures; closed-form midpoints 3 and 6 " + (closed_form ? "exact" : "MISMATCH") + first;
  return r;
}

CriterionResult mixed_recursion() {
  CriterionResult r{7, "mixed-degree recursion has a finite constant and diagonal domination", false, {}, 0, 0};
  int checks = 0, failures = 0;
  Rat worst = 1;
  for (const auto& fib : catalog_fibrations())
    for (const auto& m : fib.maps)
      for (std::size_t k = 0; k <= fib.q.source.rank(); ++k) {
        MixedRecursionReport mr = check_mixed_recursion(MonomialMap(m.matrix), fib.q, fib.omega_x, fib.omega_y, k, 6);
        ++checks;
        if (!mr.pass) ++failures;
        if (mr.finite) worst = std::max(worst, mr.constant);
      }
  r.pass = failures == 0;
  r.detail = std::to_string(checks) + " (map, k) cells, " + std::to_string(failures) + " failures; largest C = " +
             to_string(worst);
  return r;
}

CriterionResult operator_window() {
  CriterionResult r{8, "operator norm / degree ratios bounded on p <= 6 (empirical window)", false, {}, 0, 0};
  Fan p1p1 = product_of_projective_spaces({1, 1});
  std::vector<std::pair<std::string, TDivisor>> spaces{{"P1xP1", multidegree_one(p1p1)}, {"F1", f1_polarization()}};
  int checks = 0, failures = 0;
  Rat worst = 0;
  for (const auto& [name, omega] : spaces)
    for (const auto& m : catalog_surface_maps()) {
      OperatorDegreeReport o = check_operator_degree_equivalence(MonomialMap(m.matrix), omega.fan, omega, 1, 6);
      ++checks;
      if (o.truncated || o.spread > 10) ++failures;
      worst = std::max(worst, o.spread);
    }
  r.pass = failures == 0;
  r.detail = std::to_string(checks) + " (space, map) pairs, " + std::to_string(failures) +
             " failures; largest max/min ratio = " + to_string(worst);
  return r;
}

CriterionResult cone_sanity() {
  CriterionResult r{9, "psef saliency, pairing nondegeneracy, psi invertibility, projection formula", false, {}, 0, 0};
  std::mt19937 rng(909);
  int issues = 0, refinements = 0;
  auto check_fan = [&](const Fan& f, bool full) {
    const std::size_t n = f.rank();
    for (std::size_t k = 0; k <= n; ++k) {
      if (determinant(pairing_matrix(f, k)) == 0) ++issues;
      DualClass a = random_dual(f, k, rng);
      if (psi_inverse(psi(a)) != a) ++issues;
      CycleClass z = random_cycle(f, n - k, rng);
      if (psi(psi_inverse(z)) != z) ++issues;
      if (!full) continue;
      for (int t = 0; t < 3; ++t) {
        CycleClass y = random_cycle(f, k, rng);
        if (t == 0) y.coords.assign(y.coords.size(), Rat(0));
        bool in_p = std::holds_alternative<InCone>(psef_member(y));
        bool in_q = std::holds_alternative<InCone>(psef_member(Rat(-1) * y));
        if ((in_p && in_q) != is_zero(y.coords)) ++issues;
      }
    }
  };
  auto fans = catalog_fans();
  for (const auto& nf : fans) check_fan(nf.fan, true);
  for (int t = 0; t < 100; ++t) {
    const Fan& base = fans[static_cast<std::size_t>(t) % fans.size()].fan;
    const std::size_t n = base.rank();
    Fan fine = base;
    if (n == 3 || t % 2 == 1) {
      std::uniform_int_distribution<std::size_t> pick(0, base.max_cones().size() - 1);
      IndexSet cone = base.max_cones()[pick(rng)];
      if (t % 3 == 0 && cone.size() > 2) cone.pop_back();
      fine = blowup(base, cone);
    } else {
      fine = common_refinement(base, random_matrix(n, rng, -2, 2));
    }
    if (!refines(fine, base)) ++issues;
    check_fan(fine, false);
    for (std::size_t k = 0; k <= n; ++k)
      for (std::size_t p = 0; p <= k; ++p) {
        DualClass a = random_dual(base, p, rng);
        CycleClass z = random_cycle(fine, k, rng);
        CycleClass lhs = pushforward_cycles(base, cap(pullback_dual(a, IntMat::identity(n), fine), z));
        CycleClass rhs = cap(a, pushforward_cycles(base, z));
        if (lhs != rhs) ++issues;
      }
    ++refinements;
  }
  r.pass = issues == 0;
  r.detail = std::to_string(fans.size()) + " catalog fans, " + std::to_string(refinements) + " refinements, " +
             std::to_string(issues) + " violations";
  return r;
}

}  // namespace

CriterionResult run_criterion(int id) {
  static const std::vector<CriterionResult (*)()> table{intersection_routes, submultiplicativity, polarization,
                                                        siu,                 oracle,              product_formula,
                                                        mixed_recursion,     operator_window,     cone_sanity};
  if (id < 1 || id > kCriteria) throw std::out_of_range("no acceptance criterion " + std::to_string(id));
  auto start = Clock::now();
  CriterionResult r;
  try {
    r = table[static_cast<std::size_t>(id - 1)]();
  } catch (const std::exception& e) {
    r.id = id;
    r.title = "criterion " + std::to_string(id);
    r.pass = false;
    r.detail = std::string("error: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  if (r.limit_seconds > 0 && r.seconds > r.limit_seconds) {
    r.pass = false;
    r.detail += "; over the time limit";
  }
  return r;
}

std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids,
                                            const std::function<void(const CriterionResult&)>& report) {
  std::vector<CriterionResult> out;
  for (int id : ids) {
    out.push_back(run_criterion(id));
    if (report) report(out.back());
  }
  return out;
}

std::string format_result(const CriterionResult& r) {
  std::ostringstream out;
  out << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << ' ' << r.title << " (" << std::fixed;
  out.precision(1);
  out << r.seconds << " s";
  if (r.limit_seconds > 0) out << ", limit " << r.limit_seconds << " s";
  out << "): " << r.detail;
  return out.str();
}

}  // namespace degree_lab
