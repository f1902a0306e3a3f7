#include "degree_lab/dynamics.hpp"

#include <algorithm>
#include <iostream>
#include <stdexcept>

#include "degree_lab/parallel.hpp"
#include "degree_lab/poly.hpp"

namespace degree_lab {

unsigned default_pmax(std::size_t n) {
  if (n <= 2) return 12;
  if (n == 3) return 8;
  return 5;
}

Rat default_tol() { return Rat(1, 100); }

namespace {

const Rat kRootWidth(1, 1 << 20);

Rat absolute_constant(const TDivisor& omega, std::size_t k) {
  const std::size_t n = omega.fan.rank();
  return pow(Rat(static_cast<long>(n - k + 1)), static_cast<unsigned>(k)) / top_degree(omega);
}

void finish_sequence(DegreeSequence& s) {
  const std::size_t p_max = s.values.size();
  for (std::size_t p = 1; p <= p_max; ++p) {
    s.fekete.push_back(root_bounds(s.constant * s.values[p - 1], static_cast<unsigned>(p), kRootWidth));
    if (p < p_max) s.ratios.push_back(s.values[p] / s.values[p - 1]);
  }
  for (std::size_t p = 1; p < p_max; ++p)
    for (std::size_t q = 1; p + q <= p_max; ++q)
      if (s.values[p + q - 1] > s.constant * s.values[p - 1] * s.values[q - 1]) s.subadditive = false;
}

bool is_periodic(const IntMat& a, unsigned p_max) {
  IntMat power = a;
  const IntMat id = IntMat::identity(a.rows());
  for (unsigned q = 1; q <= p_max; ++q) {
    if (power == id) return true;
    power = power * a;
  }
  return false;
}

Interval tail_range(const DegreeSequence& s) {
  if (s.ratios.empty()) return s.fekete.front();
  const std::size_t w = std::min<std::size_t>(4, s.ratios.size());
  auto first = s.ratios.end() - static_cast<std::ptrdiff_t>(w);
  auto [lo, hi] = std::minmax_element(first, s.ratios.end());
  return {*lo, *hi};
}

Rat fekete_upper(const DegreeSequence& s) {
  Rat best = s.fekete.front().hi;
  for (const auto& iv : s.fekete) best = std::min(best, iv.hi);
  return best;
}

LambdaEstimate exact_estimate(const Rat& value, std::string rule, unsigned p_max, const Rat& tol) {
  LambdaEstimate e;
  e.certified = {value, value};
  e.tail = e.certified;
  e.exact = true;
  e.converged = tol >= 0;
  e.lower_rule = rule;
  e.upper_rule = std::move(rule);
  e.p_max = p_max;
  return e;
}

LambdaEstimate bounded_estimate(const DegreeSequence& s, const Rat& lower, std::string lower_rule, unsigned p_max,
                                const Rat& tol) {
  LambdaEstimate e;
  e.certified = {lower, fekete_upper(s)};
  if (e.certified.lo > e.certified.hi)
    throw std::logic_error("dynamical degree: lower bound " + to_string(e.certified.lo) + " exceeds Fekete bound " +
                           to_string(e.certified.hi));
  e.tail = tail_range(s);
  e.converged = e.certified.width() <= tol;
  e.lower_rule = std::move(lower_rule);
  e.upper_rule = "min_p (C deg(f^p))^(1/p), C = " + to_string(s.constant);
  e.p_max = p_max;
  return e;
}

Rat abs_rat(const Int& v) { return Rat(v < 0 ? Int(-v) : v); }

}  // namespace

DegreeSequence degree_sequence(const MonomialMap& f, const Fan& x, const TDivisor& omega, std::size_t k,
                               unsigned p_max) {
  if (p_max == 0) throw std::invalid_argument("degree_sequence: p_max must be at least 1");
  if (k > x.rank()) throw std::out_of_range("degree_sequence: k exceeds the dimension");
  if (p_max > 24) std::clog << "warning: p_max = " << p_max << " needs large refinements and may run long\n";
  DegreeSequence s;
  s.matrix = f.matrix();
  s.k = k;
  s.constant = absolute_constant(omega, k);
  s.values.assign(p_max, Rat(0));
  parallel_for(p_max, [&](std::size_t i) { s.values[i] = degree_k(f.power(static_cast<unsigned>(i + 1)), x, omega, k); });
  finish_sequence(s);
  return s;
}

DegreeSequence relative_degree_sequence(const MonomialMap& f, const Fibration& q, const TDivisor& omega_x,
                                        const TDivisor& omega_y, std::size_t j, unsigned p_max) {
  if (p_max == 0) throw std::invalid_argument("relative_degree_sequence: p_max must be at least 1");
  const std::size_t e = q.relative_dimension();
  if (j > e) throw std::out_of_range("relative_degree_sequence: j exceeds the relative dimension");
  DegreeSequence s;
  s.matrix = f.matrix();
  s.k = j;
  Rat base = relative_degree_k(MonomialMap::identity(f.dim()), q, omega_x, omega_y, 0);
  s.constant = pow(Rat(static_cast<long>(e - j + 1)), static_cast<unsigned>(j)) / base;
  s.values.assign(p_max, Rat(0));
  parallel_for(p_max, [&](std::size_t i) {
    s.values[i] = relative_degree_k(f.power(static_cast<unsigned>(i + 1)), q, omega_x, omega_y, j);
  });
  finish_sequence(s);
  return s;
}

LambdaEstimate dynamical_degree(const MonomialMap& f, const Fan& x, const TDivisor& omega, std::size_t k,
                                const Rat& tol, unsigned p_max) {
  if (tol <= 0) throw std::invalid_argument("dynamical_degree: tol must be positive");
  const std::size_t n = x.rank();
  if (p_max == 0) p_max = default_pmax(n);
  DegreeSequence s = degree_sequence(f, x, omega, k, p_max);
  const Rat det = abs_rat(determinant(f.matrix()));
  if (k == 0) return exact_estimate(1, "k = 0: deg_0(f^p) = (omega^n) for every p", p_max, tol);
  if (k == n) {
    const Rat top = top_degree(omega);
    for (unsigned p = 1; p <= p_max; ++p)
      if (s.values[p - 1] != pow(det, p) * top) throw std::logic_error("dynamical_degree: top degree is not |det A|^p");
    return exact_estimate(det, "k = n: deg_n(f^p) = |det A|^p (omega^n)", p_max, tol);
  }
  if (is_periodic(f.matrix(), p_max)) return exact_estimate(1, "A^q = I for some q <= p_max", p_max, tol);
  Rat lower = std::max(Rat(1), root_bounds(pow(det, static_cast<unsigned>(k)), static_cast<unsigned>(n), kRootWidth).lo);
  return bounded_estimate(s, lower, "max(1, |det A|^(k/n)) by log-concavity", p_max, tol);
}

LambdaEstimate relative_dynamical_degree(const MonomialMap& f, const Fibration& q, const TDivisor& omega_x,
                                         const TDivisor& omega_y, std::size_t j, const Rat& tol, unsigned p_max) {
  if (tol <= 0) throw std::invalid_argument("relative_dynamical_degree: tol must be positive");
  const std::size_t e = q.relative_dimension();
  if (p_max == 0) p_max = default_pmax(q.source.rank());
  DegreeSequence s = relative_degree_sequence(f, q, omega_x, omega_y, j, p_max);
  if (j == 0) {
    for (const auto& v : s.values)
      if (v != s.values.front()) throw std::logic_error("relative_dynamical_degree: reldeg_0 is not constant");
    return exact_estimate(1, "j = 0: reldeg_0(f^p) = (omega_X^e . q^* omega_Y^l)", p_max, tol);
  }
  if (j == e) {
    const Rat det = abs_rat(determinant(f.matrix())) / abs_rat(determinant(base_map(f, q).matrix()));
    const Rat start = relative_degree_k(MonomialMap::identity(f.dim()), q, omega_x, omega_y, e);
    bool geometric = true;
    for (unsigned p = 1; p <= p_max; ++p) geometric = geometric && s.values[p - 1] == pow(det, p) * start;
    if (geometric) return exact_estimate(det, "j = e: reldeg_e(f^p) = |det A / det D|^p reldeg_e(id)", p_max, tol);
  }
  if (is_periodic(f.matrix(), p_max)) return exact_estimate(1, "A^q = I for some q <= p_max", p_max, tol);
  for (const auto& v : s.values)
    if (v <= 0) throw std::logic_error("relative_dynamical_degree: nonpositive relative degree");
  return bounded_estimate(s, 1, "1: positive lattice mixed volumes", p_max, tol);
}

Interval exterior_spectral_radius(const RatMat& a, std::size_t k, const Rat& tol) {
  if (k == 0) return {1, 1};
  if (k > a.rows()) return {0, 0};
  Int den = 1;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) den = lcm(den, a(i, j).get_den());
  RatMat scaled = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) scaled(i, j) *= Rat(den);
  const Rat factor = pow(Rat(den), static_cast<unsigned>(k));
  Interval r = perron_radius(char_poly(ext_power(to_int(scaled), k)), tol * factor);
  return {r.lo / factor, r.hi / factor};
}

SubmultReport check_submultiplicativity(const MonomialMap& f, const MonomialMap& g, const Fan& x,
                                        const TDivisor& omega, std::size_t k) {
  SubmultReport r;
  r.k = k;
  r.lhs = degree_k(compose(f, g), x, omega, k);
  r.deg_f = degree_k(f, x, omega, k);
  r.deg_g = degree_k(g, x, omega, k);
  r.constant = absolute_constant(omega, k);
  r.rhs = r.constant * r.deg_f * r.deg_g;
  r.pass = r.lhs <= r.rhs;
  return r;
}

PolarizationReport check_polarization_comparison(const MonomialMap& f, const Fan& x, const TDivisor& omega,
                                                 const TDivisor& omega_prime, std::size_t k, unsigned p_max) {
  const std::size_t n = x.rank();
  if (k > n) throw std::out_of_range("check_polarization_comparison: k exceeds the dimension");
  PolarizationReport r;
  r.k = k;
  Polytope p = polarization_polytope(omega), pp = polarization_polytope(omega_prime);
  auto mv = [&](std::size_t a) {
    std::vector<Polytope> b(n - a, p);
    b.insert(b.end(), a, pp);
    return mixed_volume(b);
  };
  const Rat wn = mv(0), wpn = mv(n);
  const Rat big_k = pow(Rat(static_cast<long>(n - k + 1)), static_cast<unsigned>(2 * k));
  const Rat big_n = mv(k) * mv(n - k);
  r.lower = wn * wn / (big_k * big_n);
  r.upper = big_k * big_n / (wpn * wpn);
  r.symmetric_constant = big_k * big_n / (wn * wpn);
  r.pass = true;
  r.symmetric_holds = true;
  r.deg_omega.assign(p_max, Rat(0));
  r.deg_omega_prime.assign(p_max, Rat(0));
  parallel_for(p_max, [&](std::size_t i) {
    MonomialMap fp = f.power(static_cast<unsigned>(i + 1));
    r.deg_omega[i] = degree_k(fp, x, omega, k);
    r.deg_omega_prime[i] = degree_k(fp, x, omega_prime, k);
  });
  for (unsigned i = 0; i < p_max; ++i) {
    Rat ratio = r.deg_omega[i] / r.deg_omega_prime[i];
    r.ratios.push_back(ratio);
    r.pass = r.pass && r.lower <= ratio && ratio <= r.upper;
    r.symmetric_holds = r.symmetric_holds && 1 / r.symmetric_constant <= ratio && ratio <= r.symmetric_constant;
  }
  return r;
}

namespace {

struct SiuLp {
  RatMat a;
  RatVec b;
  RatVec c;
};

SiuLp siu_lp(const Fan& x, const CycleClass& beta_k, const CycleClass& alpha) {
  auto gens = psef_generators(x, alpha.dim);
  const std::size_t rows = alpha.coords.size();
  SiuLp lp{RatMat(rows, gens.size() + 1), alpha.coords, RatVec(gens.size() + 1, Rat(0))};
  lp.c[0] = 1;
  for (std::size_t i = 0; i < rows; ++i) {
    lp.a(i, 0) = beta_k.coords[i];
    for (std::size_t j = 0; j < gens.size(); ++j) lp.a(i, j + 1) = -gens[j].coords[i];
  }
  return lp;
}

struct SiuClasses {
  DualClass alpha, beta_k;
  Rat alpha_beta, beta_n;
};

SiuClasses siu_classes(const Fan& x, const std::vector<TDivisor>& factors, const TDivisor& beta) {
  const std::size_t n = x.rank(), k = factors.size();
  DualClass alpha = product(x, factors);
  DualClass b = dual_class(beta);
  DualClass beta_k = dual_unit(x), rest = dual_unit(x);
  for (std::size_t i = 0; i < k; ++i) beta_k = beta_k * b;
  for (std::size_t i = k; i < n; ++i) rest = rest * b;
  return {alpha, beta_k, degree(alpha * rest), degree(beta_k * rest)};
}

}  // namespace

SiuReport siu_check(const Fan& x, const std::vector<TDivisor>& factors, const TDivisor& beta) {
  const std::size_t n = x.rank(), k = factors.size();
  if (k == 0 || k > n) throw std::invalid_argument("siu_check: need between 1 and n factors");
  for (const auto& a : factors) {
    if (!(a.fan == x)) throw std::invalid_argument("siu_check: factor on a different fan");
    if (!is_nef(a)) throw std::invalid_argument("siu_check: factor is not nef");
  }
  if (!(beta.fan == x)) throw std::invalid_argument("siu_check: beta on a different fan");
  try {
    polarization_polytope(beta);
  } catch (const std::domain_error& e) {
    throw std::invalid_argument(std::string("siu_check: beta is not big and nef: ") + e.what());
  }
  SiuReport r{x, factors, beta, k, {}, {}, {}, InCone{}, false, {}, {}, {}, false};
  SiuClasses cl = siu_classes(x, factors, beta);
  r.siu_constant = pow(Rat(static_cast<long>(n - k + 1)), static_cast<unsigned>(k));
  r.scale = r.siu_constant * cl.alpha_beta / cl.beta_n;
  r.difference = psi(r.scale * cl.beta_k - cl.alpha);
  r.verdict = psef_member(r.difference);
  r.pass = std::holds_alternative<InCone>(r.verdict);

  SiuLp lp = siu_lp(x, psi(cl.beta_k), psi(cl.alpha));
  auto res = lp_minimize(lp.c, lp.a, lp.b);
  auto* opt = std::get_if<LpOptimal>(&res);
  if (!opt) throw std::logic_error("siu_check: multiplier LP has no optimum");
  r.c_min_witness = opt->x;
  r.c_min_dual = opt->dual;
  r.c_min = cl.alpha_beta == 0 ? Rat(0) : opt->value * cl.beta_n / cl.alpha_beta;
  r.c_min_within_binomial = r.c_min <= Rat(binomial(static_cast<unsigned>(n), static_cast<unsigned>(k)));
  return r;
}

bool verify_siu(const SiuReport& r) {
  if (!verify_membership(r.difference, r.verdict)) return false;
  SiuClasses cl = siu_classes(r.fan, r.factors, r.beta);
  if (psi(r.scale * cl.beta_k - cl.alpha) != r.difference) return false;
  SiuLp lp = siu_lp(r.fan, psi(cl.beta_k), psi(cl.alpha));
  if (!verify_witness(lp.a, lp.b, LpFeasible{r.c_min_witness})) return false;
  // Dual feasibility c - A^T y >= 0 with y^T b equal to the primal value.
  const RatVec& y = r.c_min_dual;
  if (y.size() != lp.a.rows()) return false;
  for (std::size_t j = 0; j < lp.a.cols(); ++j) {
    Rat reduced = lp.c[j];
    for (std::size_t i = 0; i < lp.a.rows(); ++i) reduced -= lp.a(i, j) * y[i];
    if (reduced < 0) return false;
  }
  if (dot(y, lp.b) != r.c_min_witness[0]) return false;
  Rat expected = cl.alpha_beta == 0 ? Rat(0) : r.c_min_witness[0] * cl.beta_n / cl.alpha_beta;
  return expected == r.c_min;
}

namespace {

Interval interval_max(const Interval& a, const Interval& b) { return {std::max(a.lo, b.lo), std::max(a.hi, b.hi)}; }

}  // namespace

ProductFormulaReport check_product_formula(const MonomialMap& f, const Fibration& q, const TDivisor& omega_x,
                                           const TDivisor& omega_y, std::size_t k, unsigned p_max, const Rat& tol) {
  const std::size_t n = q.source.rank(), l = q.target.rank(), e = q.relative_dimension();
  if (k > n) throw std::out_of_range("check_product_formula: k exceeds the dimension");
  MonomialMap g = base_map(f, q);
  RatMat fiber = fiber_block(f, q);
  ProductFormulaReport r;
  r.k = k;
  r.lhs = dynamical_degree(f, q.source, omega_x, k, tol, p_max);
  const std::size_t j_lo = k > l ? k - l : 0, j_hi = std::min(k, e);
  r.lower_bound_holds = true;
  bool first = true;
  for (std::size_t j = j_lo; j <= j_hi; ++j) {
    ProductTerm t;
    t.j = j;
    t.base = dynamical_degree(g, q.target, omega_y, k - j, tol, p_max);
    t.relative = relative_dynamical_degree(f, q, omega_x, omega_y, j, tol, p_max);
    t.product = t.base.certified * t.relative.certified;
    t.tail_product = t.base.tail * t.relative.tail;
    r.rhs = first ? t.product : interval_max(r.rhs, t.product);
    r.rhs_tail = first ? t.tail_product : interval_max(r.rhs_tail, t.tail_product);
    first = false;
    r.lower_bound_holds = r.lower_bound_holds && r.lhs.certified.hi >= t.product.lo;

    Interval s = exterior_spectral_radius(to_rat(g.matrix()), k - j, tol) * exterior_spectral_radius(fiber, j, tol);
    r.spectral_rhs = j == j_lo ? s : interval_max(r.spectral_rhs, s);
    r.terms.push_back(std::move(t));
  }
  r.spectral_lhs = exterior_spectral_radius(to_rat(f.matrix()), k, tol);
  r.overlap = overlaps(r.lhs.certified, r.rhs, tol);
  r.spectral_agrees = overlaps(r.spectral_lhs, r.spectral_rhs, tol) && overlaps(r.spectral_lhs, r.lhs.certified, tol) &&
                      overlaps(r.spectral_rhs, r.rhs, tol);
  r.pass = r.overlap && r.lower_bound_holds && r.spectral_agrees;
  return r;
}

std::vector<LowerBoundTerm> check_fibration_lower_bound(const MonomialMap& f, const Fibration& q,
                                                        const TDivisor& omega_x, const TDivisor& omega_y,
                                                        std::size_t k) {
  const std::size_t n = q.source.rank(), l = q.target.rank(), e = q.relative_dimension();
  if (k > n) throw std::out_of_range("check_fibration_lower_bound: k exceeds the dimension");
  MonomialMap g = base_map(f, q);
  Polytope px = polarization_polytope(omega_x);
  Polytope py = linear_image(transpose(q.projection), polarization_polytope(omega_y));
  auto base_power = [&](std::size_t a) {  // (q^* omega_Y^a . omega_X^{n-a})
    std::vector<Polytope> b(a, py);
    b.insert(b.end(), n - a, px);
    return mixed_volume(b);
  };
  auto siu = [&](std::size_t a) -> Rat {
    return pow(Rat(static_cast<long>(n - a + 1)), static_cast<unsigned>(a)) * base_power(a) / base_power(0);
  };
  const Rat deg = degree_k(f, q.source, omega_x, k);
  const Rat base_top = top_degree(omega_y);
  std::vector<LowerBoundTerm> out;
  const std::size_t j_lo = k > l ? k - l : 0, j_hi = std::min(k, e);
  for (std::size_t j = j_lo; j <= j_hi; ++j) {
    LowerBoundTerm t;
    t.j = j;
    t.lhs = degree_k(g, q.target, omega_y, k - j) * relative_degree_k(f, q, omega_x, omega_y, j) / base_top;
    t.constant = siu(k - j) * siu(l - k + j);
    t.rhs = t.constant * deg;
    t.pass = t.lhs <= t.rhs;
    out.push_back(t);
  }
  return out;
}

MixedRecursionReport check_mixed_recursion(const MonomialMap& f, const Fibration& q, const TDivisor& omega_x,
                                           const TDivisor& omega_y, std::size_t k, unsigned p_max) {
  const std::size_t n = q.source.rank(), l = q.target.rank(), e = q.relative_dimension();
  if (k > n) throw std::out_of_range("check_mixed_recursion: k exceeds the dimension");
  if (p_max < 2) throw std::invalid_argument("check_mixed_recursion: p_max must be at least 2");
  MonomialMap g = base_map(f, q);
  MixedRecursionReport r;
  r.k = k;
  r.m = RatMat(l + 1, l + 1);
  for (std::size_t j = 0; j <= l; ++j) {
    if (j > k || j + e < k) continue;
    const Rat dg = degree_k(g, q.target, omega_y, j);
    for (std::size_t i = j; i <= l; ++i) r.m(i, j) = dg * mixed_degree(f, q, omega_x, omega_y, k - j, i - j);
  }
  r.u.assign(p_max, RatVec(l + 1, Rat(0)));
  parallel_for(p_max, [&](std::size_t p) {
    MonomialMap fp = f.power(static_cast<unsigned>(p + 1));
    for (std::size_t i = 0; i <= l; ++i) r.u[p][i] = mixed_degree(fp, q, omega_x, omega_y, k, i);
  });
  r.finite = true;
  r.constant = 1;
  for (unsigned p = 0; p + 1 < p_max; ++p) {
    RatVec bound = r.m * r.u[p];
    for (std::size_t i = 0; i <= l; ++i) {
      const Rat& next = r.u[p + 1][i];
      if (bound[i] == 0) {
        if (next > 0) r.finite = false;
        continue;
      }
      r.constant = std::max(r.constant, Rat(next / bound[i]));
    }
  }
  r.max_diagonal = 0;
  for (std::size_t i = 0; i <= l; ++i) r.max_diagonal = std::max(r.max_diagonal, r.m(i, i));
  r.growth = dynamical_degree(f, q.source, omega_x, k, default_tol(), p_max);
  r.dominated = r.growth.certified.lo <= r.max_diagonal;
  r.tail_dominated = r.growth.tail.hi <= r.max_diagonal;
  r.pass = r.finite && r.dominated;
  return r;
}

OperatorDegreeReport check_operator_degree_equivalence(const MonomialMap& f, const Fan& x, const TDivisor& omega,
                                                       std::size_t k, unsigned p_max) {
  OperatorDegreeReport r;
  r.k = k;
  NormSpec spec{x, omega, k};
  for (unsigned p = 1; p <= p_max; ++p) {
    try {
      MonomialMap fp = f.power(p);
      Rat norm = operator_norm(pullback_operator(fp, x, k), spec);
      Rat deg = degree_k(fp, x, omega, k);
      r.norms.push_back(norm);
      r.degrees.push_back(deg);
      r.ratios.push_back(norm / deg);
      r.norm_roots.push_back(root_bounds(norm, p, kRootWidth));
      r.achieved_p = p;
    } catch (const std::exception& ex) {
      r.truncated = true;
      r.note = "stopped at p = " + std::to_string(p) + ": " + ex.what();
      break;
    }
  }
  if (!r.ratios.empty()) {
    auto [lo, hi] = std::minmax_element(r.ratios.begin(), r.ratios.end());
    r.min_ratio = *lo;
    r.max_ratio = *hi;
    r.spread = *lo > 0 ? Rat(*hi / *lo) : Rat(0);
  }
  if (r.note.empty()) r.note = "empirical window p <= " + std::to_string(r.achieved_p);
  return r;
}

}  // namespace degree_lab
