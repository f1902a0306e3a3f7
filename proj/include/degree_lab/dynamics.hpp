#pragma once

#include <optional>
#include <string>
#include <vector>

#include "degree_lab/maps.hpp"

namespace degree_lab {

/// 12 for n <= 2, 8 for n = 3, 5 beyond.
unsigned default_pmax(std::size_t n);
Rat default_tol();

/// deg_k(f^p) for p = 1..p_max, each from the matrix power A^p.
struct DegreeSequence {
  IntMat matrix;
  std::size_t k = 0;
  std::vector<Rat> values;
  /// Submultiplicativity constant C: C d_{p+q} <= (C d_p)(C d_q).
  Rat constant;
  /// Enclosures of (C d_p)^{1/p}; every hi is an upper bound for lambda_k.
  std::vector<Interval> fekete;
  /// d_{p+1} / d_p.
  std::vector<Rat> ratios;
  /// The Fekete hypothesis held on every p + q <= p_max.
  bool subadditive = true;
};

DegreeSequence degree_sequence(const MonomialMap& f, const Fan& x, const TDivisor& omega, std::size_t k,
                               unsigned p_max);
/// reldeg_j(f^p), p = 1..p_max, constant (e-j+1)^j / (omega_X^e . q^* omega_Y^l).
DegreeSequence relative_degree_sequence(const MonomialMap& f, const Fibration& q, const TDivisor& omega_x,
                                        const TDivisor& omega_y, std::size_t j, unsigned p_max);

/// Growth-rate estimate. `certified` always contains the true limit; `tail`
/// is the range of the last few ratios d_{p+1}/d_p, an empirical estimate
/// with no guarantee.
struct LambdaEstimate {
  Interval certified;
  Interval tail;
  bool exact = false;
  /// certified.width() <= tol.
  bool converged = false;
  std::string lower_rule;
  std::string upper_rule;
  unsigned p_max = 0;
};

/// Certified lower bound: exact cases (k = 0, k = n, periodic A), otherwise
/// max(1, |det A|^{k/n}) from log-concavity of dynamical degrees. Upper bound:
/// min over p of the Fekete values. p_max = 0 picks default_pmax(n).
LambdaEstimate dynamical_degree(const MonomialMap& f, const Fan& x, const TDivisor& omega, std::size_t k,
                                const Rat& tol, unsigned p_max = 0);
LambdaEstimate relative_dynamical_degree(const MonomialMap& f, const Fibration& q, const TDivisor& omega_x,
                                         const TDivisor& omega_y, std::size_t j, const Rat& tol, unsigned p_max = 0);
/// Oracle: spectral radius of the k-th exterior power (rational matrices are
/// scaled to integers first).
Interval exterior_spectral_radius(const RatMat& a, std::size_t k, const Rat& tol);

struct SubmultReport {
  std::size_t k = 0;
  Rat lhs;  // deg_k(f o g)
  Rat deg_f, deg_g;
  Rat constant;  // (n-k+1)^k / (omega^n)
  Rat rhs;
  bool pass = false;
};
SubmultReport check_submultiplicativity(const MonomialMap& f, const MonomialMap& g, const Fan& x,
                                        const TDivisor& omega, std::size_t k);

/// Ratio deg_{k,omega}(f^p) / deg_{k,omega'}(f^p) against bounds obtained by
/// writing f = id o f o id with mixed polarizations and applying
/// submultiplicativity twice:
///   (omega^n)^2 / (K N) <= ratio <= K N / (omega'^n)^2,
/// K = (n-k+1)^{2k}, N = (omega^{n-k}.omega'^k)(omega'^{n-k}.omega^k).
struct PolarizationReport {
  std::size_t k = 0;
  std::vector<Rat> deg_omega, deg_omega_prime, ratios;
  Rat lower, upper;
  /// K N / ((omega^n)(omega'^n)), the symmetric form; reported, not enforced.
  Rat symmetric_constant;
  bool symmetric_holds = false;
  bool pass = false;
};
PolarizationReport check_polarization_comparison(const MonomialMap& f, const Fan& x, const TDivisor& omega,
                                                 const TDivisor& omega_prime, std::size_t k, unsigned p_max);

struct SiuReport {
  Fan fan;
  std::vector<TDivisor> factors;
  TDivisor beta;
  std::size_t k = 0;
  Rat siu_constant;  // (n-k+1)^k
  Rat scale;           // C' = siu_constant (alpha . beta^{n-k}) / (beta^n)
  CycleClass difference;  // psi(C' beta^k - alpha)
  ConeMembership verdict;
  bool pass = false;
  /// Least c with c (alpha.beta^{n-k})/(beta^n) beta^k - alpha pseudo-effective.
  Rat c_min;
  /// Nonnegative weights on the invariant cycles realizing c_min, and the LP
  /// dual proving no smaller multiplier works.
  RatVec c_min_witness;
  RatVec c_min_dual;
  bool c_min_within_binomial = false;
};
/// Throws std::invalid_argument when a factor is not nef or beta is not big and nef.
SiuReport siu_check(const Fan& x, const std::vector<TDivisor>& factors, const TDivisor& beta);
/// Re-checks the verdict and the c_min optimality data from the report alone.
bool verify_siu(const SiuReport& r);

struct ProductTerm {
  std::size_t j = 0;  // relative index
  LambdaEstimate base;      // lambda_{k-j}(g)
  LambdaEstimate relative;  // lambda_j(f, X/Y)
  Interval product;
  Interval tail_product;
};
struct ProductFormulaReport {
  std::size_t k = 0;
  LambdaEstimate lhs;
  std::vector<ProductTerm> terms;
  Interval rhs;
  Interval rhs_tail;
  bool overlap = false;
  /// Lower bound direction at interval level: lhs.hi >= every term's lo.
  bool lower_bound_holds = false;
  Interval spectral_lhs, spectral_rhs;
  bool spectral_agrees = false;
  bool pass = false;
};
ProductFormulaReport check_product_formula(const MonomialMap& f, const Fibration& q, const TDivisor& omega_x,
                                           const TDivisor& omega_y, std::size_t k, unsigned p_max, const Rat& tol);

struct LowerBoundTerm {
  std::size_t j = 0;
  Rat lhs;  // deg_{k-j}(g) reldeg_j(f) / (omega_Y^l)
  Rat constant;
  Rat rhs;  // constant deg_k(f)
  bool pass = false;
};
/// deg_{k-j}(g) reldeg_j(f) / (omega_Y^l) <= C1 C2 deg_k(f), C1 and C2 the Siu
/// constants for q^* omega_Y^{k-j} and q^* omega_Y^{l-k+j} against omega_X.
std::vector<LowerBoundTerm> check_fibration_lower_bound(const MonomialMap& f, const Fibration& q,
                                                        const TDivisor& omega_x, const TDivisor& omega_y,
                                                        std::size_t k);

struct MixedRecursionReport {
  std::size_t k = 0;
  RatMat m;
  std::vector<RatVec> u;  // U_k(f^p), p = 1..p_max
  bool finite = false;
  Rat constant;  // least C >= 1 with U(f^{p+1}) <= C M U(f^p)
  Rat max_diagonal;
  LambdaEstimate growth;
  bool dominated = false;       // certified lower bound <= max diagonal
  bool tail_dominated = false;  // empirical
  bool pass = false;
};
MixedRecursionReport check_mixed_recursion(const MonomialMap& f, const Fibration& q, const TDivisor& omega_x,
                                           const TDivisor& omega_y, std::size_t k, unsigned p_max);

struct OperatorDegreeReport {
  std::size_t k = 0;
  std::vector<Rat> norms, degrees, ratios;
  Rat min_ratio, max_ratio, spread;
  /// ||(f^p)^{.,k}||^{1/p} enclosures.
  std::vector<Interval> norm_roots;
  unsigned achieved_p = 0;
  bool truncated = false;
  std::string note;
};
OperatorDegreeReport check_operator_degree_equivalence(const MonomialMap& f, const Fan& x, const TDivisor& omega,
                                                       std::size_t k, unsigned p_max);

}  // namespace degree_lab
