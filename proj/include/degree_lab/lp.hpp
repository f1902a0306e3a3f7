#pragma once

#include <variant>

#include "degree_lab/matrix.hpp"

namespace degree_lab {

/// x >= 0 with A x = b.
struct LpFeasible {
  RatVec x;
};

/// Farkas certificate: y^T A >= 0 and y^T b < 0, so no x >= 0 solves A x = b.
struct LpInfeasible {
  RatVec y;
};

using FeasibilityResult = std::variant<LpFeasible, LpInfeasible>;

/// Exact decision of {x >= 0 : A x = b} != {} by phase-one simplex with
/// Bland's rule. The returned witness or certificate always re-verifies.
FeasibilityResult lp_feasible(const RatMat& a, const RatVec& b);

struct LpOptimal {
  RatVec x;
  Rat value;
  /// Dual solution y: y^T b = value and c - A^T y >= 0.
  RatVec dual;
};

struct LpUnbounded {};

using LpResult = std::variant<LpOptimal, LpInfeasible, LpUnbounded>;

/// min c^T x subject to A x = b, x >= 0.
LpResult lp_minimize(const RatVec& c, const RatMat& a, const RatVec& b);

bool verify_witness(const RatMat& a, const RatVec& b, const LpFeasible& w);
bool verify_certificate(const RatMat& a, const RatVec& b, const LpInfeasible& cert);

}  // namespace degree_lab
