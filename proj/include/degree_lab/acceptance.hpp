#pragma once

#include <functional>
#include <string>
#include <vector>

#include "degree_lab/dynamics.hpp"

namespace degree_lab {

struct NamedFan {
  std::string name;
  Fan fan;
};
struct NamedMatrix {
  std::string name;
  IntMat matrix;
};

/// P2, P3, P1xP1, P1xP1xP1, F0..F3 and the blowup of P2 at a point.
std::vector<NamedFan> catalog_fans();
/// Coefficient 1 on the first ray of each P1 factor: O(1,...,1).
TDivisor multidegree_one(const Fan& product_of_lines);
/// s + 2f on hirzebruch(1), an ample class.
TDivisor f1_polarization();
/// Self-maps used on surfaces: the shear, the cat map, -I, [[2,0],[1,3]] and
/// an order-6 rotation.
std::vector<NamedMatrix> catalog_surface_maps();
/// Ten matrices for the spectral oracle, three of them seeded random 3x3.
std::vector<NamedMatrix> oracle_matrices();

struct CatalogFibration {
  std::string name;
  Fibration q;
  TDivisor omega_x, omega_y;
  std::vector<NamedMatrix> maps;  // block lower-triangular, compatible with q
};
/// (P1)^2 -> P1 and (P1)^3 -> (P1)^2, coordinate projections.
std::vector<CatalogFibration> catalog_fibrations();

struct SiuInstance {
  std::string name;
  Fan fan;
  std::vector<TDivisor> factors;
  TDivisor beta;
};
/// 50 instances on P3, its blowup at a point, F1 and its blowup at a fixed point.
std::vector<SiuInstance> siu_catalog();

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0;
  double limit_seconds = 0;  // 0: no time limit
};

constexpr int kCriteria = 9;
CriterionResult run_criterion(int id);
/// Runs the listed criteria in order, calling report after each.
std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids,
                                            const std::function<void(const CriterionResult&)>& report = {});
/// "[PASS] 3 title (1.2 s): detail"
std::string format_result(const CriterionResult& r);

}  // namespace degree_lab
