#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "degree_lab/dynamics.hpp"

namespace degree_lab::io {

using Json = nlohmann::ordered_json;

/// Bad user input: unreadable file, malformed JSON, schema or validation
/// failure. The CLI maps it to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string sha256_hex(std::string_view bytes);

/// Parses JSON text; malformed input raises InputError naming the source and
/// the line and column of the failure.
Json parse_json(std::string_view text, const std::string& source);

struct LoadedFile {
  std::string role;
  std::string path;
  std::string sha256;
  Json value;
};
LoadedFile load_json_file(const std::filesystem::path& path, const std::string& role);

/// Rationals as canonical strings ("3", "-1/2"); integers are also accepted on input.
Json rat_json(const Rat& v);
Rat rat_from_json(const Json& j);
Json rat_vec_json(const RatVec& v);
RatVec rat_vec_from_json(const Json& j);
Json interval_json(const Interval& iv);
Json int_mat_json(const IntMat& m);
IntMat int_mat_from_json(const Json& j);
Json rat_mat_json(const RatMat& m);

// {"rank": n, "rays": [[...]], "max_cones": [[...]]}
Fan fan_from_json(const Json& j);
Json fan_to_json(const Fan& fan);
// {"coeffs": ["p/q", ...]}, one entry per ray.
TDivisor divisor_from_json(const Json& j, const Fan& fan);
Json divisor_to_json(const TDivisor& d);
// {"matrix": [[...]]}
MonomialMap map_from_json(const Json& j);
Json map_to_json(const MonomialMap& f);
// {"projection": [[...]], "target_fan": {...}}; the source is the given fan.
Fibration fibration_from_json(const Json& j, const Fan& source);
Json fibration_to_json(const Fibration& q);

/// A task list over one variety, one map and optionally a fibration. Paths are
/// resolved relative to the scenario file.
struct ScenarioTask {
  std::string op;
  std::size_t k = 1;
  unsigned p_max = 0;  // 0: module default
  Rat tol;
};
struct Scenario {
  std::vector<LoadedFile> inputs;
  Fan fan;
  TDivisor omega;
  std::optional<TDivisor> omega_prime;
  MonomialMap map;
  std::optional<Fibration> fibration;
  std::optional<TDivisor> omega_base;
  std::vector<ScenarioTask> tasks;
};
Scenario load_scenario(const std::filesystem::path& path);

Json inputs_json(const std::vector<LoadedFile>& inputs);

Json fan_info_json(const Fan& fan);
Json degree_sequence_json(const DegreeSequence& s);
Json lambda_json(const LambdaEstimate& e);
Json submult_json(const SubmultReport& r);
Json polarization_json(const PolarizationReport& r);
Json siu_json(const SiuReport& r);
/// Rebuilds a report from siu_json output; the fan comes from the caller.
SiuReport siu_from_json(const Json& j, const Fan& fan);
Json product_formula_json(const ProductFormulaReport& r);
Json lower_bound_json(const std::vector<LowerBoundTerm>& terms);
Json mixed_recursion_json(const MixedRecursionReport& r);
Json operator_json(const OperatorDegreeReport& r);

/// Rectangular string table rendered as aligned text or CSV with a header row.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};
std::string to_text(const Table& t);
std::string to_csv(const Table& t);

}  // namespace degree_lab::io
