#include "degree_lab/io.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <iomanip>
#include <sstream>

namespace degree_lab::io {

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256: digest failed");
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return out.str();
}

Json parse_json(std::string_view text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    // e.byte is 1-based; translate it to line and column.
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw InputError(source + ": malformed JSON at line " + std::to_string(line) + ", column " + std::to_string(col));
  }
}

LoadedFile load_json_file(const std::filesystem::path& path, const std::string& role) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + role + " file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  return {role, path.string(), sha256_hex(text), parse_json(text, path.string())};
}

namespace {

[[noreturn]] void schema(const std::string& what) { throw InputError("schema: " + what); }

const Json& field(const Json& j, const char* key, const char* owner) {
  if (!j.is_object()) schema(std::string(owner) + " must be a JSON object");
  auto it = j.find(key);
  if (it == j.end()) schema(std::string(owner) + " is missing \"" + key + "\"");
  return *it;
}

Int int_from_json(const Json& j) {
  if (j.is_number_integer()) return Int(j.get<long>());
  if (j.is_string()) {
    Rat r = rat_from_json(j);
    if (r.get_den() != 1) schema("expected an integer, got " + j.get<std::string>());
    return r.get_num();
  }
  schema("expected an integer, got " + j.dump());
}

std::vector<std::vector<Int>> int_rows(const Json& j, const char* what) {
  if (!j.is_array()) schema(std::string(what) + " must be an array of rows");
  std::vector<std::vector<Int>> rows;
  for (const auto& r : j) {
    if (!r.is_array()) schema(std::string(what) + " rows must be arrays");
    std::vector<Int> row;
    for (const auto& v : r) row.push_back(int_from_json(v));
    rows.push_back(std::move(row));
  }
  return rows;
}

IntMat rows_to_mat(const std::vector<std::vector<Int>>& rows, const char* what) {
  if (rows.empty()) schema(std::string(what) + " is empty");
  IntMat m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size()) schema(std::string(what) + " is ragged");
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Json int_json(const Int& v) { return v.fits_slong_p() ? Json(v.get_si()) : Json(to_string(v)); }

Json membership_json(const ConeMembership& m) {
  Json j;
  if (auto* in = std::get_if<InCone>(&m)) {
    j["in_cone"] = true;
    j["weights"] = rat_vec_json(in->weights);
  } else {
    j["in_cone"] = false;
    j["functional"] = rat_vec_json(std::get<NotInCone>(m).functional);
  }
  return j;
}

}  // namespace

Json rat_json(const Rat& v) { return to_string(v); }

Rat rat_from_json(const Json& j) {
  if (j.is_number_integer()) return Rat(j.get<long>());
  if (j.is_string()) {
    try {
      return parse_rat(j.get<std::string>());
    } catch (const std::invalid_argument&) {
      schema("malformed rational \"" + j.get<std::string>() + "\"");
    }
  }
  schema("expected a rational string \"p/q\", got " + j.dump());
}

Json rat_vec_json(const RatVec& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(rat_json(x));
  return a;
}

RatVec rat_vec_from_json(const Json& j) {
  if (!j.is_array()) schema("expected an array of rationals");
  RatVec v;
  for (const auto& x : j) v.push_back(rat_from_json(x));
  return v;
}

Json interval_json(const Interval& iv) { return Json{{"lo", rat_json(iv.lo)}, {"hi", rat_json(iv.hi)}}; }

Json int_mat_json(const IntMat& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(int_json(m(i, j)));
    a.push_back(row);
  }
  return a;
}

IntMat int_mat_from_json(const Json& j) { return rows_to_mat(int_rows(j, "matrix"), "matrix"); }

Json rat_mat_json(const RatMat& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(rat_vec_json(m.row_vector(i)));
  return a;
}

Fan fan_from_json(const Json& j) {
  FanData d;
  const Json& rank = field(j, "rank", "fan");
  if (!rank.is_number_unsigned()) schema("fan rank must be a nonnegative integer");
  d.rank = rank.get<std::size_t>();
  d.rays = int_rows(field(j, "rays", "fan"), "rays");
  const Json& cones = field(j, "max_cones", "fan");
  if (!cones.is_array()) schema("max_cones must be an array");
  for (const auto& c : cones) {
    if (!c.is_array()) schema("each max cone must be an array of ray indices");
    IndexSet s;
    for (const auto& v : c) {
      if (!v.is_number_integer()) schema("ray indices must be integers");
      s.push_back(v.get<int>());
    }
    d.max_cones.push_back(std::move(s));
  }
  auto check = validate_fan(d);
  if (auto* issues = std::get_if<std::vector<FanIssue>>(&check)) {
    std::string msg = "invalid fan:";
    for (const auto& i : *issues) msg += " [" + std::string(to_string(i.kind)) + "] " + i.message + ";";
    throw InputError(msg);
  }
  return std::get<Fan>(check);
}

Json fan_to_json(const Fan& fan) {
  Json rays = Json::array(), cones = Json::array();
  for (const auto& r : fan.rays()) {
    Json row = Json::array();
    for (const auto& v : r) row.push_back(int_json(v));
    rays.push_back(row);
  }
  for (const auto& c : fan.max_cones()) cones.push_back(c);
  return Json{{"rank", fan.rank()}, {"rays", rays}, {"max_cones", cones}};
}

TDivisor divisor_from_json(const Json& j, const Fan& fan) {
  RatVec c = rat_vec_from_json(field(j, "coeffs", "divisor"));
  if (c.size() != fan.rays().size())
    schema("divisor has " + std::to_string(c.size()) + " coefficients, fan has " + std::to_string(fan.rays().size()) +
           " rays");
  return {fan, c};
}

Json divisor_to_json(const TDivisor& d) { return Json{{"coeffs", rat_vec_json(d.coeffs)}}; }

MonomialMap map_from_json(const Json& j) {
  IntMat a = int_mat_from_json(field(j, "matrix", "map"));
  try {
    return MonomialMap(a);
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("invalid map: ") + e.what());
  }
}

Json map_to_json(const MonomialMap& f) { return Json{{"matrix", int_mat_json(f.matrix())}}; }

Fibration fibration_from_json(const Json& j, const Fan& source) {
  IntMat p = int_mat_from_json(field(j, "projection", "fibration"));
  Fan target = fan_from_json(field(j, "target_fan", "fibration"));
  try {
    return Fibration(source, target, p);
  } catch (const std::exception& e) {
    throw InputError(std::string("invalid fibration: ") + e.what());
  }
}

Json fibration_to_json(const Fibration& q) {
  return Json{{"projection", int_mat_json(q.projection)}, {"target_fan", fan_to_json(q.target)}};
}

Scenario load_scenario(const std::filesystem::path& path) {
  LoadedFile sc = load_json_file(path, "scenario");
  const Json& j = sc.value;
  auto dir = path.parent_path();
  auto sub = [&](const char* key, const char* role) {
    const Json& p = field(j, key, "scenario");
    if (!p.is_string()) schema(std::string("scenario \"") + key + "\" must be a path");
    return load_json_file(dir / p.get<std::string>(), role);
  };
  std::vector<LoadedFile> inputs{sc};
  LoadedFile fan_file = sub("fan", "fan");
  inputs.push_back(fan_file);
  Fan fan = fan_from_json(fan_file.value);
  LoadedFile map_file = sub("map", "map");
  inputs.push_back(map_file);
  MonomialMap map = map_from_json(map_file.value);
  if (map.dim() != fan.rank()) schema("map and fan dimensions differ");

  auto divisor_or = [&](const char* key, const Fan& x) -> std::optional<TDivisor> {
    if (!j.contains(key)) return std::nullopt;
    LoadedFile f = sub(key, key);
    inputs.push_back(f);
    return divisor_from_json(f.value, x);
  };
  std::optional<TDivisor> omega = divisor_or("polarization", fan);
  std::optional<TDivisor> omega_prime = divisor_or("polarization_prime", fan);
  std::optional<Fibration> fib;
  std::optional<TDivisor> omega_base;
  if (j.contains("fibration")) {
    LoadedFile f = sub("fibration", "fibration");
    inputs.push_back(f);
    fib = fibration_from_json(f.value, fan);
    omega_base = divisor_or("base_polarization", fib->target);
    if (!omega_base) omega_base = default_polarization(fib->target);
  }
  Scenario s{inputs, fan, omega ? *omega : default_polarization(fan), omega_prime, map, fib, omega_base, {}};
  const Json& tasks = field(j, "tasks", "scenario");
  if (!tasks.is_array()) schema("scenario tasks must be an array");
  for (const auto& t : tasks) {
    ScenarioTask task;
    const Json& op = field(t, "op", "task");
    if (!op.is_string()) schema("task op must be a string");
    task.op = op.get<std::string>();
    if (t.contains("k")) {
      if (!t["k"].is_number_unsigned()) schema("task k must be a nonnegative integer");
      task.k = t["k"].get<std::size_t>();
    }
    if (task.k > fan.rank()) schema("task k exceeds the dimension");
    if (t.contains("p_max")) {
      if (!t["p_max"].is_number_unsigned() || t["p_max"].get<unsigned>() == 0 || t["p_max"].get<unsigned>() > 64)
        schema("task p_max must be an integer in [1, 64]");
      task.p_max = t["p_max"].get<unsigned>();
    }
    task.tol = t.contains("tol") ? rat_from_json(t["tol"]) : default_tol();
    if (task.tol <= 0) schema("task tol must be positive");
    s.tasks.push_back(task);
  }
  s.inputs = inputs;
  return s;
}

Json inputs_json(const std::vector<LoadedFile>& inputs) {
  Json a = Json::array();
  for (const auto& f : inputs) a.push_back(Json{{"role", f.role}, {"path", f.path}, {"sha256", f.sha256}});
  return a;
}

Json fan_info_json(const Fan& fan) {
  auto ring = chow_ring(fan);
  bool smooth = true;
  for (const auto& c : fan.max_cones()) smooth = smooth && fan.multiplicity(c) == 1;
  Json dims = Json::array();
  for (std::size_t k = 0; k <= fan.rank(); ++k) dims.push_back(ring->dim(k));
  auto h = ample_reference(fan);
  Json j{{"rank", fan.rank()},
         {"rays", fan.rays().size()},
         {"max_cones", fan.max_cones().size()},
         {"smooth", smooth},
         {"projective", h.has_value()},
         {"dims", dims}};
  if (h) j["ample_reference"] = rat_vec_json(h->coeffs);
  return j;
}

Json degree_sequence_json(const DegreeSequence& s) {
  Json fekete = Json::array();
  for (const auto& iv : s.fekete) fekete.push_back(interval_json(iv));
  return Json{{"matrix", int_mat_json(s.matrix)},
              {"k", s.k},
              {"values", rat_vec_json(s.values)},
              {"constant", rat_json(s.constant)},
              {"fekete", fekete},
              {"ratios", rat_vec_json(s.ratios)},
              {"subadditive", s.subadditive}};
}

Json lambda_json(const LambdaEstimate& e) {
  return Json{{"certified", interval_json(e.certified)},
              {"tail", interval_json(e.tail)},
              {"tail_note", "empirical: range of the last ratios, no guarantee"},
              {"exact", e.exact},
              {"converged", e.converged},
              {"lower_rule", e.lower_rule},
              {"upper_rule", e.upper_rule},
              {"p_max", e.p_max}};
}

Json submult_json(const SubmultReport& r) {
  return Json{{"k", r.k},          {"lhs", rat_json(r.lhs)}, {"deg_f", rat_json(r.deg_f)},
              {"deg_g", rat_json(r.deg_g)}, {"constant", rat_json(r.constant)}, {"rhs", rat_json(r.rhs)},
              {"pass", r.pass}};
}

Json polarization_json(const PolarizationReport& r) {
  return Json{{"k", r.k},
              {"deg_omega", rat_vec_json(r.deg_omega)},
              {"deg_omega_prime", rat_vec_json(r.deg_omega_prime)},
              {"ratios", rat_vec_json(r.ratios)},
              {"lower", rat_json(r.lower)},
              {"upper", rat_json(r.upper)},
              {"symmetric_constant", rat_json(r.symmetric_constant)},
              {"symmetric_holds", r.symmetric_holds},
              {"pass", r.pass}};
}

Json siu_json(const SiuReport& r) {
  Json factors = Json::array();
  for (const auto& a : r.factors) factors.push_back(divisor_to_json(a));
  return Json{{"k", r.k},
              {"factors", factors},
              {"beta", divisor_to_json(r.beta)},
              {"siu_constant", rat_json(r.siu_constant)},
              {"scale", rat_json(r.scale)},
              {"difference", rat_vec_json(r.difference.coords)},
              {"verdict", membership_json(r.verdict)},
              {"pass", r.pass},
              {"c_min", rat_json(r.c_min)},
              {"c_min_witness", rat_vec_json(r.c_min_witness)},
              {"c_min_dual", rat_vec_json(r.c_min_dual)},
              {"binomial", binomial(static_cast<unsigned>(r.fan.rank()), static_cast<unsigned>(r.k)).get_si()},
              {"c_min_within_binomial", r.c_min_within_binomial}};
}

SiuReport siu_from_json(const Json& j, const Fan& fan) {
  SiuReport r{fan, {}, TDivisor::zero(fan), 0, {}, {}, {}, InCone{}, false, {}, {}, {}, false};
  r.k = field(j, "k", "siu report").get<std::size_t>();
  for (const auto& a : field(j, "factors", "siu report")) r.factors.push_back(divisor_from_json(a, fan));
  r.beta = divisor_from_json(field(j, "beta", "siu report"), fan);
  r.siu_constant = rat_from_json(field(j, "siu_constant", "siu report"));
  r.scale = rat_from_json(field(j, "scale", "siu report"));
  r.difference = CycleClass{chow_ring(fan), fan.rank() - r.k, rat_vec_from_json(field(j, "difference", "siu report"))};
  const Json& v = field(j, "verdict", "siu report");
  if (field(v, "in_cone", "verdict").get<bool>())
    r.verdict = InCone{rat_vec_from_json(field(v, "weights", "verdict"))};
  else
    r.verdict = NotInCone{rat_vec_from_json(field(v, "functional", "verdict"))};
  r.pass = field(j, "pass", "siu report").get<bool>();
  r.c_min = rat_from_json(field(j, "c_min", "siu report"));
  r.c_min_witness = rat_vec_from_json(field(j, "c_min_witness", "siu report"));
  r.c_min_dual = rat_vec_from_json(field(j, "c_min_dual", "siu report"));
  r.c_min_within_binomial = field(j, "c_min_within_binomial", "siu report").get<bool>();
  return r;
}

Json product_formula_json(const ProductFormulaReport& r) {
  Json terms = Json::array();
  for (const auto& t : r.terms)
    terms.push_back(Json{{"j", t.j},
                         {"base", lambda_json(t.base)},
                         {"relative", lambda_json(t.relative)},
                         {"product", interval_json(t.product)},
                         {"tail_product", interval_json(t.tail_product)}});
  return Json{{"k", r.k},
              {"lhs", lambda_json(r.lhs)},
              {"terms", terms},
              {"rhs", interval_json(r.rhs)},
              {"rhs_tail", interval_json(r.rhs_tail)},
              {"overlap", r.overlap},
              {"lower_bound_holds", r.lower_bound_holds},
              {"spectral_lhs", interval_json(r.spectral_lhs)},
              {"spectral_rhs", interval_json(r.spectral_rhs)},
              {"spectral_agrees", r.spectral_agrees},
              {"pass", r.pass}};
}

Json lower_bound_json(const std::vector<LowerBoundTerm>& terms) {
  Json a = Json::array();
  for (const auto& t : terms)
    a.push_back(Json{{"j", t.j},
                     {"lhs", rat_json(t.lhs)},
                     {"constant", rat_json(t.constant)},
                     {"rhs", rat_json(t.rhs)},
                     {"pass", t.pass}});
  return a;
}

Json mixed_recursion_json(const MixedRecursionReport& r) {
  Json u = Json::array();
  for (const auto& v : r.u) u.push_back(rat_vec_json(v));
  return Json{{"k", r.k},
              {"m", rat_mat_json(r.m)},
              {"u", u},
              {"finite", r.finite},
              {"constant", rat_json(r.constant)},
              {"max_diagonal", rat_json(r.max_diagonal)},
              {"growth", lambda_json(r.growth)},
              {"dominated", r.dominated},
              {"tail_dominated", r.tail_dominated},
              {"pass", r.pass}};
}

Json operator_json(const OperatorDegreeReport& r) {
  Json roots = Json::array();
  for (const auto& iv : r.norm_roots) roots.push_back(interval_json(iv));
  return Json{{"k", r.k},
              {"norms", rat_vec_json(r.norms)},
              {"degrees", rat_vec_json(r.degrees)},
              {"ratios", rat_vec_json(r.ratios)},
              {"min_ratio", rat_json(r.min_ratio)},
              {"max_ratio", rat_json(r.max_ratio)},
              {"spread", rat_json(r.spread)},
              {"norm_roots", roots},
              {"achieved_p", r.achieved_p},
              {"truncated", r.truncated},
              {"note", r.note}};
}

std::string to_text(const Table& t) {
  std::vector<std::size_t> width(t.header.size(), 0);
  auto grow = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size() && i < width.size(); ++i) width[i] = std::max(width[i], row[i].size());
  };
  grow(t.header);
  for (const auto& r : t.rows) grow(r);
  std::ostringstream out;
  auto line = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << row[i];
      if (i + 1 < row.size()) out << std::string(width[i] - row[i].size() + 2, ' ');
    }
    out << '\n';
  };
  line(t.header);
  std::size_t total = 0;
  for (auto w : width) total += w + 2;
  out << std::string(total > 2 ? total - 2 : 0, '-') << '\n';
  for (const auto& r : t.rows) line(r);
  return out.str();
}

std::string to_csv(const Table& t) {
  auto cell = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + "\"";
  };
  std::ostringstream out;
  auto line = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell(row[i]);
    out << '\n';
  };
  line(t.header);
  for (const auto& r : t.rows) line(r);
  return out.str();
}

}  // namespace degree_lab::io
