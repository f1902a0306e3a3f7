#include "degree_lab/cli.hpp"

#include <sstream>

#include "CLI11.hpp"

#include "degree_lab/acceptance.hpp"
#include "degree_lab/io.hpp"
#include "degree_lab/parallel.hpp"

namespace degree_lab {

namespace {

using io::Json;
using io::LoadedFile;
using io::Table;

struct Output {
  Json result = Json::object();
  Json parameters = Json::object();
  std::vector<LoadedFile> inputs;
  std::vector<std::string> notes;
  Table table;
  bool pass = true;
  std::string failure;
};

std::string dec(const Rat& v) { return to_decimal(v, 6); }
std::string iv_text(const Interval& iv) {
  if (iv.lo == iv.hi) return to_string(iv.lo);
  return "[" + dec(iv.lo) + ", " + dec(iv.hi) + "]";
}
std::string yes(bool b) { return b ? "yes" : "no"; }

std::string join(const std::vector<Rat>& v, const std::string& sep = ", ") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + to_string(v[i]);
  return s;
}

// Options shared by the subcommands; each subcommand binds the ones it uses.
struct Args {
  std::string format = "table";
  std::string fan, map, map2, polarization, polarization2, fibration, base_polarization, beta, scenario;
  std::vector<std::string> alpha;
  std::size_t k = 1;
  unsigned pmax = 0;
  std::string tol = "1/100";
  std::vector<int> criteria;
};

struct Loaded {
  std::vector<LoadedFile> files;
  LoadedFile& add(const std::string& path, const std::string& role) {
    files.push_back(io::load_json_file(path, role));
    return files.back();
  }
};

Rat parse_tol(const std::string& s) {
  Rat t;
  try {
    t = parse_rat(s);
  } catch (const std::invalid_argument&) {
    throw io::InputError("--tol: malformed rational '" + s + "'");
  }
  if (t <= 0) throw io::InputError("--tol must be positive");
  return t;
}

Fan load_fan(Loaded& l, const Args& a) { return io::fan_from_json(l.add(a.fan, "fan").value); }

TDivisor load_polarization(Loaded& l, const std::string& path, const Fan& x, const std::string& role) {
  if (path.empty()) return default_polarization(x);
  return io::divisor_from_json(l.add(path, role).value, x);
}

MonomialMap load_map(Loaded& l, const std::string& path, const Fan& x, const std::string& role) {
  MonomialMap f = io::map_from_json(l.add(path, role).value);
  if (f.dim() != x.rank()) throw io::InputError(role + " has size " + std::to_string(f.dim()) + ", fan has rank " +
                                                std::to_string(x.rank()));
  return f;
}

void check_k(std::size_t k, std::size_t n) {
  if (k > n) throw io::InputError("--k " + std::to_string(k) + " exceeds the dimension " + std::to_string(n));
}

unsigned pmax_or_default(unsigned p, std::size_t n) { return p == 0 ? default_pmax(n) : p; }

Output cmd_fan_info(const Args& a) {
  Output o;
  Loaded l;
  Fan x = load_fan(l, a);
  o.inputs = l.files;
  o.result = io::fan_info_json(x);
  const Json& r = o.result;
  std::ostringstream dims;
  for (std::size_t i = 0; i < r["dims"].size(); ++i) dims << (i ? "," : "") << r["dims"][i].get<std::size_t>();
  o.notes.push_back("rank " + std::to_string(x.rank()) + ", " + std::to_string(x.rays().size()) + " rays, " +
                    std::to_string(x.max_cones().size()) + " max cones, " +
                    (r["smooth"].get<bool>() ? "smooth" : "simplicial, not smooth") + ", dims of N^k = " + dims.str());
  o.notes.push_back(std::string("projective: ") + yes(r["projective"].get<bool>()));
  o.table.header = {"k", "dim N^k", "dim N_k"};
  for (std::size_t k = 0; k <= x.rank(); ++k)
    o.table.rows.push_back({std::to_string(k), std::to_string(r["dims"][k].get<std::size_t>()),
                            std::to_string(r["dims"][x.rank() - k].get<std::size_t>())});
  return o;
}

Output cmd_deg(const Args& a) {
  Output o;
  Loaded l;
  Fan x = load_fan(l, a);
  MonomialMap f = load_map(l, a.map, x, "map");
  TDivisor omega = load_polarization(l, a.polarization, x, "polarization");
  check_k(a.k, x.rank());
  const unsigned p_max = pmax_or_default(a.pmax, x.rank());
  DegreeSequence s = degree_sequence(f, x, omega, a.k, p_max);
  o.inputs = l.files;
  o.parameters = Json{{"k", a.k}, {"p_max", p_max}};
  o.result = io::degree_sequence_json(s);
  o.notes.push_back("deg_" + std::to_string(a.k) + "(f^p), p = 1.." + std::to_string(p_max) + ": " + join(s.values));
  o.table.header = {"p", "deg", "ratio"};
  for (unsigned p = 1; p <= p_max; ++p)
    o.table.rows.push_back({std::to_string(p), to_string(s.values[p - 1]), p > 1 ? dec(s.ratios[p - 2]) : ""});
  return o;
}

Output cmd_lambda(const Args& a) {
  Output o;
  Loaded l;
  Fan x = load_fan(l, a);
  MonomialMap f = load_map(l, a.map, x, "map");
  TDivisor omega = load_polarization(l, a.polarization, x, "polarization");
  check_k(a.k, x.rank());
  Rat tol = parse_tol(a.tol);
  const unsigned p_max = pmax_or_default(a.pmax, x.rank());
  LambdaEstimate e = dynamical_degree(f, x, omega, a.k, tol, p_max);
  DegreeSequence s = degree_sequence(f, x, omega, a.k, p_max);
  Interval spectral = exterior_spectral_radius(to_rat(f.matrix()), a.k, tol);
  o.inputs = l.files;
  o.parameters = Json{{"k", a.k}, {"p_max", p_max}, {"tol", io::rat_json(tol)}};
  o.result = Json{{"estimate", io::lambda_json(e)},
                  {"sequence", io::degree_sequence_json(s)},
                  {"spectral_oracle", io::interval_json(spectral)}};
  o.notes.push_back("certified lambda_" + std::to_string(a.k) + " in " + iv_text(e.certified) +
                    (e.exact ? " (exact)" : "") + (e.converged ? "" : ", not converged at this p_max"));
  o.notes.push_back("lower: " + e.lower_rule);
  o.notes.push_back("upper: " + e.upper_rule);
  o.notes.push_back("empirical tail of ratios: " + iv_text(e.tail));
  o.notes.push_back("spectral radius of the exterior power: " + iv_text(spectral));
  o.table.header = {"p", "deg", "fekete_lo", "fekete_hi"};
  for (unsigned p = 1; p <= p_max; ++p)
    o.table.rows.push_back(
        {std::to_string(p), to_string(s.values[p - 1]), dec(s.fekete[p - 1].lo), dec(s.fekete[p - 1].hi)});
  return o;
}

Output cmd_submult(const Args& a) {
  Output o;
  Loaded l;
  Fan x = load_fan(l, a);
  MonomialMap f = load_map(l, a.map, x, "map");
  MonomialMap g = a.map2.empty() ? f : load_map(l, a.map2, x, "map2");
  TDivisor omega = load_polarization(l, a.polarization, x, "polarization");
  check_k(a.k, x.rank());
  SubmultReport r = check_submultiplicativity(f, g, x, omega, a.k);
  o.inputs = l.files;
  o.parameters = Json{{"k", a.k}};
  o.result = io::submult_json(r);
  o.pass = r.pass;
  o.notes.push_back(to_string(r.lhs) + " <= " + to_string(r.constant) + " * " + to_string(r.deg_f) + " * " +
                    to_string(r.deg_g) + " = " + to_string(r.rhs) + ": " + (r.pass ? "PASS" : "FAIL"));
  if (!r.pass) o.failure = "deg_k(f o g) = " + to_string(r.lhs) + " exceeds " + to_string(r.rhs);
  o.table.header = {"k", "deg(f o g)", "deg(f)", "deg(g)", "constant", "bound", "pass"};
  o.table.rows.push_back({std::to_string(r.k), to_string(r.lhs), to_string(r.deg_f), to_string(r.deg_g),
                          to_string(r.constant), to_string(r.rhs), yes(r.pass)});
  return o;
}

Output cmd_compare(const Args& a) {
  Output o;
  Loaded l;
  Fan x = load_fan(l, a);
  MonomialMap f = load_map(l, a.map, x, "map");
  TDivisor w = load_polarization(l, a.polarization, x, "polarization");
  if (a.polarization2.empty()) throw io::InputError("--polarization2 is required");
  TDivisor w2 = load_polarization(l, a.polarization2, x, "polarization2");
  check_k(a.k, x.rank());
  const unsigned p_max = pmax_or_default(a.pmax, x.rank());
  PolarizationReport r = check_polarization_comparison(f, x, w, w2, a.k, p_max);
  o.inputs = l.files;
  o.parameters = Json{{"k", a.k}, {"p_max", p_max}};
  o.result = io::polarization_json(r);
  o.pass = r.pass;
  o.notes.push_back("bounds [" + to_string(r.lower) + ", " + to_string(r.upper) + "]: " + (r.pass ? "PASS" : "FAIL"));
  o.notes.push_back("symmetric constant " + to_string(r.symmetric_constant) +
                    (r.symmetric_holds ? " also holds" : " does not hold (informational)"));
  o.table.header = {"p", "deg_omega", "deg_omega'", "ratio", "within"};
  for (std::size_t i = 0; i < r.ratios.size(); ++i) {
    bool in = r.lower <= r.ratios[i] && r.ratios[i] <= r.upper;
    if (!in && o.failure.empty())
      o.failure = "p = " + std::to_string(i + 1) + ": ratio " + to_string(r.ratios[i]) + " outside [" +
                  to_string(r.lower) + ", " + to_string(r.upper) + "]";
    o.table.rows.push_back({std::to_string(i + 1), to_string(r.deg_omega[i]), to_string(r.deg_omega_prime[i]),
                            to_string(r.ratios[i]), yes(in)});
  }
  return o;
}

Output cmd_siu(const Args& a) {
  Output o;
  Loaded l;
  Fan x = load_fan(l, a);
  if (a.alpha.empty()) throw io::InputError("--alpha is required");
  if (a.beta.empty()) throw io::InputError("--beta is required");
  if (a.k == 0) throw io::InputError("--k must be at least 1");
  check_k(a.k, x.rank());
  std::vector<TDivisor> factors;
  for (std::size_t i = 0; i < a.alpha.size(); ++i)
    factors.push_back(io::divisor_from_json(l.add(a.alpha[i], "alpha").value, x));
  if (factors.size() == 1)
    while (factors.size() < a.k) factors.push_back(factors.front());
  if (factors.size() != a.k)
    throw io::InputError("give one --alpha (used k times) or exactly k of them; got " +
                         std::to_string(factors.size()) + " for k = " + std::to_string(a.k));
  TDivisor beta = io::divisor_from_json(l.add(a.beta, "beta").value, x);
  SiuReport r = siu_check(x, factors, beta);
  o.inputs = l.files;
  o.parameters = Json{{"k", a.k}};
  o.result = io::siu_json(r);
  o.pass = r.pass;
  const Int binom = binomial(static_cast<unsigned>(x.rank()), static_cast<unsigned>(a.k));
  o.notes.push_back(std::string(r.pass ? "PASS" : "FAIL") + ": " + to_string(r.scale) +
                    " beta^k - alpha is pseudo-effective with constant " + to_string(r.siu_constant));
  o.notes.push_back("c_min = " + to_string(r.c_min) + " (binomial(n,k) = " + to_string(binom) + ", " +
                    (r.c_min_within_binomial ? "within" : "exceeds, a finding") + ")");
  if (!r.pass) o.failure = "difference class is not pseudo-effective; separating functional reported";
  if (auto* in = std::get_if<InCone>(&r.verdict)) {
    o.table.header = {"generator", "weight"};
    for (std::size_t i = 0; i < in->weights.size(); ++i)
      if (in->weights[i] != 0) o.table.rows.push_back({std::to_string(i), to_string(in->weights[i])});
  } else {
    const auto& fn = std::get<NotInCone>(r.verdict).functional;
    o.table.header = {"coordinate", "functional"};
    for (std::size_t i = 0; i < fn.size(); ++i) o.table.rows.push_back({std::to_string(i), to_string(fn[i])});
  }
  return o;
}

struct FibrationData {
  Fan x;
  MonomialMap f;
  Fibration q;
  TDivisor wx, wy;
};

FibrationData load_fibration(Loaded& l, const Args& a) {
  Fan x = load_fan(l, a);
  MonomialMap f = load_map(l, a.map, x, "map");
  if (a.fibration.empty()) throw io::InputError("--fibration is required");
  Fibration q = io::fibration_from_json(l.add(a.fibration, "fibration").value, x);
  TDivisor wx = load_polarization(l, a.polarization, x, "polarization");
  TDivisor wy = load_polarization(l, a.base_polarization, q.target, "base_polarization");
  try {
    base_map(f, q);
  } catch (const std::invalid_argument& e) {
    throw io::InputError(e.what());
  }
  return {x, f, q, wx, wy};
}

Output cmd_product(const Args& a) {
  Output o;
  Loaded l;
  FibrationData d = load_fibration(l, a);
  check_k(a.k, d.x.rank());
  Rat tol = parse_tol(a.tol);
  const unsigned p_max = pmax_or_default(a.pmax, d.x.rank());
  ProductFormulaReport r = check_product_formula(d.f, d.q, d.wx, d.wy, a.k, p_max, tol);
  auto lower = check_fibration_lower_bound(d.f, d.q, d.wx, d.wy, a.k);
  bool lower_ok = std::all_of(lower.begin(), lower.end(), [](const LowerBoundTerm& t) { return t.pass; });
  o.inputs = l.files;
  o.parameters = Json{{"k", a.k}, {"p_max", p_max}, {"tol", io::rat_json(tol)}};
  o.result = Json{{"product_formula", io::product_formula_json(r)}, {"lower_bound", io::lower_bound_json(lower)}};
  o.pass = r.pass && lower_ok;
  o.notes.push_back("lambda_" + std::to_string(a.k) + "(f) in " + iv_text(r.lhs.certified) + "; max_j product in " +
                    iv_text(r.rhs) + "; overlap " + yes(r.overlap));
  o.notes.push_back("tails: lhs " + iv_text(r.lhs.tail) + ", rhs " + iv_text(r.rhs_tail));
  o.notes.push_back("spectral: " + iv_text(r.spectral_lhs) + " vs " + iv_text(r.spectral_rhs) + ", agree " +
                    yes(r.spectral_agrees));
  for (const auto& t : lower)
    o.notes.push_back("lower bound j=" + std::to_string(t.j) + ": " + to_string(t.lhs) + " <= " + to_string(t.rhs) +
                      (t.pass ? "" : "  VIOLATED"));
  if (!o.pass)
    o.failure = "overlap " + yes(r.overlap) + ", one-sided bound " + yes(r.lower_bound_holds) + ", spectral " +
                yes(r.spectral_agrees) + ", degree-level lower bound " + yes(lower_ok);
  o.table.header = {"j", "lambda_{k-j}(g)", "lambda_j(f,X/Y)", "product", "tail product"};
  for (const auto& t : r.terms)
    o.table.rows.push_back({std::to_string(t.j), iv_text(t.base.certified), iv_text(t.relative.certified),
                            iv_text(t.product), iv_text(t.tail_product)});
  return o;
}

Output cmd_mixed(const Args& a) {
  Output o;
  Loaded l;
  FibrationData d = load_fibration(l, a);
  check_k(a.k, d.x.rank());
  const unsigned p_max = a.pmax == 0 ? 6 : a.pmax;
  if (p_max < 2) throw io::InputError("--pmax must be at least 2 for the recursion");
  const std::size_t n = d.x.rank(), lb = d.q.target.rank();
  Json grid = Json::array();
  o.table.header = {"j"};
  for (std::size_t k = 0; k <= n; ++k) o.table.header.push_back("a_" + std::to_string(k) + ",j");
  for (std::size_t j = 0; j <= lb; ++j) {
    Json row = Json::array();
    std::vector<std::string> cells{std::to_string(j)};
    for (std::size_t k = 0; k <= n; ++k) {
      Rat v = mixed_degree(d.f, d.q, d.wx, d.wy, k, j);
      row.push_back(io::rat_json(v));
      cells.push_back(to_string(v));
    }
    grid.push_back(row);
    o.table.rows.push_back(cells);
  }
  MixedRecursionReport r = check_mixed_recursion(d.f, d.q, d.wx, d.wy, a.k, p_max);
  o.inputs = l.files;
  o.parameters = Json{{"k", a.k}, {"p_max", p_max}};
  o.result = Json{{"mixed_degrees", grid}, {"recursion", io::mixed_recursion_json(r)}};
  o.pass = r.pass;
  o.notes.push_back("recursion constant C = " + (r.finite ? to_string(r.constant) : std::string("infinite")) +
                    ", max diagonal of M = " + to_string(r.max_diagonal) + ", growth " +
                    iv_text(r.growth.certified) + ", dominated " + yes(r.dominated));
  if (!r.pass) o.failure = "finite " + yes(r.finite) + ", dominated " + yes(r.dominated);
  return o;
}

Output cmd_operator(const Args& a) {
  Output o;
  Loaded l;
  Fan x = load_fan(l, a);
  MonomialMap f = load_map(l, a.map, x, "map");
  TDivisor omega = load_polarization(l, a.polarization, x, "polarization");
  check_k(a.k, x.rank());
  const unsigned p_max = a.pmax == 0 ? 6 : a.pmax;
  OperatorDegreeReport r = check_operator_degree_equivalence(f, x, omega, a.k, p_max);
  o.inputs = l.files;
  o.parameters = Json{{"k", a.k}, {"p_max", p_max}};
  o.result = io::operator_json(r);
  o.notes.push_back("ratios norm/deg in [" + to_string(r.min_ratio) + ", " + to_string(r.max_ratio) +
                    "], spread " + to_string(r.spread) + "; " + r.note);
  o.table.header = {"p", "norm", "deg", "ratio", "norm^(1/p)"};
  for (std::size_t i = 0; i < r.ratios.size(); ++i)
    o.table.rows.push_back({std::to_string(i + 1), to_string(r.norms[i]), to_string(r.degrees[i]),
                            to_string(r.ratios[i]), iv_text(r.norm_roots[i])});
  return o;
}

Output run_task(const io::Scenario& s, const io::ScenarioTask& t, Json& entry) {
  Output o;
  const std::size_t n = s.fan.rank();
  const unsigned p_max = t.p_max == 0 ? default_pmax(n) : t.p_max;
  auto need_fibration = [&] {
    if (!s.fibration) throw io::InputError("task '" + t.op + "' needs a fibration in the scenario");
  };
  if (t.op == "deg") {
    entry["result"] = io::degree_sequence_json(degree_sequence(s.map, s.fan, s.omega, t.k, p_max));
  } else if (t.op == "lambda") {
    entry["result"] = io::lambda_json(dynamical_degree(s.map, s.fan, s.omega, t.k, t.tol, p_max));
  } else if (t.op == "submult") {
    SubmultReport r = check_submultiplicativity(s.map, s.map, s.fan, s.omega, t.k);
    entry["result"] = io::submult_json(r);
    o.pass = r.pass;
  } else if (t.op == "compare-polarizations") {
    if (!s.omega_prime) throw io::InputError("task 'compare-polarizations' needs polarization_prime");
    PolarizationReport r = check_polarization_comparison(s.map, s.fan, s.omega, *s.omega_prime, t.k, p_max);
    entry["result"] = io::polarization_json(r);
    o.pass = r.pass;
  } else if (t.op == "product-formula") {
    need_fibration();
    ProductFormulaReport r = check_product_formula(s.map, *s.fibration, s.omega, *s.omega_base, t.k, p_max, t.tol);
    entry["result"] = io::product_formula_json(r);
    o.pass = r.pass;
  } else if (t.op == "mixed-degrees") {
    need_fibration();
    MixedRecursionReport r = check_mixed_recursion(s.map, *s.fibration, s.omega, *s.omega_base, t.k,
                                                   t.p_max == 0 ? 6 : t.p_max);
    entry["result"] = io::mixed_recursion_json(r);
    o.pass = r.pass;
  } else if (t.op == "operator") {
    entry["result"] = io::operator_json(
        check_operator_degree_equivalence(s.map, s.fan, s.omega, t.k, t.p_max == 0 ? 6 : t.p_max));
  } else {
    throw io::InputError("unknown scenario task '" + t.op + "'");
  }
  entry["pass"] = o.pass;
  return o;
}

Output cmd_suite(const Args& a) {
  Output o;
  if (!a.scenario.empty()) {
    io::Scenario s = io::load_scenario(a.scenario);
    o.inputs = s.inputs;
    Json tasks = Json::array();
    o.table.header = {"task", "op", "k", "pass"};
    for (std::size_t i = 0; i < s.tasks.size(); ++i) {
      const auto& t = s.tasks[i];
      Json entry{{"op", t.op}, {"k", t.k}};
      Output r = run_task(s, t, entry);
      o.pass = o.pass && r.pass;
      if (!r.pass && o.failure.empty()) o.failure = "task " + std::to_string(i) + " (" + t.op + ") failed";
      tasks.push_back(entry);
      o.table.rows.push_back({std::to_string(i), t.op, std::to_string(t.k), yes(r.pass)});
    }
    o.result = Json{{"tasks", tasks}};
    return o;
  }
  std::vector<int> ids = a.criteria;
  if (ids.empty())
    for (int i = 1; i <= kCriteria; ++i) ids.push_back(i);
  for (int id : ids)
    if (id < 1 || id > kCriteria) throw io::InputError("no acceptance criterion " + std::to_string(id));
  Json rows = Json::array();
  // Timings stay out of this report so that reruns are byte-identical; the
  // acceptance binary prints them.
  o.table.header = {"criterion", "result", "detail"};
  int passed = 0;
  for (const auto& r : run_acceptance(ids)) {
    rows.push_back(Json{{"id", r.id},
                        {"title", r.title},
                        {"pass", r.pass},
                        {"detail", r.detail},
                        {"limit_seconds", r.limit_seconds}});
    o.table.rows.push_back({std::to_string(r.id) + " " + r.title, r.pass ? "PASS" : "FAIL", r.detail});
    if (r.pass) ++passed;
    else if (o.failure.empty()) o.failure = "criterion " + std::to_string(r.id) + ": " + r.detail;
  }
  o.pass = passed == static_cast<int>(ids.size());
  o.result = Json{{"criteria", rows}, {"passed", passed}, {"total", ids.size()}};
  o.notes.push_back("scoreboard: " + std::to_string(passed) + "/" + std::to_string(ids.size()) + " criteria pass");
  return o;
}

void render(const std::string& command, const Args& a, const Output& o, std::ostream& out) {
  if (a.format == "json") {
    Json j{{"command", command},
           {"inputs", io::inputs_json(o.inputs)},
           {"parameters", o.parameters},
           {"result", o.result},
           {"pass", o.pass}};
    if (!o.failure.empty()) j["failure"] = o.failure;
    out << j.dump(2) << '\n';
  } else if (a.format == "csv") {
    out << io::to_csv(o.table);
  } else {
    for (const auto& n : o.notes) out << n << '\n';
    if (!o.table.header.empty()) {
      if (!o.notes.empty()) out << '\n';
      out << io::to_text(o.table);
    }
    if (!o.failure.empty()) out << "FAILED: " << o.failure << '\n';
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  configure_threads();
  CLI::App app{"Degree growth of monomial maps on toric varieties", "degree-lab"};
  app.require_subcommand(1);
  Args a;
  auto format = [&](CLI::App* sub) {
    sub->add_option("--format", a.format, "table, json or csv")->check(CLI::IsMember({"table", "json", "csv"}));
  };
  auto fan = [&](CLI::App* sub) { sub->add_option("--fan", a.fan, "fan JSON file")->required(); };
  auto map = [&](CLI::App* sub) { sub->add_option("--map", a.map, "map JSON file")->required(); };
  auto pol = [&](CLI::App* sub) {
    sub->add_option("--polarization", a.polarization, "divisor JSON file (default: an ample class)");
  };
  auto k = [&](CLI::App* sub) { sub->add_option("--k", a.k, "degree index")->check(CLI::NonNegativeNumber); };
  auto pmax = [&](CLI::App* sub) { sub->add_option("--pmax", a.pmax, "iterates to compute (0: default)"); };
  auto tol = [&](CLI::App* sub) { sub->add_option("--tol", a.tol, "interval tolerance as p/q"); };
  auto fib = [&](CLI::App* sub) {
    sub->add_option("--fibration", a.fibration, "fibration JSON file")->required();
    sub->add_option("--base-polarization", a.base_polarization, "divisor on the base");
  };

  std::map<std::string, std::function<Output(const Args&)>> handlers{
      {"fan-info", cmd_fan_info}, {"deg", cmd_deg},         {"lambda", cmd_lambda},
      {"submult", cmd_submult},   {"compare-polarizations", cmd_compare}, {"siu", cmd_siu},
      {"product-formula", cmd_product}, {"mixed-degrees", cmd_mixed}, {"operator", cmd_operator},
      {"suite", cmd_suite}};

  auto* s = app.add_subcommand("fan-info", "rank, rays, cones and numerical group dimensions");
  fan(s), format(s);
  s = app.add_subcommand("deg", "degree sequence deg_k(f^p)");
  fan(s), map(s), pol(s), k(s), pmax(s), format(s);
  s = app.add_subcommand("lambda", "certified dynamical degree interval");
  fan(s), map(s), pol(s), k(s), pmax(s), tol(s), format(s);
  s = app.add_subcommand("submult", "deg_k(f o g) against the explicit bound");
  fan(s), map(s), pol(s), k(s), format(s);
  s->add_option("--map2", a.map2, "second map (default: the first)");
  s = app.add_subcommand("compare-polarizations", "degree ratios under two polarizations");
  fan(s), map(s), pol(s), k(s), pmax(s), format(s);
  s->add_option("--polarization2", a.polarization2, "second divisor JSON file")->required();
  s = app.add_subcommand("siu", "Siu-type inequality with witness and minimal constant");
  fan(s), k(s), format(s);
  s->add_option("--alpha", a.alpha, "nef divisor(s); one file is used k times")->required();
  s->add_option("--beta", a.beta, "big nef divisor")->required();
  s = app.add_subcommand("product-formula", "dynamical degrees across a fibration");
  fan(s), map(s), pol(s), fib(s), k(s), pmax(s), tol(s), format(s);
  s = app.add_subcommand("mixed-degrees", "mixed degrees a_{k,j} and the recursion check");
  fan(s), map(s), pol(s), fib(s), k(s), pmax(s), format(s);
  s = app.add_subcommand("operator", "pullback operator norms against degrees");
  fan(s), map(s), pol(s), k(s), pmax(s), format(s);
  s = app.add_subcommand("suite", "acceptance battery scoreboard, or a scenario's tasks");
  s->add_option("--scenario", a.scenario, "scenario JSON file");
  s->add_option("--criteria", a.criteria, "criterion numbers to run (default: all)");
  format(s);

  std::vector<std::string> args;
  for (int i = argc - 1; i >= 1; --i) args.emplace_back(argv[i]);
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  try {
    Output o = handlers.at(command)(a);
    render(command, a, o, out);
    if (!o.pass) {
      err << "check failed: " << o.failure << '\n';
      return 1;
    }
    return 0;
  } catch (const io::InputError& e) {
    err << "input error: " << e.what() << '\n';
  } catch (const FanError& e) {
    err << "input error: " << e.what() << '\n';
  } catch (const std::invalid_argument& e) {
    err << "input error: " << e.what() << '\n';
  } catch (const std::out_of_range& e) {
    err << "input error: " << e.what() << '\n';
  } catch (const std::domain_error& e) {
    err << "input error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
  }
  return 2;
}

}  // namespace degree_lab
