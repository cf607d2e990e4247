#pragma once

#include <algorithm>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "hardy/diagnostics.hpp"
#include "hardy/errors.hpp"
#include "hardy/io.hpp"
#include "hardy/operators.hpp"
#include "hardy/oracle.hpp"
#include "hardy/phi.hpp"
#include "hardy/symbols.hpp"

namespace hardy::cli {

using io::json;

inline const std::set<std::string>& known_modes() {
  static const std::set<std::string> modes{"uniform",         "strong",    "cesaro",         "weak-proxy",
                                           "lower-bound",     "classify-linear", "oracle-validate", "fixed-point",
                                           "induction",       "frame-invariance"};
  return modes;
}

/// Modes that iterate Phi on the `operator` recipe.
inline bool needs_operator(const std::string& mode) {
  return mode == "uniform" || mode == "strong" || mode == "cesaro" || mode == "weak-proxy" ||
         mode == "fixed-point" || mode == "induction" || mode == "frame-invariance";
}

/// Validated experiment document.
struct ExperimentSpec {
  json source;
  std::string name;
  std::string statement;
  int dimension = 0;
  int truncation = 0;
  std::string mode;
  json params = json::object();
  std::optional<std::string> expect;
  std::uint64_t seed = 1;
  bool exact = true;
};

namespace detail {

inline bool all_numbers_exact(const json& j) {
  if (j.is_object()) {
    if (j.contains("polar")) return io::parse_number(j).exact.has_value();
    for (const auto& [k, v] : j.items())
      if (!all_numbers_exact(v)) return false;
  } else if (j.is_array()) {
    for (const auto& v : j)
      if (!all_numbers_exact(v)) return false;
  }
  return true;
}

inline void require_keys(const json& j, std::initializer_list<const char*> keys, const std::string& where) {
  for (const char* k : keys)
    if (!j.contains(k)) throw ValidationError(where + ": missing field '" + k + "'");
}

inline const json& declared(const json& doc, const char* table) {
  static const json empty = json::object();
  if (!doc.contains(table)) return empty;
  const json& t = doc.at(table);
  if (!t.is_object()) throw ValidationError(std::string("'") + table + "' must be an object of named entries");
  return t;
}

inline void check_ref(const json& doc, const char* table, const json& ref, const std::string& where) {
  if (ref.is_string() && !declared(doc, table).contains(ref.get<std::string>()))
    throw ValidationError(where + ": undeclared " + table + " entry '" + ref.get<std::string>() + "'");
}

inline const json& args_of(const json& node, std::size_t min_count, const std::string& op) {
  if (!node.contains("args") || !node.at("args").is_array() || node.at("args").size() < min_count)
    throw ValidationError("'" + op + "' needs at least " + std::to_string(min_count) + " argument(s)");
  return node.at("args");
}

inline void validate_symbol_expr(const json& doc, const json& e);
inline void validate_map_expr(const json& doc, const json& e) {
  if (e.is_string()) return check_ref(doc, "maps", e, "map reference");
  if (!e.is_object() || !(e.contains("components") || e.contains("matrix") || e.contains("identity")))
    throw ValidationError("map must be a name, {components}, {matrix[, offset]} or {identity: true}");
}

inline void validate_symbol_expr(const json& doc, const json& e) {
  if (e.is_string()) return check_ref(doc, "symbols", e, "symbol reference");
  if (e.is_array() || (e.is_object() && (e.contains("terms") || e.contains("random")))) return;
  if (!e.is_object() || !e.contains("op")) throw ValidationError("malformed symbol expression " + e.dump());
  const std::string op = e.at("op").get<std::string>();
  if (op == "pairing") {
    const auto& a = args_of(e, 2, op);
    validate_map_expr(doc, a[0]);
    validate_map_expr(doc, a[1]);
  } else if (op == "holomorphic" || op == "antiholomorphic") {
    validate_map_expr(doc, args_of(e, 1, op)[0]);
    if (!e.contains("component")) throw ValidationError("'" + op + "' needs a component index");
  } else if (op == "product" || op == "sum") {
    for (const auto& a : args_of(e, 1, op)) validate_symbol_expr(doc, a);
  } else if (op == "power" || op == "conj" || op == "scale") {
    validate_symbol_expr(doc, args_of(e, 1, op)[0]);
    if (op == "power" && !e.contains("exponent")) throw ValidationError("'power' needs an exponent");
    if (op == "scale" && !e.contains("factor")) throw ValidationError("'scale' needs a factor");
  } else {
    throw ValidationError("unknown symbol operation '" + op + "'");
  }
}

inline void validate_vector_expr(const json& doc, const json& e) {
  if (e.is_string()) return check_ref(doc, "vectors", e, "vector reference");
  if (e.is_array() || (e.is_object() && e.contains("kernel"))) return;
  throw ValidationError("vector must be a name, a term list or {kernel: point}");
}

inline void validate_operator_expr(const json& doc, const json& e) {
  if (!e.is_object() || !e.contains("op")) throw ValidationError("operator node must be an object {op, args}");
  const std::string op = e.at("op").get<std::string>();
  if (op == "identity" || op == "zero") return;
  if (op == "toeplitz") return validate_symbol_expr(doc, args_of(e, 1, op)[0]);
  if (op == "compose") return validate_map_expr(doc, args_of(e, 1, op)[0]);
  if (op == "adjoint") return validate_operator_expr(doc, args_of(e, 1, op)[0]);
  if (op == "scale") {
    if (!e.contains("factor")) throw ValidationError("'scale' needs a factor");
    return validate_operator_expr(doc, args_of(e, 1, op)[0]);
  }
  if (op == "product" || op == "sum") {
    for (const auto& a : args_of(e, 1, op)) validate_operator_expr(doc, a);
    return;
  }
  if (op == "rank_one") {
    const auto& a = args_of(e, 2, op);
    validate_vector_expr(doc, a[0]);
    validate_vector_expr(doc, a[1]);
    return;
  }
  throw ValidationError("unknown operator '" + op + "'");
}

inline int get_int(const json& j, const char* key, int fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number_integer()) throw ValidationError(std::string("'") + key + "' must be an integer");
  return j.at(key).get<int>();
}

}  // namespace detail

inline ExperimentSpec parse_spec(const json& doc) {
  if (!doc.is_object()) throw ValidationError("experiment file must be a JSON object");
  detail::require_keys(doc, {"name", "dimension", "truncation", "mode"}, "experiment");
  ExperimentSpec s;
  s.source = doc;
  s.name = doc.at("name").get<std::string>();
  s.statement = doc.value("statement", "");
  if (!doc.at("dimension").is_number_integer() || doc.at("dimension").get<int>() < 1)
    throw ValidationError("dimension must be an integer >= 1");
  if (!doc.at("truncation").is_number_integer() || doc.at("truncation").get<int>() < 0)
    throw ValidationError("truncation must be an integer >= 0");
  s.dimension = doc.at("dimension").get<int>();
  s.truncation = doc.at("truncation").get<int>();
  s.mode = doc.at("mode").get<std::string>();
  if (!known_modes().count(s.mode)) throw ValidationError("unknown mode '" + s.mode + "'");
  if (doc.contains("params")) {
    if (!doc.at("params").is_object()) throw ValidationError("params must be an object");
    s.params = doc.at("params");
  }
  if (s.params.contains("seed")) {
    const json& seed = s.params.at("seed");
    if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<long long>() >= 0))
      throw ValidationError("seed must be a non-negative integer");
    s.seed = seed.get<std::uint64_t>();
  }
  if (doc.contains("expect")) s.expect = doc.at("expect").get<std::string>();

  for (const char* table : {"symbols", "maps", "vectors", "points"}) (void)detail::declared(doc, table);
  for (const auto& [name, e] : detail::declared(doc, "symbols").items()) detail::validate_symbol_expr(doc, e);
  for (const auto& [name, e] : detail::declared(doc, "maps").items()) detail::validate_map_expr(doc, e);
  for (const auto& [name, e] : detail::declared(doc, "vectors").items()) detail::validate_vector_expr(doc, e);
  if (needs_operator(s.mode)) {
    if (!doc.contains("operator")) throw ValidationError("mode '" + s.mode + "' needs an operator recipe");
    detail::validate_operator_expr(doc, doc.at("operator"));
  }
  const auto& p = s.params;
  auto need = [&](std::initializer_list<const char*> keys) { detail::require_keys(p, keys, "params"); };
  if (s.mode == "lower-bound") need({"symbol", "map", "zeta", "eta"});
  if (s.mode == "classify-linear") need({"map"});
  if (s.mode == "induction") need({"phi", "eta", "g"});
  if (s.mode == "lower-bound") {
    detail::validate_symbol_expr(doc, p.at("symbol"));
    detail::validate_map_expr(doc, p.at("map"));
  }
  if (s.mode == "classify-linear") detail::validate_map_expr(doc, p.at("map"));
  if (s.mode == "induction") {
    detail::validate_map_expr(doc, p.at("phi"));
    detail::validate_map_expr(doc, p.at("eta"));
    detail::validate_symbol_expr(doc, p.at("g"));
  }
  if (p.contains("test_vectors"))
    for (const auto& v : p.at("test_vectors")) detail::validate_vector_expr(doc, v);
  s.exact = detail::all_numbers_exact(doc);
  return s;
}

// ---------------------------------------------------------------------------
// Building objects from the document

template <Scalar S>
class Workspace {
 public:
  explicit Workspace(const ExperimentSpec& spec)
      : spec_(spec), doc_(spec.source), basis_(enumerate_basis(spec.dimension, spec.truncation)), rng_(spec.seed) {
    // Named symbols are built once, in document order, so random draws do not depend on use order.
    for (const auto& [name, e] : detail::declared(doc_, "symbols").items()) (void)symbol(json(name));
  }

  const BasisTable& basis() const { return basis_; }
  int n() const { return spec_.dimension; }
  std::mt19937_64& rng() { return rng_; }

  S number(const json& j) const { return io::parse_number(j).template as<S>(); }

  std::vector<S> point(const json& j) const {
    if (!j.is_array() || static_cast<int>(j.size()) != n())
      throw ValidationError("point must be a list of " + std::to_string(n()) + " numbers");
    std::vector<S> out;
    for (const auto& x : j) out.push_back(number(x));
    return out;
  }

  SphereSymbol<S> symbol(const json& e) {
    if (e.is_string()) {
      const std::string name = e.get<std::string>();
      if (auto it = symbols_.find(name); it != symbols_.end()) return it->second;
      if (!resolving_.insert("symbol:" + name).second) throw ValidationError("cyclic symbol reference '" + name + "'");
      auto f = symbol(detail::declared(doc_, "symbols").at(name));
      return symbols_.emplace(name, std::move(f)).first->second;
    }
    if (e.is_array()) return io::parse_symbol_terms<S>(e, n());
    if (e.contains("terms")) return io::parse_symbol_terms<S>(e.at("terms"), n());
    if (e.contains("random")) {
      const auto& r = e.at("random");
      const auto f = random_rational_symbol(n(), detail::get_int(r, "hol", 2), detail::get_int(r, "anti", 2),
                                            detail::get_int(r, "terms", 6), rng_);
      return f.template cast<S>();
    }
    const std::string op = e.at("op").get<std::string>();
    const auto& args = e.at("args");
    if (op == "pairing") return pairing_symbol(map(args[0]), map(args[1]));
    if (op == "holomorphic" || op == "antiholomorphic") {
      const auto m = map(args[0]);
      const int j = e.at("component").get<int>();
      if (j < 0 || j >= n()) throw ValidationError("component index out of range");
      return op == "holomorphic" ? SphereSymbol<S>::holomorphic(m.component(j))
                                 : SphereSymbol<S>::antiholomorphic(m.component(j));
    }
    if (op == "conj") return symbol_conj(symbol(args[0]));
    if (op == "power") return symbol_power(symbol(args[0]), e.at("exponent").get<int>());
    if (op == "scale") return symbol(args[0]).scaled(number(e.at("factor")));
    SphereSymbol<S> acc = symbol(args[0]);
    for (std::size_t i = 1; i < args.size(); ++i)
      acc = op == "product" ? symbol_product(acc, symbol(args[i])) : acc + symbol(args[i]);
    return acc;
  }

  PolySelfMap<S> map(const json& e) {
    if (e.is_string()) {
      const std::string name = e.get<std::string>();
      if (auto it = maps_.find(name); it != maps_.end()) return it->second;
      if (!resolving_.insert("map:" + name).second) throw ValidationError("cyclic map reference '" + name + "'");
      auto m = map(detail::declared(doc_, "maps").at(name));
      return maps_.emplace(name, std::move(m)).first->second;
    }
    if (e.contains("identity")) return PolySelfMap<S>::identity(n());
    if (e.contains("matrix")) {
      std::vector<std::vector<S>> a;
      for (const auto& row : e.at("matrix")) {
        if (!row.is_array() || static_cast<int>(row.size()) != n()) throw ValidationError("matrix must be n x n");
        std::vector<S> r;
        for (const auto& x : row) r.push_back(number(x));
        a.push_back(std::move(r));
      }
      if (static_cast<int>(a.size()) != n()) throw ValidationError("matrix must be n x n");
      std::vector<S> b;
      if (e.contains("offset")) b = point(e.at("offset"));
      return PolySelfMap<S>::affine(a, b);
    }
    const auto& comps = e.at("components");
    if (!comps.is_array() || static_cast<int>(comps.size()) != n())
      throw ValidationError("map needs exactly " + std::to_string(n()) + " components");
    std::vector<Polynomial<S>> polys;
    for (const auto& c : comps) polys.push_back(io::parse_polynomial_terms<S>(c, n()));
    return PolySelfMap<S>(n(), std::move(polys));
  }

  CoeffVector<S> vector(const json& e) {
    if (e.is_string()) {
      const std::string name = e.get<std::string>();
      if (!resolving_.insert("vector:" + name).second) throw ValidationError("cyclic vector reference '" + name + "'");
      auto x = vector(detail::declared(doc_, "vectors").at(name));
      resolving_.erase("vector:" + name);
      return x;
    }
    if (e.is_object() && e.contains("kernel")) return kernel_vector(point(e.at("kernel")), basis_);
    return polynomial_vector(io::parse_polynomial_terms<S>(e, n()), basis_);
  }

  TruncatedOperator<S> op(const json& e) {
    const std::string kind = e.at("op").get<std::string>();
    if (kind == "identity") return TruncatedOperator<S>::identity(basis_);
    if (kind == "zero") return TruncatedOperator<S>::zero(basis_);
    const auto& args = e.at("args");
    if (kind == "toeplitz") return toeplitz_op(symbol(args[0]), basis_);
    if (kind == "compose") return composition_op(map(args[0]), basis_);
    if (kind == "adjoint") {
      auto inner = op(args[0]);
      if (!inner.growth() || inner.growth()->slope > 1) note(kAdjointNote);
      return adjoint(inner);
    }
    if (kind == "scale") return scale(number(e.at("factor")), op(args[0]));
    if (kind == "rank_one") return rank_one(vector(args[0]), vector(args[1]), basis_);
    TruncatedOperator<S> acc = op(args[0]);
    for (std::size_t i = 1; i < args.size(); ++i) acc = kind == "product" ? multiply(acc, op(args[i])) : add(acc, op(args[i]));
    return acc;
  }

  static constexpr const char* kAdjointNote =
      "adjoint of a truncation whose degree growth exceeds 1: it need not equal the truncation of the adjoint";

  /// Caveats collected while building the objects, reported verbatim.
  const std::vector<std::string>& notes() const { return notes_; }
  void note(const std::string& text) {
    if (std::find(notes_.begin(), notes_.end(), text) == notes_.end()) notes_.push_back(text);
  }

  /// The self-map when the recipe is a bare composition operator.
  std::optional<PolySelfMap<S>> bare_composition(const json& e) {
    if (e.at("op").get<std::string>() != "compose") return std::nullopt;
    return map(e.at("args")[0]);
  }

 private:
  const ExperimentSpec& spec_;
  const json& doc_;
  BasisTable basis_;
  std::mt19937_64 rng_;
  std::map<std::string, SphereSymbol<S>> symbols_;
  std::map<std::string, PolySelfMap<S>> maps_;
  std::set<std::string> resolving_;
  std::vector<std::string> notes_;
};

// ---------------------------------------------------------------------------
// Running

struct Check {
  std::string name;
  bool passed = false;
  json detail;
};

struct RunResult {
  json report;          // full report document
  std::string csv;      // series.csv contents
  std::string outcome;  // verdict, "pass"/"fail", or "uat"/"not-uat"
  bool checks_passed = true;
  bool matches_expect = true;
  std::optional<json> operator_dump;
  std::string operator_csv;
};

struct RunOptions {
  bool timestamp = true;
  bool dump_operator = false;
};

namespace detail {

inline std::string utc_timestamp() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline json checks_to_json(const std::vector<Check>& checks) {
  json out = json::array();
  for (const auto& c : checks) out.push_back(json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return out;
}

template <Scalar S>
json operator_summary(const TruncatedOperator<S>& a) {
  return json{{"basis_size", a.size()},
              {"valid_degree", a.valid_degree()},
              {"growth", io::growth_to_json(a.growth())},
              {"adjoint_growth", io::growth_to_json(a.adjoint_growth())}};
}

inline json linear_verdict_to_json(const LinearVerdict& v) {
  json out{{"uat", v.uat}, {"spectral_radius", v.spectral_radius}, {"norm", v.norm}};
  if (v.certificate) {
    json zeta = json::array();
    for (const auto& z : v.certificate->zeta) zeta.push_back(json{{"re", z.real()}, {"im", z.imag()}});
    out["certificate"] = json{{"lambda", {{"re", v.certificate->lambda.real()}, {"im", v.certificate->lambda.imag()}}},
                              {"zeta", std::move(zeta)},
                              {"residual", v.certificate->residual},
                              {"verified", v.certificate->verified}};
  } else {
    out["certificate"] = nullptr;
  }
  return out;
}

template <Scalar S>
std::vector<ProbeVector<S>> test_vectors(Workspace<S>& ws, const json& params) {
  if (!params.contains("test_vectors")) return default_test_vectors<S>(ws.basis());
  std::vector<ProbeVector<S>> out;
  for (const auto& v : params.at("test_vectors")) out.push_back({v.is_string() ? v.get<std::string>() : v.dump(), ws.vector(v)});
  return out;
}

inline int m_max_param(const json& params, int valid) {
  const int m = get_int(params, "m_max", std::min(4, std::max(valid, 1)));
  if (m < 1) throw ValidationError("m_max must be >= 1");
  if (m > valid)
    throw TrustExhausted("m_max = " + std::to_string(m) + " exceeds the certified block of the operator", std::max(valid, 0));
  return m;
}

inline std::size_t samples_param(const json& params, const char* key, std::size_t fallback) {
  if (!params.contains(key)) return fallback;
  if (!params.at(key).is_number_unsigned()) throw ValidationError(std::string("'") + key + "' must be a positive integer");
  return params.at(key).get<std::size_t>();
}

inline double tolerance_param(const json& params, const char* key, double fallback) {
  if (!params.contains(key)) return fallback;
  if (!params.at(key).is_number()) throw ValidationError(std::string("'") + key + "' must be a number");
  return params.at(key).get<double>();
}

// max_{s <= s_max} q_s(f^m) for m = 1..m_max: lower bounds for ||Phi^m(C_phi)|| = ||T_{f^m} C_phi||.
inline Series linear_lower_bounds(const PolySelfMap<Complex>& phi, const EigenCertificate& cert, int m_max, int s_max) {
  const int n = phi.dimension();
  const auto f = pairing_symbol(phi, PolySelfMap<Complex>::identity(n));
  std::vector<Complex> eta(cert.zeta.size());
  for (std::size_t i = 0; i < eta.size(); ++i) eta[i] = cert.lambda * cert.zeta[i];
  Series out;
  for (int m = 1; m <= m_max; ++m) {
    const auto q = lower_bound_probe(symbol_power(f, m), phi, cert.zeta, eta, s_max);
    out.push_back({m, *std::max_element(q.begin(), q.end())});
  }
  return out;
}

template <Scalar S>
void convergence_mode(const ExperimentSpec& spec, Workspace<S>& ws, const TruncatedOperator<S>& a, json& body,
                      std::vector<Check>& checks, RunResult& res) {
  const auto& p = spec.params;
  const int m_max = m_max_param(p, a.valid_degree());
  ConvergenceReport r;
  std::vector<NamedSeries> companions;
  auto cesaro_companions = [&] {
    if (m_max >= 2) companions = cesaro_probe(a, test_vectors(ws, p), m_max).probes;
  };
  if (spec.mode == "uniform" || spec.mode == "fixed-point" || spec.mode == "induction") {
    const auto phi = ws.bare_composition(spec.source.at("operator"));
    if (phi && phi->is_linear()) {
      r = uat_sequence(a, m_max, *phi, samples_param(p, "sup_samples", 100000), spec.seed);
      try {
        const auto lv = linear_uat_classifier(to_eigen(phi->linear_matrix()));
        body["linear_classifier"] = linear_verdict_to_json(lv);
        if (lv.certificate && lv.certificate->verified)
          r.lower_bound = linear_lower_bounds(phi->template cast<Complex>(), *lv.certificate, m_max,
                                              get_int(p, "s_max", 24));
      } catch (const InputError& e) {
        body["linear_classifier"] = json{{"skipped", e.what()}};
      }
    } else {
      r = uat_sequence(a, m_max);
    }
    cesaro_companions();
  } else if (spec.mode == "strong") {
    r = sat_probe(a, test_vectors(ws, p), m_max);
    cesaro_companions();
  } else if (spec.mode == "cesaro") {
    r = cesaro_probe(a, test_vectors(ws, p), m_max);
  } else {
    r = weak_probe(a, m_max);
  }
  classify(r, companions);
  body["report"] = io::report_to_json(r);
  if (!companions.empty()) {
    json c = json::array();
    for (const auto& s : companions) c.push_back(json{{"vector", s.label}, {"series", io::series_to_json(s.values)}});
    body["cesaro_companions"] = std::move(c);
  }
  res.outcome = to_string(r.verdict);
  res.csv = io::series_to_csv(r.series, r.analytic_bound ? r.analytic_bound : r.lower_bound);

  if (spec.mode == "strong" && p.value("adjoint_probe", false)) {
    if (!a.growth() || a.growth()->slope > 1) ws.note(Workspace<S>::kAdjointNote);
    const auto adj = adjoint(a);
    const auto ra = sat_probe(adj, test_vectors(ws, p), m_max);
    body["adjoint_report"] = io::report_to_json(ra);
    if (p.contains("kernel_decay")) {
      // ||Phi^m(A*) K_a|| <= factor |a|^m ||K_a|| on the common block.
      const auto& kd = p.at("kernel_decay");
      const auto pt = ws.point(kd.at("point"));
      double radius = 0.0;
      for (const auto& z : pt) radius += std::norm(to_complex(z));
      radius = std::sqrt(radius);
      const double factor = io::parse_rational(kd.value("factor", json(1))).get_d();
      const int block = adj.valid_degree() - m_max;
      const auto x = restrict_to_block(kernel_vector(pt, ws.basis()), ws.basis(), block);
      const auto it = phi_iterate(adj, m_max);
      const double kn = vector_norm(x, ws.basis());
      bool ok = true;
      json rows = json::array();
      for (int m = 1; m <= m_max; ++m) {
        const double v = vector_norm(apply_on_block(it[static_cast<std::size_t>(m)], x, block), ws.basis());
        const double bound = factor * std::pow(radius, m) * kn;
        ok = ok && v <= bound;
        rows.push_back(json{{"m", m}, {"value", v}, {"bound", bound}});
      }
      checks.push_back({"adjoint_kernel_decay", ok, std::move(rows)});
    }
  }
}

template <Scalar S>
RunResult run_typed(const ExperimentSpec& spec, const RunOptions& opt) {
  Workspace<S> ws(spec);
  const auto& p = spec.params;
  RunResult res;
  json body = json::object();
  std::vector<Check> checks;
  std::optional<TruncatedOperator<S>> a;
  if (needs_operator(spec.mode)) {
    a = ws.op(spec.source.at("operator"));
    body["operator"] = operator_summary(*a);
    if (opt.dump_operator) {
      res.operator_dump = io::operator_to_json(*a);
      res.operator_csv = io::operator_to_csv(*a);
    }
  }

  if (spec.mode == "uniform" || spec.mode == "strong" || spec.mode == "cesaro" || spec.mode == "weak-proxy") {
    convergence_mode(spec, ws, *a, body, checks, res);
  } else if (spec.mode == "fixed-point") {
    if (a->valid_degree() < 1) throw TrustExhausted("fixed-point: operator has no block left after one step", 0);
    const auto phi_a = phi_apply(*a);
    const int block = phi_a.valid_degree();
    const bool exact_equal = equal_on_block(phi_a, *a, block, 1e-12);
    checks.push_back({"phi_fixed_point", exact_equal,
                      json{{"block_degree", block}, {"max_difference", max_diff_on_block(phi_a, *a, block)}}});
    convergence_mode(spec, ws, *a, body, checks, res);
  } else if (spec.mode == "induction") {
    const auto phi = ws.map(p.at("phi"));
    const auto eta = ws.map(p.at("eta"));
    const auto g = ws.symbol(p.at("g"));
    const int m_max = m_max_param(p, a->valid_degree());
    const auto it = phi_iterate(*a, m_max);
    const auto pairing = pairing_symbol(phi, eta);
    const auto c_phi = composition_op(phi, ws.basis());
    if (eta.degree() > 1) ws.note(Workspace<S>::kAdjointNote);
    const auto c_eta_adj = adjoint(composition_op(eta, ws.basis()));
    Series diffs;
    bool ok = true;
    for (int m = 1; m <= m_max; ++m) {
      const auto rhs = multiply(c_eta_adj, multiply(toeplitz_op(symbol_product(g, symbol_power(pairing, m)), ws.basis()), c_phi));
      const auto& lhs = it[static_cast<std::size_t>(m)];
      const int block = std::min(lhs.valid_degree(), rhs.valid_degree());
      ok = ok && equal_on_block(lhs, rhs, block, 1e-12);
      diffs.push_back({m, max_diff_on_block(lhs, rhs, block)});
    }
    checks.push_back({"induction_identity", ok, io::series_to_json(diffs)});
    convergence_mode(spec, ws, *a, body, checks, res);
  } else if (spec.mode == "frame-invariance") {
    const int count = get_int(p, "unitaries", 5);
    const double tol = tolerance_param(p, "tolerance", 1e-10);
    const auto reference = phi_apply(*a).template cast<Complex>();
    Series diffs;
    bool ok = true;
    json frames = json::array();
    for (int k = 1; k <= count; ++k) {
      const Eigen::MatrixXcd u = random_unitary(ws.n(), ws.rng());
      const auto framed = phi_in_frame(*a, u);
      const int block = std::min(framed.valid_degree(), reference.valid_degree());
      const double d = max_diff_on_block(framed, reference, block);
      ok = ok && d <= tol;
      diffs.push_back({k, d});
      frames.push_back(json{{"index", k}, {"block_degree", block}, {"max_difference", d}});
    }
    checks.push_back({"frame_invariance", ok, json{{"tolerance", tol}, {"frames", std::move(frames)}}});
    body["series"] = io::series_to_json(diffs);
    Series bound;
    for (const auto& d : diffs) bound.push_back({d.m, tol});
    res.csv = io::series_to_csv(diffs, bound);
    res.outcome = ok ? "pass" : "fail";
  } else if (spec.mode == "lower-bound") {
    const auto f = ws.symbol(p.at("symbol"));
    const auto phi = ws.map(p.at("map"));
    const auto zeta = ws.point(p.at("zeta"));
    const auto eta = ws.point(p.at("eta"));
    const int s_max = get_int(p, "s_max", 12);
    const auto q = lower_bound_probe(f, phi, zeta, eta, s_max);
    std::vector<Complex> zf;
    for (const auto& z : zeta) zf.push_back(to_complex(z));
    const double target = std::abs(eval_symbol(f, zf));
    Series series, bound;
    bool monotone = true;
    for (int s = 1; s <= s_max; ++s) {
      series.push_back({s, q[static_cast<std::size_t>(s - 1)]});
      bound.push_back({s, target});
      if (s > 1 && q[static_cast<std::size_t>(s - 1)] + 1e-12 < q[static_cast<std::size_t>(s - 2)]) monotone = false;
    }
    checks.push_back({"non_decreasing", monotone, nullptr});
    body["series"] = io::series_to_json(series);
    body["target"] = target;
    body["gap"] = target - q.back();
    res.csv = io::series_to_csv(series, bound);
    res.outcome = monotone ? "pass" : "fail";
  } else if (spec.mode == "classify-linear") {
    const auto phi = ws.map(p.at("map"));
    if (!phi.is_linear()) throw ValidationError("classify-linear needs a linear map");
    const auto lv = linear_uat_classifier(to_eigen(phi.linear_matrix()));
    body["linear_classifier"] = linear_verdict_to_json(lv);
    if (!lv.uat) checks.push_back({"eigen_certificate", lv.certificate && lv.certificate->verified, nullptr});
    res.outcome = lv.uat ? "uat" : "not-uat";
    res.csv = io::series_to_csv({{0, lv.spectral_radius}}, Series{{0, 1.0}});
  } else if (spec.mode == "oracle-validate") {
    const std::size_t samples = samples_param(p, "N", 1000000);
    const int weight_degree = get_int(p, "weight_degree", 4);
    const int entries = get_int(p, "entries", 30);
    const double z_max = tolerance_param(p, "z_max", 4.0);
    const int n = ws.n();
    json items = json::array();
    Series errs, bounds;
    bool ok = true;
    int index = 0;
    auto record = [&](json item, const Complex& exact, const McEstimate& e) {
      const double err = std::abs(e.estimate - exact);
      const bool pass = err <= z_max * e.std_error;
      ok = ok && pass;
      ++index;
      errs.push_back({index, err});
      bounds.push_back({index, z_max * e.std_error});
      item["exact_re"] = exact.real();
      item["exact_im"] = exact.imag();
      item.update(io::estimate_to_json(e));
      item["passed"] = pass;
      items.push_back(std::move(item));
    };
    const BasisTable wb = enumerate_basis(n, weight_degree);
    const auto zero = MultiIndex::zero(n);
    for (std::size_t i = 0; i < wb.size(); ++i) {
      const auto mono = SphereSymbol<S>::term(wb[i], zero);
      const auto e = mc_pairing(mono, mono, samples, spec.seed + static_cast<std::uint64_t>(index));
      record(json{{"kind", "monomial_norm_sq"}, {"alpha", io::multi_index_to_json(wb[i])}},
             Complex(monomial_norm_sq(wb[i], n).get_d(), 0.0), e);
    }
    const BasisTable eb = enumerate_basis(n, 3);
    std::uniform_int_distribution<std::size_t> pick(0, eb.size() - 1);
    for (int k = 0; k < entries; ++k) {
      const auto f = random_rational_symbol(n, 2, 2, 4, ws.rng()).template cast<S>();
      const MultiIndex beta = eb[pick(ws.rng())];
      MultiIndex gamma = eb[pick(ws.rng())];
      // Aim most entries at a nonzero target: gamma = mu + beta - nu for a random stored term.
      if (!f.is_zero() && k % 3 != 2) {
        auto t = f.terms().begin();
        std::advance(t, static_cast<long>(std::uniform_int_distribution<std::size_t>(0, f.terms().size() - 1)(ws.rng())));
        if (auto g = (t->first.first + beta).minus(t->first.second)) gamma = *g;
      }
      const BasisTable tb = enumerate_basis(n, std::max(beta.degree(), gamma.degree()));
      const auto t_op = toeplitz_op(f, tb);
      const Complex exact = to_complex(t_op.raw(*tb.index_of(gamma), *tb.index_of(beta)));
      const auto e = mc_toeplitz_entry(f, beta, gamma, samples, spec.seed + static_cast<std::uint64_t>(index));
      record(json{{"kind", "toeplitz_entry"},
                  {"symbol", io::symbol_to_json(f)},
                  {"beta", io::multi_index_to_json(beta)},
                  {"gamma", io::multi_index_to_json(gamma)}},
             exact, e);
    }
    checks.push_back({"oracle_agreement", ok, json{{"z_max", z_max}, {"items", index}}});
    body["items"] = std::move(items);
    res.csv = io::series_to_csv(errs, bounds);
    res.outcome = ok ? "pass" : "fail";
  }

  for (const auto& c : checks) res.checks_passed = res.checks_passed && c.passed;
  res.matches_expect = !spec.expect || *spec.expect == res.outcome;

  json doc;
  doc["name"] = spec.name;
  doc["statement"] = spec.statement;
  doc["mode"] = spec.mode;
  doc["dimension"] = spec.dimension;
  doc["truncation"] = spec.truncation;
  doc["arithmetic"] = is_exact_v<S> ? "exact" : "float";
  doc["seed"] = spec.seed;
  if (opt.timestamp) doc["timestamp"] = utc_timestamp();
  for (auto& [k, v] : body.items()) doc[k] = v;
  doc["checks"] = checks_to_json(checks);
  if (!ws.notes().empty()) doc["notes"] = ws.notes();
  doc["outcome"] = res.outcome;
  doc["expect"] = spec.expect ? json(*spec.expect) : json(nullptr);
  doc["status"] = !res.checks_passed ? "check-failed" : !spec.expect ? "no-expectation"
                  : res.matches_expect ? "match" : "mismatch";
  doc["spec"] = spec.source;
  res.report = std::move(doc);
  return res;
}

}  // namespace detail

/// Runs a validated experiment in exact arithmetic when every number in the
/// document is rational, and in double precision otherwise.
inline RunResult run_experiment(const ExperimentSpec& spec, const RunOptions& opt = {}) {
  return spec.exact ? detail::run_typed<ComplexRational>(spec, opt) : detail::run_typed<Complex>(spec, opt);
}

/// 0 when all checks pass and the outcome matches "expect" (if given), else 1.
inline int exit_status(const RunResult& r) { return r.checks_passed && r.matches_expect ? 0 : 1; }

}  // namespace hardy::cli
