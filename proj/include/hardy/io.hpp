#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "hardy/diagnostics.hpp"
#include "hardy/errors.hpp"
#include "hardy/operators.hpp"
#include "hardy/oracle.hpp"
#include "hardy/symbols.hpp"

namespace hardy::io {

using json = nlohmann::ordered_json;

/// A number read from an experiment file: exact when given as rationals,
/// floating when given in polar form with an irrational angle or radius.
struct Number {
  std::optional<ComplexRational> exact;
  Complex value;

  template <Scalar S>
  S as() const {
    if constexpr (is_exact_v<S>) {
      if (!exact) throw ValidationError("inexact number used in exact arithmetic");
      return *exact;
    } else {
      return value;
    }
  }
};

inline Rational parse_rational(const json& j) {
  auto integer = [](const json& v) -> mpz_class {
    if (v.is_number_integer()) return mpz_class(std::to_string(v.get<long long>()));
    if (v.is_string()) {
      mpz_class z;
      if (z.set_str(v.get<std::string>(), 10) != 0) throw ValidationError("bad integer string '" + v.get<std::string>() + "'");
      return z;
    }
    throw ValidationError("expected an integer, got " + v.dump());
  };
  if (j.is_number_integer() || j.is_string()) return Rational(integer(j));
  if (j.is_object() && j.contains("num")) {
    const mpz_class den = j.contains("den") ? integer(j.at("den")) : mpz_class(1);
    if (den == 0) throw ValidationError("rational with zero denominator");
    Rational q(integer(j.at("num")), den);
    q.canonicalize();
    return q;
  }
  throw ValidationError("expected a rational {\"num\": int, \"den\": int}, got " + j.dump());
}

inline json rational_to_json(const Rational& q) {
  return json{{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}};
}

/// int | {num, den} | {re, im} | {polar: {abs, turns}}; the angle is 2 pi turns.
inline Number parse_number(const json& j) {
  if (j.is_object() && j.contains("polar")) {
    const auto& p = j.at("polar");
    const Rational r = p.contains("abs") ? parse_rational(p.at("abs")) : Rational(1);
    const Rational t = parse_rational(p.at("turns"));
    // Quarter turns are exact.
    Rational t4 = t * 4;
    t4.canonicalize();
    if (t4.get_den() == 1) {
      const mpz_class km = (t4.get_num() % 4 + 4) % 4;
      const long k = km.get_si();
      const ComplexRational unit = k == 0 ? ComplexRational(1) : k == 1 ? ComplexRational(0, 1)
                                 : k == 2 ? ComplexRational(-1) : ComplexRational(0, -1);
      ComplexRational z = unit * ComplexRational(r);
      return {z, to_complex(z)};
    }
    return {std::nullopt, std::polar(r.get_d(), 2.0 * std::numbers::pi * t.get_d())};
  }
  if (j.is_object() && (j.contains("re") || j.contains("im"))) {
    const Rational re = j.contains("re") ? parse_rational(j.at("re")) : Rational(0);
    const Rational im = j.contains("im") ? parse_rational(j.at("im")) : Rational(0);
    ComplexRational z(re, im);
    return {z, to_complex(z)};
  }
  const ComplexRational z(parse_rational(j));
  return {z, to_complex(z)};
}

template <Scalar S>
json scalar_to_json(const S& z) {
  if constexpr (is_exact_v<S>) {
    return json{{"re", rational_to_json(z.real())}, {"im", rational_to_json(z.imag())}};
  } else {
    return json{{"re", z.real()}, {"im", z.imag()}};
  }
}

inline MultiIndex parse_multi_index(const json& j, int n) {
  if (!j.is_array()) throw ValidationError("expected an exponent vector, got " + j.dump());
  std::vector<int> e;
  for (const auto& x : j) {
    if (!x.is_number_integer() || x.get<long long>() < 0) throw ValidationError("bad exponent in " + j.dump());
    e.push_back(x.get<int>());
  }
  if (static_cast<int>(e.size()) != n)
    throw ValidationError("exponent vector " + j.dump() + " does not have length " + std::to_string(n));
  return MultiIndex(std::move(e));
}

inline json multi_index_to_json(const MultiIndex& a) { return json(a.exponents()); }

// Trailing coefficient of a term: either one complex number or a (re, im) pair of rationals.
inline Number parse_coefficient(const json& term, std::size_t first) {
  if (term.size() == first + 1) return parse_number(term.at(first));
  if (term.size() == first + 2) {
    ComplexRational z(parse_rational(term.at(first)), parse_rational(term.at(first + 1)));
    return {z, to_complex(z)};
  }
  throw ValidationError("malformed term " + term.dump());
}

/// Symbol terms [mu, nu, re, im] or [mu, nu, c].
template <Scalar S>
SphereSymbol<S> parse_symbol_terms(const json& j, int n) {
  if (!j.is_array()) throw ValidationError("symbol must be a list of terms");
  SphereSymbol<S> f(n);
  for (const auto& t : j) {
    if (!t.is_array() || t.size() < 3) throw ValidationError("malformed symbol term " + t.dump());
    f.add_term(parse_multi_index(t.at(0), n), parse_multi_index(t.at(1), n), parse_coefficient(t, 2).as<S>());
  }
  return f;
}

/// Polynomial terms [alpha, re, im] or [alpha, c].
template <Scalar S>
Polynomial<S> parse_polynomial_terms(const json& j, int n) {
  if (!j.is_array()) throw ValidationError("polynomial must be a list of terms");
  Polynomial<S> p(n);
  for (const auto& t : j) {
    if (!t.is_array() || t.size() < 2) throw ValidationError("malformed polynomial term " + t.dump());
    p.add_term(parse_multi_index(t.at(0), n), parse_coefficient(t, 1).as<S>());
  }
  return p;
}

template <Scalar S>
json symbol_to_json(const SphereSymbol<S>& f) {
  json out = json::array();
  for (const auto& [key, c] : f.terms())
    out.push_back(json::array({multi_index_to_json(key.first), multi_index_to_json(key.second), scalar_to_json(c)}));
  return out;
}

template <Scalar S>
json polynomial_to_json(const Polynomial<S>& p) {
  json out = json::array();
  for (const auto& [alpha, c] : p.terms()) out.push_back(json::array({multi_index_to_json(alpha), scalar_to_json(c)}));
  return out;
}

inline json growth_to_json(const GrowthBound& g) {
  if (!g) return nullptr;
  return json{{"slope", rational_to_json(g->slope)}, {"offset", g->offset}};
}

/// Basis descriptor plus the sparse list of nonzero raw Gram entries.
template <Scalar S>
json operator_to_json(const TruncatedOperator<S>& a) {
  const BasisTable& b = a.basis();
  json entries = json::array();
  for (std::size_t r = 0; r < a.size(); ++r)
    for (std::size_t c = 0; c < a.size(); ++c) {
      const S& x = a.raw(r, c);
      if (is_zero(x)) continue;
      entries.push_back(json{{"row", multi_index_to_json(b[r])}, {"col", multi_index_to_json(b[c])},
                             {"value", scalar_to_json(x)}});
    }
  return json{{"basis",
               {{"dimension", b.dimension()},
                {"max_degree", b.max_degree()},
                {"size", b.size()},
                {"order", "graded by degree, decreasing lexicographic within a degree"}}},
              {"convention", "raw Gram entries <A z^col, z^row>"},
              {"arithmetic", is_exact_v<S> ? "exact" : "float"},
              {"valid_degree", a.valid_degree()},
              {"growth", growth_to_json(a.growth())},
              {"adjoint_growth", growth_to_json(a.adjoint_growth())},
              {"entries", std::move(entries)}};
}

/// Orthonormal-basis entries as CSV: row,col,row_exponents,col_exponents,re,im.
template <Scalar S>
std::string operator_to_csv(const TruncatedOperator<S>& a) {
  std::ostringstream os;
  os.precision(17);
  os << "row,col,row_exponents,col_exponents,re,im\n";
  for (std::size_t r = 0; r < a.size(); ++r)
    for (std::size_t c = 0; c < a.size(); ++c) {
      if (is_zero(a.raw(r, c))) continue;
      const Complex z = a.orthonormal(r, c);
      os << r << ',' << c << ",\"" << a.basis()[r].to_string() << "\",\"" << a.basis()[c].to_string() << "\","
         << z.real() << ',' << z.imag() << '\n';
    }
  return os.str();
}

inline json series_to_json(const Series& s) {
  json out = json::array();
  for (const auto& p : s) out.push_back(json{{"m", p.m}, {"value", p.value}});
  return out;
}

inline json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

inline json report_to_json(const ConvergenceReport& r) {
  json out{{"mode", to_string(r.mode)}, {"verdict", to_string(r.verdict)}, {"series", series_to_json(r.series)}};
  out["analytic_bound"] = r.analytic_bound ? series_to_json(*r.analytic_bound) : json(nullptr);
  out["bound_base"] = r.bound_base ? json(*r.bound_base) : json(nullptr);
  out["difference"] = series_to_json(r.difference);
  out["lower_bound"] = r.lower_bound ? series_to_json(*r.lower_bound) : json(nullptr);
  json probes = json::array();
  for (const auto& p : r.probes) probes.push_back(json{{"vector", p.label}, {"series", series_to_json(p.values)}});
  out["probes"] = std::move(probes);
  out["asymptotic_symbol"] = r.asymptotic_symbol ? symbol_to_json(*r.asymptotic_symbol) : json(nullptr);
  out["residual"] = finite_or_null(r.residual);
  return out;
}

/// CSV with header m,value,bound (bound left empty when absent).
inline std::string series_to_csv(const Series& series, const std::optional<Series>& bound) {
  std::ostringstream os;
  os.precision(17);
  os << "m,value,bound\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    os << series[i].m << ',' << series[i].value << ',';
    if (bound && i < bound->size()) os << (*bound)[i].value;
    os << '\n';
  }
  return os.str();
}

inline json estimate_to_json(const McEstimate& e) {
  return json{{"estimate_re", e.estimate.real()},
              {"estimate_im", e.estimate.imag()},
              {"stderr", e.std_error},
              {"N", e.samples},
              {"seed", e.seed}};
}

}  // namespace hardy::io
