#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hardy/errors.hpp"
#include "hardy/operators.hpp"
#include "hardy/phi.hpp"
#include "hardy/symbols.hpp"

namespace hardy {

// ---------------------------------------------------------------------------
// Norms

namespace detail {

inline double power_iteration(const Eigen::MatrixXcd& m, Eigen::VectorXcd x) {
  constexpr double kTol = 1e-10;
  constexpr int kMaxIter = 10000;
  double xn = x.norm();
  if (xn == 0.0) return 0.0;
  x /= xn;
  double sigma = 0.0;
  for (int it = 0; it < kMaxIter; ++it) {
    Eigen::VectorXcd y = m.adjoint() * (m * x);
    const double lambda = std::sqrt(std::max(std::real(x.dot(y)), 0.0));
    const double yn = y.norm();
    if (yn == 0.0) return 0.0;
    x = y / yn;
    if (std::abs(lambda - sigma) <= kTol * std::max(lambda, 1.0)) return std::max(lambda, (m * x).norm());
    sigma = lambda;
  }
  return std::max(sigma, (m * x).norm());
}

}  // namespace detail

/// Largest singular value of an explicit matrix by power iteration on M*M.
///
/// Starts from the all-ones vector; a second deterministic start at the
/// basis vector of the largest column guards against a start orthogonal to
/// the top singular space. Returns the larger estimate, a lower bound.
inline double spectral_norm_estimate(const Eigen::MatrixXcd& m) {
  if (m.size() == 0) return 0.0;
  double best = detail::power_iteration(m, Eigen::VectorXcd::Ones(m.cols()));
  Eigen::Index col = 0;
  const double top = m.colwise().norm().maxCoeff(&col);
  if (top == 0.0) return 0.0;
  best = std::max(best, detail::power_iteration(m, Eigen::VectorXcd::Unit(m.cols(), col)));
  return best;
}

/// Norm of P_v A P_v in the orthonormal basis, v the certified degree.
template <Scalar S>
double block_norm(const TruncatedOperator<S>& a) {
  if (a.valid_degree() < 0) throw InputError("block_norm: operator has no certified block");
  return spectral_norm_estimate(orthonormal_block(a, a.valid_degree()));
}

template <Scalar S>
double block_norm_at(const TruncatedOperator<S>& a, int d) {
  if (d < 0 || d > a.valid_degree()) throw InputError("block_norm_at: degree outside the certified block");
  return spectral_norm_estimate(orthonormal_block(a, d));
}

// ---------------------------------------------------------------------------
// Reports

enum class ProbeMode { uniform, strong, cesaro, weak_proxy };
enum class Verdict { converges_to_toeplitz, converges_to_zero, non_convergent, inconclusive };

inline std::string to_string(ProbeMode m) {
  switch (m) {
    case ProbeMode::uniform: return "uniform";
    case ProbeMode::strong: return "strong";
    case ProbeMode::cesaro: return "cesaro";
    case ProbeMode::weak_proxy: return "weak-proxy";
  }
  return "?";
}

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::converges_to_toeplitz: return "converges-to-toeplitz";
    case Verdict::converges_to_zero: return "converges-to-zero";
    case Verdict::non_convergent: return "non-convergent";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

inline std::optional<Verdict> parse_verdict(const std::string& s) {
  for (auto v : {Verdict::converges_to_toeplitz, Verdict::converges_to_zero, Verdict::non_convergent,
                 Verdict::inconclusive})
    if (to_string(v) == s) return v;
  return std::nullopt;
}

struct SeriesPoint {
  int m = 0;
  double value = 0.0;
};
using Series = std::vector<SeriesPoint>;

struct NamedSeries {
  std::string label;
  Series values;
};

struct ConvergenceReport {
  ProbeMode mode = ProbeMode::uniform;
  Series series;
  std::optional<Series> analytic_bound;
  std::optional<double> bound_base;      // sup-norm estimate the bound is built from
  Series difference;                     // distance between consecutive iterates
  std::vector<NamedSeries> probes;       // per-vector series (strong / cesaro modes)
  std::optional<Series> lower_bound;     // certified lower bounds for the series
  Verdict verdict = Verdict::inconclusive;
  std::optional<SphereSymbol<Complex>> asymptotic_symbol;
  double residual = std::numeric_limits<double>::quiet_NaN();
};

namespace detail {

constexpr double kZeroThreshold = 1e-6;
constexpr double kMonotoneSlack = 1e-12;
constexpr double kPersistLevel = 0.5;

inline std::size_t tail_start(std::size_t n) { return n - (n + 2) / 3; }

inline bool tail_non_increasing(const Series& s) {
  if (s.empty()) return false;
  for (std::size_t i = tail_start(s.size()) + 1; i < s.size(); ++i)
    if (s[i].value > s[i - 1].value + kMonotoneSlack) return false;
  return true;
}

inline bool meets_zero_rule(const Series& s, const std::optional<Series>& bound, std::optional<double> base) {
  if (!tail_non_increasing(s)) return false;
  if (s.back().value < kZeroThreshold) return true;
  if (!bound || !base || *base >= 1.0 - 1e-3 || bound->size() != s.size()) return false;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i].value > 2.0 * (*bound)[i].value) return false;
  return true;
}

inline bool persists(const Series& s) {
  if (s.empty()) return false;
  for (std::size_t i = tail_start(s.size()); i < s.size(); ++i)
    if (s[i].value < kPersistLevel) return false;
  return true;
}

inline bool decays(const Series& s) {
  return s.size() >= 2 && tail_non_increasing(s) && s.back().value < s.front().value;
}

}  // namespace detail

/// Assigns the verdict from the report's series and the optional decaying
/// companion probes (typically Cesaro probes of the same operator).
///
///  - converges-to-zero: final third of the series non-increasing, and either
///    the last value < 1e-6 or every value lies within twice an analytic
///    geometric bound whose base is < 1 - 1e-3;
///  - converges-to-toeplitz: the difference series meets the same rule and
///    the Toeplitz residual is < 1e-6;
///  - non-convergent: the series, the lower-bound certificate or a probe
///    stays >= 0.5 over its final third while a companion probe decays;
///  - inconclusive otherwise.
inline Verdict classify(ConvergenceReport& r, const std::vector<NamedSeries>& decaying = {}) {
  using namespace detail;
  if (r.series.empty()) throw InputError("classify: empty series");
  if (meets_zero_rule(r.series, r.analytic_bound, r.bound_base)) return r.verdict = Verdict::converges_to_zero;
  if (!r.difference.empty() && meets_zero_rule(r.difference, std::nullopt, std::nullopt) &&
      r.residual < kZeroThreshold)
    return r.verdict = Verdict::converges_to_toeplitz;
  bool persistent = persists(r.series) || (r.lower_bound && persists(*r.lower_bound));
  for (const auto& p : r.probes) persistent = persistent || persists(p.values);
  bool decay = false;
  for (const auto& p : decaying) decay = decay || decays(p.values);
  if (persistent && decay) return r.verdict = Verdict::non_convergent;
  return r.verdict = Verdict::inconclusive;
}

// ---------------------------------------------------------------------------
// Asymptotic symbol

struct ExtractedSymbol {
  SphereSymbol<Complex> symbol;
  double residual = 0.0;   // block norm of Phi(A) - A
  double fit_error = 0.0;  // largest orthonormal entry of A - T_symbol on the certified block
};

/// Least-squares fit of a symbol with degrees <= v/2 to the certified block of A.
///
/// The fit runs over the standard sphere monomials z^mu conj(z)^nu with
/// min(mu_n, nu_n) = 0, which represent every polynomial function on the sphere
/// exactly once. Equations with gamma - beta = k only involve unknowns with
/// mu - nu = k, so each difference class is solved on its own.
template <Scalar S>
ExtractedSymbol extract_symbol(const TruncatedOperator<S>& a) {
  const int v = a.valid_degree();
  if (v < 1) throw InputError("extract_symbol: certified block must have degree >= 1");
  const BasisTable& basis = a.basis();
  const int n = basis.dimension();
  const int h = v / 2;
  const BasisTable half = enumerate_basis(n, h);

  using Diff = std::vector<int>;
  auto diff = [n](const MultiIndex& x, const MultiIndex& y) {
    Diff d(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) d[static_cast<std::size_t>(j)] = x[j] - y[j];
    return d;
  };
  std::map<Diff, std::vector<std::pair<std::size_t, std::size_t>>> unknowns;  // (mu, nu) in `half`
  for (std::size_t i = 0; i < half.size(); ++i)
    for (std::size_t k = 0; k < half.size(); ++k)
      if (std::min(half[i][n - 1], half[k][n - 1]) == 0) unknowns[diff(half[i], half[k])].emplace_back(i, k);

  const std::size_t block = basis.block_size(v);
  std::map<Diff, std::vector<std::pair<std::size_t, std::size_t>>> equations;  // (gamma, beta)
  for (std::size_t r = 0; r < block; ++r)
    for (std::size_t c = 0; c < block; ++c) equations[diff(basis[r], basis[c])].emplace_back(r, c);

  SphereSymbol<Complex> fitted(n);
  for (const auto& [k, eqs] : equations) {
    auto it = unknowns.find(k);
    if (it == unknowns.end()) continue;
    const auto& vars = it->second;
    Eigen::MatrixXcd lhs(static_cast<Eigen::Index>(eqs.size()), static_cast<Eigen::Index>(vars.size()));
    Eigen::VectorXcd rhs(static_cast<Eigen::Index>(eqs.size()));
    for (std::size_t e = 0; e < eqs.size(); ++e) {
      const auto [r, c] = eqs[e];
      const double scale = 1.0 / std::sqrt(basis.weight(r).get_d() * basis.weight(c).get_d());
      rhs(static_cast<Eigen::Index>(e)) = a.orthonormal(r, c);
      for (std::size_t u = 0; u < vars.size(); ++u)
        lhs(static_cast<Eigen::Index>(e), static_cast<Eigen::Index>(u)) =
            monomial_norm_sq(half[vars[u].first] + basis[c], n).get_d() * scale;
    }
    const Eigen::VectorXcd sol = lhs.completeOrthogonalDecomposition().solve(rhs);
    for (std::size_t u = 0; u < vars.size(); ++u) {
      const Complex coef = sol(static_cast<Eigen::Index>(u));
      if (std::abs(coef) > 1e-12) fitted.add_term(half[vars[u].first], half[vars[u].second], coef);
    }
  }

  ExtractedSymbol out{fitted, 0.0, 0.0};
  out.residual = block_norm(subtract(phi_apply(a), a));
  const auto t = toeplitz_op(fitted, basis);
  for (std::size_t r = 0; r < block; ++r)
    for (std::size_t c = 0; c < block; ++c)
      out.fit_error = std::max(out.fit_error, std::abs(a.orthonormal(r, c) - t.orthonormal(r, c)));
  return out;
}

// ---------------------------------------------------------------------------
// Iterate sequences

/// Norm sequence ||Phi^m(A)|| for m = 1..m_max on the certified blocks, with
/// the difference series ||Phi^m(A) - Phi^(m+1)(A)|| while iterates remain.
template <Scalar S>
ConvergenceReport uat_sequence(const TruncatedOperator<S>& a, int m_max) {
  if (m_max < 1) throw InputError("uat_sequence: m_max must be >= 1");
  const int available = std::min(m_max + 1, a.valid_degree());
  if (m_max > a.valid_degree())
    throw TrustExhausted("uat_sequence: m_max exceeds the certified block", std::max(a.valid_degree(), 0));
  const auto it = phi_iterate(a, std::max(available, m_max));
  ConvergenceReport r;
  r.mode = ProbeMode::uniform;
  for (int m = 1; m <= m_max; ++m) {
    r.series.push_back({m, block_norm(it[static_cast<std::size_t>(m)])});
    if (m + 1 < static_cast<int>(it.size()))
      r.difference.push_back(
          {m, block_norm(subtract(it[static_cast<std::size_t>(m)], it[static_cast<std::size_t>(m + 1)]))});
  }
  const auto& last = it[static_cast<std::size_t>(m_max)];
  if (last.valid_degree() >= 1) {
    auto sym = extract_symbol(last);
    r.residual = sym.residual;
    r.asymptotic_symbol = std::move(sym.symbol);
  }
  classify(r);
  return r;
}

/// Sup-norm estimate of <phi(z), z>, the base of the geometric norm bound for
/// iterates of a composition operator with linear symbol.
template <Scalar S>
double pairing_sup_norm(const PolySelfMap<S>& phi, std::size_t samples, std::uint64_t seed) {
  return sup_norm_estimate(pairing_symbol(phi, PolySelfMap<S>::identity(phi.dimension())), samples, seed).value;
}

/// uat_sequence of C_phi for linear phi with the bound base^m * ||C_phi|| attached.
template <Scalar S>
ConvergenceReport uat_sequence(const TruncatedOperator<S>& a, int m_max, const PolySelfMap<S>& phi,
                               std::size_t samples, std::uint64_t seed) {
  if (!phi.is_linear()) throw InputError("uat_sequence: analytic bound needs a linear map");
  ConvergenceReport r = uat_sequence(a, m_max);
  const double base = pairing_sup_norm(phi, samples, seed);
  const double c0 = block_norm(a);
  Series bound;
  for (const auto& p : r.series) bound.push_back({p.m, std::pow(base, p.m) * c0});
  r.analytic_bound = std::move(bound);
  r.bound_base = base;
  classify(r);
  return r;
}

template <Scalar S>
struct ProbeVector {
  std::string label;
  CoeffVector<S> x;
};

/// Monomials of degree <= 2 plus kernel vectors at 0.3 e_1 and 0.5 e_2
/// (0.3 and 0.5 on the disc).
template <Scalar S>
std::vector<ProbeVector<S>> default_test_vectors(const BasisTable& basis) {
  std::vector<ProbeVector<S>> out;
  for (std::size_t i = 0; i < basis.block_size(2); ++i)
    out.push_back({"z^" + basis[i].to_string(), monomial_vector<S>(basis[i], basis)});
  const int n = basis.dimension();
  auto point = [&](int j, int num, int den) {
    std::vector<S> a(static_cast<std::size_t>(n));
    a[static_cast<std::size_t>(j)] = from_rational<S>(Rational(num, den));
    return a;
  };
  out.push_back({"K(0.3e1)", kernel_vector(point(0, 3, 10), basis)});
  out.push_back({n >= 2 ? "K(0.5e2)" : "K(0.5e1)", kernel_vector(point(n >= 2 ? 1 : 0, 1, 2), basis)});
  return out;
}

namespace detail {

template <Scalar S>
double relative_norm(const CoeffVector<S>& y, const CoeffVector<S>& x, const BasisTable& basis) {
  return vector_norm(y, basis) / vector_norm(x, basis);
}

// Shared driver: ops[m] is the operator probed at step m (index 0 unused).
template <Scalar S>
ConvergenceReport vector_probe(const std::vector<TruncatedOperator<S>>& ops, const std::vector<ProbeVector<S>>& xs,
                               int m_max, int block, ProbeMode mode) {
  if (xs.empty()) throw InputError("probe: need at least one test vector");
  const BasisTable& basis = ops.front().basis();
  ConvergenceReport r;
  r.mode = mode;
  r.series.assign(static_cast<std::size_t>(m_max), {0, 0.0});
  r.difference.assign(static_cast<std::size_t>(std::max(m_max - 1, 0)), {0, 0.0});
  for (int m = 1; m <= m_max; ++m) r.series[static_cast<std::size_t>(m - 1)].m = m;
  for (int m = 1; m < m_max; ++m) r.difference[static_cast<std::size_t>(m - 1)].m = m;
  bool any = false;
  for (const auto& pv : xs) {
    const auto x = restrict_to_block(pv.x, basis, block);
    if (vector_norm(x, basis) == 0.0) continue;
    any = true;
    NamedSeries ns{pv.label, {}};
    std::vector<CoeffVector<S>> ys;
    for (int m = 1; m <= m_max; ++m) {
      ys.push_back(apply_on_block(ops[static_cast<std::size_t>(m)], x, block));
      const double val = relative_norm(ys.back(), x, basis);
      ns.values.push_back({m, val});
      auto& s = r.series[static_cast<std::size_t>(m - 1)];
      s.value = std::max(s.value, val);
    }
    for (int m = 1; m < m_max; ++m) {
      CoeffVector<S> d = ys[static_cast<std::size_t>(m - 1)];
      for (std::size_t i = 0; i < d.size(); ++i) d[i] -= ys[static_cast<std::size_t>(m)][i];
      auto& s = r.difference[static_cast<std::size_t>(m - 1)];
      s.value = std::max(s.value, relative_norm(d, x, basis));
    }
    r.probes.push_back(std::move(ns));
  }
  if (!any) throw InputError("probe: every test vector vanishes on the common certified block");
  return r;
}

template <Scalar S>
void require_probe_range(const TruncatedOperator<S>& a, int m_max) {
  if (m_max < 1) throw InputError("probe: m_max must be >= 1");
  if (m_max > a.valid_degree())
    throw TrustExhausted("probe: m_max exceeds the certified block", std::max(a.valid_degree(), 0));
}

}  // namespace detail

/// Strong-topology probe: ||Phi^m(A) x|| / ||x|| per test vector, all on the
/// common block of degree v - m_max, plus consecutive differences.
template <Scalar S>
ConvergenceReport sat_probe(const TruncatedOperator<S>& a, const std::vector<ProbeVector<S>>& xs, int m_max) {
  detail::require_probe_range(a, m_max);
  const auto it = phi_iterate(a, m_max);
  ConvergenceReport r = detail::vector_probe(it, xs, m_max, a.valid_degree() - m_max, ProbeMode::strong);
  classify(r);
  return r;
}

/// As sat_probe with the Cesaro means (1/m) sum_{j=1}^m Phi^j(A).
template <Scalar S>
ConvergenceReport cesaro_probe(const TruncatedOperator<S>& a, const std::vector<ProbeVector<S>>& xs, int m_max) {
  detail::require_probe_range(a, m_max);
  const auto it = phi_iterate(a, m_max);
  std::vector<TruncatedOperator<S>> means{a};
  for (int m = 1; m <= m_max; ++m) means.push_back(cesaro_from_iterates(it, m));
  ConvergenceReport r = detail::vector_probe(means, xs, m_max, a.valid_degree() - m_max, ProbeMode::cesaro);
  classify(r);
  return r;
}

/// Entrywise proxy for weak convergence: largest orthonormal entry of Phi^m(A)
/// and of Phi^m(A) - Phi^(m+1)(A) on the common block of degree v - m_max.
template <Scalar S>
ConvergenceReport weak_probe(const TruncatedOperator<S>& a, int m_max) {
  detail::require_probe_range(a, m_max);
  const auto it = phi_iterate(a, m_max);
  const int block = a.valid_degree() - m_max;
  ConvergenceReport r;
  r.mode = ProbeMode::weak_proxy;
  for (int m = 1; m <= m_max; ++m) {
    const auto& op = it[static_cast<std::size_t>(m)];
    r.series.push_back({m, orthonormal_block(op, block).cwiseAbs().maxCoeff()});
    if (m < m_max) r.difference.push_back({m, max_diff_on_block(op, it[static_cast<std::size_t>(m + 1)], block)});
  }
  classify(r);
  return r;
}

// ---------------------------------------------------------------------------
// Lower-bound certificate

namespace detail {

template <Scalar S>
Polynomial<S> affine_pairing_power(const std::vector<S>& point, int s) {
  // (1 + <z, point>)^s
  const int n = static_cast<int>(point.size());
  Polynomial<S> base = Polynomial<S>::constant(n, S(1));
  for (int j = 0; j < n; ++j) base.add_term(MultiIndex::unit(n, j), conj(point[static_cast<std::size_t>(j)]));
  return base.pow(s);
}

template <Scalar S>
S poly_norm_sq(const Polynomial<S>& p) {
  S acc{};
  for (const auto& [alpha, c] : p.terms()) acc += c * conj(c) * from_rational<S>(monomial_norm_sq(alpha, p.dimension()));
  return acc;
}

// Integral of f |h|^2 over the sphere.
template <Scalar S>
S integrate_against_square(const SphereSymbol<S>& f, const Polynomial<S>& h) {
  const int n = f.dimension();
  S acc{};
  for (const auto& [key, c] : f.terms())
    for (const auto& [a, ha] : h.terms()) {
      const MultiIndex top = key.first + a;
      const auto b = top.minus(key.second);
      if (!b) continue;
      const S hb = h.coefficient(*b);
      if (is_zero(hb)) continue;
      acc += c * ha * conj(hb) * from_rational<S>(monomial_norm_sq(top, n));
    }
  return acc;
}

template <Scalar S>
bool polynomials_match(const Polynomial<S>& p, const Polynomial<S>& q) {
  if constexpr (is_exact_v<S>) {
    return p == q;
  } else {
    auto d = p - q;
    for (const auto& [alpha, c] : d.terms())
      if (std::abs(c) > 1e-10) return false;
    return true;
  }
}

}  // namespace detail

/// q_s = |<T_f C_phi g_s, h_s>| / (||g_s|| ||h_s||) for s = 1..s_max, with
/// g_s = (1 + <z, eta>)^s and h_s = C_phi g_s. Requires <phi(z), eta> = <z, zeta>.
/// Computed from closed-form sphere integrals, independent of any truncation.
template <Scalar S>
std::vector<double> lower_bound_probe(const SphereSymbol<S>& f, const PolySelfMap<S>& phi, const std::vector<S>& zeta,
                                      const std::vector<S>& eta, int s_max) {
  const int n = phi.dimension();
  if (f.dimension() != n || static_cast<int>(zeta.size()) != n || static_cast<int>(eta.size()) != n)
    throw InputError("lower_bound_probe: dimension mismatch");
  if (s_max < 1) throw InputError("lower_bound_probe: s_max must be >= 1");
  Polynomial<S> lhs(n), rhs(n);
  for (int j = 0; j < n; ++j) {
    lhs += phi.component(j).scaled(conj(eta[static_cast<std::size_t>(j)]));
    rhs.add_term(MultiIndex::unit(n, j), conj(zeta[static_cast<std::size_t>(j)]));
  }
  if (!detail::polynomials_match(lhs, rhs))
    throw InputError("lower_bound_probe: <phi(z), eta> differs from <z, zeta>");
  std::vector<double> q;
  for (int s = 1; s <= s_max; ++s) {
    const auto g = detail::affine_pairing_power(eta, s);
    const auto h = compose(g, phi);
    const double num = std::abs(to_complex(detail::integrate_against_square(f, h)));
    const double den = std::sqrt(std::real(to_complex(detail::poly_norm_sq(g))) *
                                 std::real(to_complex(detail::poly_norm_sq(h))));
    q.push_back(num / den);
  }
  return q;
}

// ---------------------------------------------------------------------------
// Linear maps

struct EigenCertificate {
  Complex lambda;
  std::vector<Complex> zeta;  // unit eigenvector of A with |lambda| ~ 1
  double residual = 0.0;      // |A* zeta - conj(lambda) zeta|
  bool verified = false;      // residual <= 1e-8
};

struct LinearVerdict {
  bool uat = false;
  double spectral_radius = 0.0;
  double norm = 0.0;
  std::optional<EigenCertificate> certificate;
};

/// For C_phi with phi(z) = A z: UAT iff the spectral radius of A is < 1.
inline LinearVerdict linear_uat_classifier(const Eigen::MatrixXcd& a) {
  if (a.rows() != a.cols() || a.rows() < 1) throw InputError("linear_uat_classifier: need a square matrix");
  const auto n = a.rows();
  LinearVerdict v;
  v.norm = Eigen::JacobiSVD<Eigen::MatrixXcd>(a).singularValues()(0);
  if (v.norm > 1.0 + 1e-10) throw InputError("linear_uat_classifier: ||A|| > 1, not a self-map of the ball");
  if ((a - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() == 0.0)
    throw InputError("linear_uat_classifier: the identity map is excluded");
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(a);
  Eigen::Index top = 0;
  v.spectral_radius = es.eigenvalues().cwiseAbs().maxCoeff(&top);
  v.uat = v.spectral_radius < 1.0 - 1e-8;
  if (!v.uat) {
    EigenCertificate c;
    c.lambda = es.eigenvalues()(top);
    Eigen::VectorXcd z = es.eigenvectors().col(top).normalized();
    // Fix the phase so the largest component is real and positive.
    Eigen::Index big = 0;
    z.cwiseAbs().maxCoeff(&big);
    z *= std::abs(z(big)) / z(big);
    c.residual = (a.adjoint() * z - std::conj(c.lambda) * z).norm();
    c.verified = c.residual <= 1e-8;
    c.zeta.assign(z.data(), z.data() + z.size());
    v.certificate = std::move(c);
  }
  return v;
}

template <Scalar S>
Eigen::MatrixXcd to_eigen(const std::vector<std::vector<S>>& a) {
  const auto n = static_cast<Eigen::Index>(a.size());
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      m(i, j) = to_complex(a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
  return m;
}

}  // namespace hardy
