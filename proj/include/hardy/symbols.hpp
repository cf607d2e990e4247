#pragma once

#include <algorithm>
#include <climits>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "hardy/basis.hpp"
#include "hardy/errors.hpp"
#include "hardy/sampling.hpp"
#include "hardy/scalar.hpp"

namespace hardy {

/// Holomorphic polynomial sum_alpha c_alpha z^alpha in n variables.
template <Scalar S>
class Polynomial {
 public:
  using Terms = std::map<MultiIndex, S>;

  Polynomial() = default;
  explicit Polynomial(int n) : n_(n) {
    if (n < 1) throw InputError("polynomial dimension must be >= 1");
  }
  Polynomial(int n, const Terms& terms) : Polynomial(n) {
    for (const auto& [alpha, c] : terms) add_term(alpha, c);
  }

  static Polynomial constant(int n, const S& c) { return monomial(MultiIndex::zero(n), c); }
  static Polynomial monomial(const MultiIndex& alpha, const S& c = S(1)) {
    Polynomial p(alpha.dimension());
    p.add_term(alpha, c);
    return p;
  }
  static Polynomial coordinate(int n, int j) { return monomial(MultiIndex::unit(n, j)); }

  int dimension() const noexcept { return n_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  /// Total degree; 0 for the zero polynomial.
  int degree() const {
    int d = 0;
    for (const auto& [alpha, c] : terms_) d = std::max(d, alpha.degree());
    return d;
  }
  int min_degree() const {
    int d = INT_MAX;
    for (const auto& [alpha, c] : terms_) d = std::min(d, alpha.degree());
    return terms_.empty() ? 0 : d;
  }

  S coefficient(const MultiIndex& alpha) const {
    auto it = terms_.find(alpha);
    return it == terms_.end() ? S{} : it->second;
  }

  void add_term(const MultiIndex& alpha, const S& c) {
    if (alpha.dimension() != n_) throw InputError("polynomial term dimension mismatch");
    if (is_zero_scalar(c)) return;
    auto [it, inserted] = terms_.try_emplace(alpha, c);
    if (!inserted) {
      it->second += c;
      if (is_zero_scalar(it->second)) terms_.erase(it);
    }
  }

  Polynomial& operator+=(const Polynomial& o) {
    require_same_dim(o);
    for (const auto& [alpha, c] : o.terms_) add_term(alpha, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    require_same_dim(o);
    for (const auto& [alpha, c] : o.terms_) add_term(alpha, -c);
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

  Polynomial scaled(const S& s) const {
    Polynomial out(n_);
    for (const auto& [alpha, c] : terms_) out.add_term(alpha, c * s);
    return out;
  }

  /// Product with every term of degree > cap discarded.
  Polynomial times(const Polynomial& o, int cap = INT_MAX) const {
    require_same_dim(o);
    Polynomial out(n_);
    for (const auto& [a, ca] : terms_) {
      const int da = a.degree();
      for (const auto& [b, cb] : o.terms_) {
        if (da + b.degree() > cap) continue;
        out.add_term(a + b, ca * cb);
      }
    }
    return out;
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) { return a.times(b); }

  Polynomial pow(int k, int cap = INT_MAX) const {
    if (k < 0) throw InputError("polynomial power must be non-negative");
    Polynomial result = constant(n_, S(1));
    Polynomial base = *this;
    while (k > 0) {
      if (k & 1) result = result.times(base, cap);
      k >>= 1;
      if (k) base = base.times(base, cap);
    }
    return result;
  }

  Complex eval(const std::vector<Complex>& z) const {
    if (static_cast<int>(z.size()) != n_) throw InputError("polynomial evaluation: dimension mismatch");
    Complex sum{};
    for (const auto& [alpha, c] : terms_) {
      Complex term = to_complex(c);
      for (int j = 0; j < n_; ++j)
        for (int e = 0; e < alpha[j]; ++e) term *= z[static_cast<std::size_t>(j)];
      sum += term;
    }
    return sum;
  }

  template <Scalar T>
  Polynomial<T> cast() const {
    Polynomial<T> out(n_);
    for (const auto& [alpha, c] : terms_) out.add_term(alpha, scalar_cast<T>(c));
    return out;
  }

  bool operator==(const Polynomial& o) const { return n_ == o.n_ && terms_ == o.terms_; }

 private:
  static bool is_zero_scalar(const S& c) { return hardy::is_zero(c); }
  void require_same_dim(const Polynomial& o) const {
    if (o.n_ != n_) throw InputError("polynomial dimension mismatch");
  }

  int n_ = 0;
  Terms terms_;
};

/// Polynomial map phi = (phi_1, ..., phi_n) from C^n to C^n.
template <Scalar S>
class PolySelfMap {
 public:
  PolySelfMap() = default;
  PolySelfMap(int n, std::vector<Polynomial<S>> components) : n_(n), comps_(std::move(components)) {
    if (n < 1) throw InputError("self-map dimension must be >= 1");
    if (static_cast<int>(comps_.size()) != n) throw InputError("self-map needs exactly n components");
    for (const auto& c : comps_)
      if (c.dimension() != n) throw InputError("self-map component has wrong dimension");
  }

  static PolySelfMap identity(int n) {
    std::vector<Polynomial<S>> comps;
    for (int j = 0; j < n; ++j) comps.push_back(Polynomial<S>::coordinate(n, j));
    return PolySelfMap(n, std::move(comps));
  }

  /// z -> A z + b with A given row-major (A[i][j] multiplies z_j in component i).
  static PolySelfMap affine(const std::vector<std::vector<S>>& a, const std::vector<S>& b = {}) {
    const int n = static_cast<int>(a.size());
    if (n < 1) throw InputError("affine map needs a non-empty matrix");
    if (!b.empty() && static_cast<int>(b.size()) != n) throw InputError("affine offset has wrong length");
    std::vector<Polynomial<S>> comps;
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(a[static_cast<std::size_t>(i)].size()) != n)
        throw InputError("affine map needs a square matrix");
      Polynomial<S> p(n);
      for (int j = 0; j < n; ++j) p.add_term(MultiIndex::unit(n, j), a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
      if (!b.empty()) p.add_term(MultiIndex::zero(n), b[static_cast<std::size_t>(i)]);
      comps.push_back(std::move(p));
    }
    return PolySelfMap(n, std::move(comps));
  }
  static PolySelfMap linear(const std::vector<std::vector<S>>& a) { return affine(a); }

  int dimension() const noexcept { return n_; }
  const Polynomial<S>& component(int j) const { return comps_.at(static_cast<std::size_t>(j)); }
  const std::vector<Polynomial<S>>& components() const noexcept { return comps_; }

  int degree() const {
    int d = 0;
    for (const auto& c : comps_) d = std::max(d, c.degree());
    return d;
  }

  bool fixes_origin() const {
    const auto zero = MultiIndex::zero(n_);
    return std::all_of(comps_.begin(), comps_.end(),
                       [&](const auto& c) { return hardy::is_zero(c.coefficient(zero)); });
  }

  /// Every component is homogeneous of degree 1 (phi(z) = A z).
  bool is_linear() const {
    for (const auto& c : comps_)
      for (const auto& [alpha, coef] : c.terms())
        if (alpha.degree() != 1) return false;
    return true;
  }

  /// Matrix of the linear part: entry (i, j) = coefficient of z_j in phi_i.
  std::vector<std::vector<S>> linear_matrix() const {
    std::vector<std::vector<S>> a(static_cast<std::size_t>(n_), std::vector<S>(static_cast<std::size_t>(n_)));
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            comps_[static_cast<std::size_t>(i)].coefficient(MultiIndex::unit(n_, j));
    return a;
  }

  std::vector<Complex> eval(const std::vector<Complex>& z) const {
    std::vector<Complex> out;
    out.reserve(comps_.size());
    for (const auto& c : comps_) out.push_back(c.eval(z));
    return out;
  }

  template <Scalar T>
  PolySelfMap<T> cast() const {
    std::vector<Polynomial<T>> comps;
    for (const auto& c : comps_) comps.push_back(c.template cast<T>());
    return PolySelfMap<T>(n_, std::move(comps));
  }

  bool operator==(const PolySelfMap& o) const { return n_ == o.n_ && comps_ == o.comps_; }

 private:
  int n_ = 0;
  std::vector<Polynomial<S>> comps_;
};

/// p o phi, discarding terms of degree > cap.
template <Scalar S>
Polynomial<S> compose(const Polynomial<S>& p, const PolySelfMap<S>& phi, int cap = INT_MAX) {
  if (p.dimension() != phi.dimension()) throw InputError("compose: dimension mismatch");
  const int n = phi.dimension();
  std::map<std::pair<int, int>, Polynomial<S>> powers;  // (j, e) -> phi_j^e
  auto power = [&](int j, int e) -> const Polynomial<S>& {
    auto key = std::make_pair(j, e);
    auto it = powers.find(key);
    if (it == powers.end()) it = powers.emplace(key, phi.component(j).pow(e, cap)).first;
    return it->second;
  };
  Polynomial<S> out(n);
  for (const auto& [alpha, c] : p.terms()) {
    Polynomial<S> term = Polynomial<S>::constant(n, c);
    for (int j = 0; j < n && !term.is_zero(); ++j)
      if (alpha[j] > 0) term = term.times(power(j, alpha[j]), cap);
    out += term;
  }
  return out;
}

/// Finite sum f = sum c_{mu,nu} z^mu conj(z)^nu, viewed as a function on the
/// unit sphere. Kept as a formal coefficient map: no reduction by
/// sum_j |z_j|^2 = 1 is applied unless reduce_on_sphere is called.
template <Scalar S>
class SphereSymbol {
 public:
  using Key = std::pair<MultiIndex, MultiIndex>;
  using Terms = std::map<Key, S>;

  SphereSymbol() = default;
  explicit SphereSymbol(int n) : n_(n) {
    if (n < 1) throw InputError("symbol dimension must be >= 1");
  }
  SphereSymbol(int n, const Terms& terms) : SphereSymbol(n) {
    for (const auto& [key, c] : terms) add_term(key.first, key.second, c);
  }

  static SphereSymbol constant(int n, const S& c) {
    return term(MultiIndex::zero(n), MultiIndex::zero(n), c);
  }
  static SphereSymbol term(const MultiIndex& mu, const MultiIndex& nu, const S& c = S(1)) {
    SphereSymbol f(mu.dimension());
    f.add_term(mu, nu, c);
    return f;
  }
  static SphereSymbol holomorphic(const Polynomial<S>& p) {
    SphereSymbol f(p.dimension());
    const auto zero = MultiIndex::zero(p.dimension());
    for (const auto& [alpha, c] : p.terms()) f.add_term(alpha, zero, c);
    return f;
  }
  /// conj(p) as a symbol.
  static SphereSymbol antiholomorphic(const Polynomial<S>& p) {
    SphereSymbol f(p.dimension());
    const auto zero = MultiIndex::zero(p.dimension());
    for (const auto& [alpha, c] : p.terms()) f.add_term(zero, alpha, conj(c));
    return f;
  }

  int dimension() const noexcept { return n_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  int holomorphic_degree() const {
    int d = 0;
    for (const auto& [key, c] : terms_) d = std::max(d, key.first.degree());
    return d;
  }
  int antiholomorphic_degree() const {
    int d = 0;
    for (const auto& [key, c] : terms_) d = std::max(d, key.second.degree());
    return d;
  }

  S coefficient(const MultiIndex& mu, const MultiIndex& nu) const {
    auto it = terms_.find(Key{mu, nu});
    return it == terms_.end() ? S{} : it->second;
  }

  void add_term(const MultiIndex& mu, const MultiIndex& nu, const S& c) {
    if (mu.dimension() != n_ || nu.dimension() != n_) throw InputError("symbol term dimension mismatch");
    if (hardy::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(Key{mu, nu}, c);
    if (!inserted) {
      it->second += c;
      if (hardy::is_zero(it->second)) terms_.erase(it);
    }
  }

  SphereSymbol& operator+=(const SphereSymbol& o) {
    require_same_dim(o);
    for (const auto& [key, c] : o.terms_) add_term(key.first, key.second, c);
    return *this;
  }
  SphereSymbol& operator-=(const SphereSymbol& o) {
    require_same_dim(o);
    for (const auto& [key, c] : o.terms_) add_term(key.first, key.second, -c);
    return *this;
  }
  friend SphereSymbol operator+(SphereSymbol a, const SphereSymbol& b) { return a += b; }
  friend SphereSymbol operator-(SphereSymbol a, const SphereSymbol& b) { return a -= b; }

  SphereSymbol scaled(const S& s) const {
    SphereSymbol out(n_);
    for (const auto& [key, c] : terms_) out.add_term(key.first, key.second, c * s);
    return out;
  }

  template <Scalar T>
  SphereSymbol<T> cast() const {
    SphereSymbol<T> out(n_);
    for (const auto& [key, c] : terms_) out.add_term(key.first, key.second, scalar_cast<T>(c));
    return out;
  }

  bool operator==(const SphereSymbol& o) const { return n_ == o.n_ && terms_ == o.terms_; }

 private:
  void require_same_dim(const SphereSymbol& o) const {
    if (o.n_ != n_) throw InputError("symbol dimension mismatch");
  }

  int n_ = 0;
  Terms terms_;
};

template <Scalar S>
SphereSymbol<S> symbol_product(const SphereSymbol<S>& f, const SphereSymbol<S>& g) {
  if (f.dimension() != g.dimension()) throw InputError("symbol_product: dimension mismatch");
  SphereSymbol<S> out(f.dimension());
  for (const auto& [kf, cf] : f.terms())
    for (const auto& [kg, cg] : g.terms()) out.add_term(kf.first + kg.first, kf.second + kg.second, cf * cg);
  return out;
}

template <Scalar S>
SphereSymbol<S> symbol_conj(const SphereSymbol<S>& f) {
  SphereSymbol<S> out(f.dimension());
  for (const auto& [key, c] : f.terms()) out.add_term(key.second, key.first, conj(c));
  return out;
}

template <Scalar S>
SphereSymbol<S> symbol_power(const SphereSymbol<S>& f, int m) {
  if (m < 0) throw InputError("symbol_power: exponent must be non-negative");
  SphereSymbol<S> result = SphereSymbol<S>::constant(f.dimension(), S(1));
  SphereSymbol<S> base = f;
  while (m > 0) {
    if (m & 1) result = symbol_product(result, base);
    m >>= 1;
    if (m) base = symbol_product(base, base);
  }
  return result;
}

/// <phi, eta> = sum_j phi_j conj(eta_j).
template <Scalar S>
SphereSymbol<S> pairing_symbol(const PolySelfMap<S>& phi, const PolySelfMap<S>& eta) {
  if (phi.dimension() != eta.dimension()) throw InputError("pairing_symbol: dimension mismatch");
  SphereSymbol<S> out(phi.dimension());
  for (int j = 0; j < phi.dimension(); ++j)
    out += symbol_product(SphereSymbol<S>::holomorphic(phi.component(j)),
                          SphereSymbol<S>::antiholomorphic(eta.component(j)));
  return out;
}

/// Integral of f over the sphere against the normalized surface measure.
template <Scalar S>
S integrate_symbol(const SphereSymbol<S>& f) {
  S total{};
  for (const auto& [key, c] : f.terms())
    if (key.first == key.second) total += c * from_rational<S>(monomial_norm_sq(key.first, f.dimension()));
  return total;
}

/// Rewrites f into the standard form for functions on the sphere: no term is
/// divisible by z_n conj(z_n) (replaced by 1 - sum_{j<n} z_j conj(z_j)).
/// Two symbols agree on the sphere iff their reductions are equal.
template <Scalar S>
SphereSymbol<S> reduce_on_sphere(const SphereSymbol<S>& f) {
  const int n = f.dimension();
  const int last = n - 1;
  SphereSymbol<S> done(n);
  std::vector<std::tuple<MultiIndex, MultiIndex, S>> work;
  for (const auto& [key, c] : f.terms()) work.emplace_back(key.first, key.second, c);
  while (!work.empty()) {
    auto [mu, nu, c] = std::move(work.back());
    work.pop_back();
    if (mu[last] == 0 || nu[last] == 0) {
      done.add_term(mu, nu, c);
      continue;
    }
    const auto e = MultiIndex::unit(n, last);
    MultiIndex mu1 = *mu.minus(e);
    MultiIndex nu1 = *nu.minus(e);
    for (int j = 0; j < last; ++j) work.emplace_back(mu1.plus_unit(j), nu1.plus_unit(j), -c);
    work.emplace_back(std::move(mu1), std::move(nu1), std::move(c));
  }
  return done;
}

namespace detail {

// Flattened symbol for fast repeated evaluation at sample points.
class CompiledSymbol {
 public:
  template <Scalar S>
  explicit CompiledSymbol(const SphereSymbol<S>& f) : n_(f.dimension()) {
    for (const auto& [key, c] : f.terms()) {
      coef_.push_back(to_complex(c));
      mu_.push_back(key.first.exponents());
      nu_.push_back(key.second.exponents());
      for (int j = 0; j < n_; ++j) max_exp_ = std::max({max_exp_, key.first[j], key.second[j]});
    }
  }

  Complex operator()(const std::vector<Complex>& z) const {
    const auto stride = static_cast<std::size_t>(max_exp_ + 1);
    pw_.assign(static_cast<std::size_t>(n_) * stride, Complex(1.0));
    pwc_.assign(pw_.size(), Complex(1.0));
    for (int j = 0; j < n_; ++j) {
      const auto base = static_cast<std::size_t>(j) * stride;
      for (std::size_t e = 1; e < stride; ++e) {
        pw_[base + e] = pw_[base + e - 1] * z[static_cast<std::size_t>(j)];
        pwc_[base + e] = std::conj(pw_[base + e]);
      }
    }
    Complex sum{};
    for (std::size_t t = 0; t < coef_.size(); ++t) {
      Complex term = coef_[t];
      for (int j = 0; j < n_; ++j) {
        const auto base = static_cast<std::size_t>(j) * stride;
        term *= pw_[base + static_cast<std::size_t>(mu_[t][static_cast<std::size_t>(j)])] *
                pwc_[base + static_cast<std::size_t>(nu_[t][static_cast<std::size_t>(j)])];
      }
      sum += term;
    }
    return sum;
  }

 private:
  int n_;
  int max_exp_ = 0;
  std::vector<Complex> coef_;
  std::vector<std::vector<int>> mu_, nu_;
  mutable std::vector<Complex> pw_, pwc_;
};

inline void require_on_sphere(const std::vector<Complex>& zeta) {
  if (std::abs(euclidean_norm(zeta) - 1.0) > 1e-12) throw InputError("point is not on the unit sphere");
}

}  // namespace detail

/// f(zeta) for zeta on the unit sphere (|zeta| = 1 within 1e-12).
template <Scalar S>
Complex eval_symbol(const SphereSymbol<S>& f, const std::vector<Complex>& zeta) {
  if (static_cast<int>(zeta.size()) != f.dimension()) throw InputError("eval_symbol: dimension mismatch");
  detail::require_on_sphere(zeta);
  return detail::CompiledSymbol(f)(zeta);
}

struct SupNormEstimate {
  double value = 0.0;        // max |f| over the samples; a lower bound for the sup norm
  std::size_t samples = 0;
};

template <Scalar S>
SupNormEstimate sup_norm_estimate(const SphereSymbol<S>& f, std::size_t samples, std::uint64_t seed) {
  if (samples < 1) throw InputError("sup_norm_estimate: need at least one sample");
  const detail::CompiledSymbol eval(f);
  double best = 0.0;
  for_each_sphere_sample(f.dimension(), samples, seed,
                         [&](const SpherePoint& z) { best = std::max(best, std::abs(eval(z))); });
  return {best, samples};
}

/// Fraction of sphere samples with |<phi(zeta), eta(zeta)>| >= 1 - eps.
template <Scalar S>
double exceptional_set_fraction(const PolySelfMap<S>& phi, const PolySelfMap<S>& eta, double eps,
                                std::size_t samples, std::uint64_t seed) {
  if (!(eps > 0.0 && eps < 1.0)) throw InputError("exceptional_set_fraction: eps must lie in (0,1)");
  if (samples < 1) throw InputError("exceptional_set_fraction: need at least one sample");
  const detail::CompiledSymbol pairing(pairing_symbol(phi, eta));
  std::size_t hits = 0;
  for_each_sphere_sample(phi.dimension(), samples, seed, [&](const SpherePoint& z) {
    if (std::abs(pairing(z)) >= 1.0 - eps) ++hits;
  });
  return static_cast<double>(hits) / static_cast<double>(samples);
}

/// Random symbol with small rational coefficients, holomorphic degree <= hol
/// and antiholomorphic degree <= anti. Deterministic in `rng`'s state.
inline SphereSymbol<ComplexRational> random_rational_symbol(int n, int hol, int anti, int terms,
                                                            std::mt19937_64& rng) {
  const BasisTable mus = enumerate_basis(n, hol);
  const BasisTable nus = enumerate_basis(n, anti);
  std::uniform_int_distribution<std::size_t> pick_mu(0, mus.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_nu(0, nus.size() - 1);
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 7);
  SphereSymbol<ComplexRational> f(n);
  for (int t = 0; t < terms; ++t) {
    const auto& mu = mus[pick_mu(rng)];
    const auto& nu = nus[pick_nu(rng)];
    const int a = num(rng), b = den(rng), c = num(rng), d = den(rng);
    Rational re(a, b), im(c, d);
    re.canonicalize();
    im.canonicalize();
    f.add_term(mu, nu, ComplexRational(re, im));
  }
  return f;
}

}  // namespace hardy
