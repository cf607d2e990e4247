#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "hardy/basis.hpp"
#include "hardy/errors.hpp"
#include "hardy/scalar.hpp"
#include "hardy/symbols.hpp"

namespace hardy {

/// Degree bound deg(A p) <= slope * deg(p) + offset for every polynomial p.
struct Growth {
  Rational slope{1};
  int offset = 0;

  /// Largest output degree for inputs of degree <= d.
  long bound(int d) const {
    mpz_class v = slope.get_num() * d;
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), v.get_mpz_t(), slope.get_den_mpz_t());
    return q.get_si() + offset;
  }
  bool operator==(const Growth& o) const { return slope == o.slope && offset == o.offset; }
};

/// nullopt: no degree bound is known.
using GrowthBound = std::optional<Growth>;

namespace detail {

inline int ceil_rational(const Rational& q) {
  mpz_class c;
  mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return static_cast<int>(c.get_si());
}

// Growth of A o B (B first).
inline GrowthBound compose_growth(const GrowthBound& a, const GrowthBound& b) {
  if (!a || !b) return std::nullopt;
  Rational slope = a->slope * b->slope;
  slope.canonicalize();
  return Growth{slope, ceil_rational(Rational(a->slope * b->offset)) + a->offset};
}

inline GrowthBound max_growth(const GrowthBound& a, const GrowthBound& b) {
  if (!a || !b) return std::nullopt;
  return Growth{std::max(a->slope, b->slope), std::max(a->offset, b->offset)};
}

inline bool growth_fits(const GrowthBound& g, int d, int limit) { return g && g->bound(d) <= limit; }

template <Scalar S>
std::vector<S> scalar_weights(const BasisTable& basis) {
  std::vector<S> w;
  w.reserve(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) w.push_back(from_rational<S>(basis.weight(i)));
  return w;
}

}  // namespace detail

/// Compression of an operator A on H^2 to the span of {z^alpha : |alpha| <= D},
/// stored as the raw Gram matrix R[gamma, beta] = <A z^beta, z^gamma>.
///
/// Entries with |beta|, |gamma| <= valid_degree() are certified equal to the
/// corresponding entries of A; the rest are stored but carry no guarantee.
/// `growth` bounds deg(A p) and `adjoint_growth` bounds deg(A* p).
template <Scalar S>
class TruncatedOperator {
 public:
  using scalar_type = S;

  TruncatedOperator() = default;
  TruncatedOperator(BasisTable basis, std::vector<S> raw, int valid_degree, GrowthBound growth,
                    GrowthBound adjoint_growth)
      : basis_(std::move(basis)),
        raw_(std::move(raw)),
        valid_(valid_degree),
        growth_(std::move(growth)),
        adjoint_growth_(std::move(adjoint_growth)) {
    if (raw_.size() != basis_.size() * basis_.size()) throw InputError("operator matrix does not match basis size");
    if (valid_ > basis_.max_degree() || valid_ < -1) throw InputError("valid degree out of range");
  }

  static TruncatedOperator zero(const BasisTable& basis) {
    return TruncatedOperator(basis, std::vector<S>(basis.size() * basis.size()), basis.max_degree(), Growth{1, 0},
                             Growth{1, 0});
  }

  static TruncatedOperator identity(const BasisTable& basis) {
    auto op = zero(basis);
    for (std::size_t i = 0; i < basis.size(); ++i) op.raw_[i * basis.size() + i] = from_rational<S>(basis.weight(i));
    return op;
  }

  const BasisTable& basis() const noexcept { return basis_; }
  std::size_t size() const noexcept { return basis_.size(); }
  int valid_degree() const noexcept { return valid_; }
  const GrowthBound& growth() const noexcept { return growth_; }
  const GrowthBound& adjoint_growth() const noexcept { return adjoint_growth_; }

  /// Raw entry <A z^(col), z^(row)>.
  const S& raw(std::size_t row, std::size_t col) const { return raw_[row * size() + col]; }
  const std::vector<S>& raw_data() const noexcept { return raw_; }

  /// Entry of the matrix in the orthonormal basis z^alpha / ||z^alpha||.
  Complex orthonormal(std::size_t row, std::size_t col) const {
    return to_complex(raw(row, col)) /
           std::sqrt(basis_.weight(row).get_d() * basis_.weight(col).get_d());
  }

  TruncatedOperator with_valid_degree(int v) const {
    TruncatedOperator out = *this;
    out.valid_ = std::min(v, valid_);
    return out;
  }

  template <Scalar T>
  TruncatedOperator<T> cast() const {
    std::vector<T> raw;
    raw.reserve(raw_.size());
    for (const auto& x : raw_) raw.push_back(scalar_cast<T>(x));
    return TruncatedOperator<T>(basis_, std::move(raw), valid_, growth_, adjoint_growth_);
  }

 private:
  BasisTable basis_;
  std::vector<S> raw_;
  int valid_ = -1;
  GrowthBound growth_;
  GrowthBound adjoint_growth_;
};

using ExactOperator = TruncatedOperator<ComplexRational>;
using FloatOperator = TruncatedOperator<Complex>;

namespace detail {

template <Scalar S>
void require_same_basis(const TruncatedOperator<S>& a, const TruncatedOperator<S>& b, const char* op) {
  if (!(a.basis() == b.basis())) throw InputError(std::string(op) + ": operators live on different bases");
}

}  // namespace detail

/// T_f with R[gamma, beta] = sum over (mu, nu) with mu + beta = nu + gamma of c_{mu,nu} w(mu + beta).
template <Scalar S>
TruncatedOperator<S> toeplitz_op(const SphereSymbol<S>& f, const BasisTable& basis) {
  if (f.dimension() != basis.dimension()) throw InputError("toeplitz_op: dimension mismatch");
  const int n = basis.dimension();
  const std::size_t size = basis.size();
  std::vector<S> raw(size * size);
  std::map<MultiIndex, S> weight_cache;
  auto weight = [&](const MultiIndex& a) -> const S& {
    auto it = weight_cache.find(a);
    if (it == weight_cache.end()) it = weight_cache.emplace(a, from_rational<S>(monomial_norm_sq(a, n))).first;
    return it->second;
  };
  for (std::size_t col = 0; col < size; ++col) {
    const MultiIndex& beta = basis[col];
    for (const auto& [key, c] : f.terms()) {
      const MultiIndex top = key.first + beta;
      auto gamma = top.minus(key.second);
      if (!gamma) continue;
      auto row = basis.index_of(*gamma);
      if (!row) continue;
      add_product(raw[*row * size + col], c, weight(top));
    }
  }
  return TruncatedOperator<S>(basis, std::move(raw), basis.max_degree(), Growth{1, f.holomorphic_degree()},
                              Growth{1, f.antiholomorphic_degree()});
}

/// C_phi with R[gamma, alpha] = coeff_gamma(phi^alpha) w(gamma). Every stored
/// entry is exact, so the whole matrix is certified.
template <Scalar S>
TruncatedOperator<S> composition_op(const PolySelfMap<S>& phi, const BasisTable& basis) {
  if (phi.dimension() != basis.dimension()) throw InputError("composition_op: dimension mismatch");
  const int n = basis.dimension();
  const int cap = basis.max_degree();
  const std::size_t size = basis.size();
  std::vector<Polynomial<S>> powers;  // powers[i] = phi^(basis[i]) truncated at degree D
  powers.reserve(size);
  powers.push_back(Polynomial<S>::constant(n, S(1)));
  for (std::size_t i = 1; i < size; ++i) {
    const MultiIndex& alpha = basis[i];
    int j = 0;
    while (alpha[j] == 0) ++j;
    const auto prev = basis.index_of(*alpha.minus(MultiIndex::unit(n, j)));
    powers.push_back(powers[*prev].times(phi.component(j), cap));
  }
  std::vector<S> raw(size * size);
  for (std::size_t col = 0; col < size; ++col)
    for (const auto& [gamma, c] : powers[col].terms()) {
      const auto row = basis.index_of(gamma);
      raw[*row * size + col] = c * from_rational<S>(basis.weight(*row));
    }
  const int k = std::max(phi.degree(), 1);
  GrowthBound adjoint_growth;
  if (phi.fixes_origin()) adjoint_growth = Growth{1, 0};
  return TruncatedOperator<S>(basis, std::move(raw), basis.max_degree(), Growth{k, 0}, adjoint_growth);
}

template <Scalar S>
TruncatedOperator<S> adjoint(const TruncatedOperator<S>& a) {
  const std::size_t size = a.size();
  std::vector<S> raw(size * size);
  for (std::size_t r = 0; r < size; ++r)
    for (std::size_t c = 0; c < size; ++c) raw[r * size + c] = conj(a.raw(c, r));
  return TruncatedOperator<S>(a.basis(), std::move(raw), a.valid_degree(), a.adjoint_growth(), a.growth());
}

/// Certified block of A o B: the largest d with d <= min(vA, vB) such that the
/// intermediate sum over |delta| <= min(vA, vB) is complete, i.e. deg(B z^beta)
/// or deg(A* z^gamma) stays within that block for |beta|, |gamma| <= d.
template <Scalar S>
int product_valid_degree(const TruncatedOperator<S>& a, const TruncatedOperator<S>& b) {
  const int w = std::min(a.valid_degree(), b.valid_degree());
  for (int d = w; d >= 0; --d)
    if (detail::growth_fits(b.growth(), d, w) || detail::growth_fits(a.adjoint_growth(), d, w)) return d;
  return -1;
}

/// A o B (B applied first): R_AB[gamma, beta] = sum_delta R_A[gamma, delta] R_B[delta, beta] / w(delta).
template <Scalar S>
TruncatedOperator<S> multiply(const TruncatedOperator<S>& a, const TruncatedOperator<S>& b) {
  detail::require_same_basis(a, b, "multiply");
  const BasisTable& basis = a.basis();
  const std::size_t size = basis.size();
  const int w = std::min(a.valid_degree(), b.valid_degree());
  const std::size_t inner = basis.block_size(w);
  // Coefficient matrix of B restricted to rows |delta| <= w, kept sparse per row.
  std::vector<std::vector<std::pair<std::size_t, S>>> coeff(inner);
  for (std::size_t d = 0; d < inner; ++d) {
    const S inv_w = from_rational<S>(Rational(1 / basis.weight(d)));
    for (std::size_t c = 0; c < size; ++c)
      if (!is_zero(b.raw(d, c))) coeff[d].emplace_back(c, b.raw(d, c) * inv_w);
  }
  std::vector<S> raw(size * size);
  for (std::size_t r = 0; r < size; ++r)
    for (std::size_t d = 0; d < inner; ++d) {
      const S& x = a.raw(r, d);
      if (is_zero(x)) continue;
      S* row = &raw[r * size];
      for (const auto& [c, y] : coeff[d]) add_product(row[c], x, y);
    }
  return TruncatedOperator<S>(basis, std::move(raw), product_valid_degree(a, b),
                              detail::compose_growth(a.growth(), b.growth()),
                              detail::compose_growth(b.adjoint_growth(), a.adjoint_growth()));
}

template <Scalar S>
TruncatedOperator<S> add(const TruncatedOperator<S>& a, const TruncatedOperator<S>& b) {
  detail::require_same_basis(a, b, "add");
  std::vector<S> raw = a.raw_data();
  for (std::size_t i = 0; i < raw.size(); ++i) raw[i] += b.raw_data()[i];
  return TruncatedOperator<S>(a.basis(), std::move(raw), std::min(a.valid_degree(), b.valid_degree()),
                              detail::max_growth(a.growth(), b.growth()),
                              detail::max_growth(a.adjoint_growth(), b.adjoint_growth()));
}

template <Scalar S>
TruncatedOperator<S> subtract(const TruncatedOperator<S>& a, const TruncatedOperator<S>& b) {
  return add(a, scale(S(-1), b));
}

template <Scalar S>
TruncatedOperator<S> scale(const S& c, const TruncatedOperator<S>& a) {
  std::vector<S> raw = a.raw_data();
  for (auto& x : raw) x *= c;
  return TruncatedOperator<S>(a.basis(), std::move(raw), a.valid_degree(), a.growth(), a.adjoint_growth());
}

/// Coefficient vector x indexed by the basis, representing sum_alpha x_alpha z^alpha.
template <Scalar S>
using CoeffVector = std::vector<S>;

namespace detail {

template <Scalar S>
void require_vector(const CoeffVector<S>& x, const BasisTable& basis, const char* op) {
  if (x.size() != basis.size()) throw InputError(std::string(op) + ": vector length does not match basis");
}

}  // namespace detail

/// u (x) v : h -> <h, v> u, with R[gamma, beta] = conj(v_beta) w(beta) u_gamma w(gamma).
template <Scalar S>
TruncatedOperator<S> rank_one(const CoeffVector<S>& u, const CoeffVector<S>& v, const BasisTable& basis) {
  detail::require_vector(u, basis, "rank_one");
  detail::require_vector(v, basis, "rank_one");
  const std::size_t size = basis.size();
  const auto w = detail::scalar_weights<S>(basis);
  std::vector<S> raw(size * size);
  for (std::size_t r = 0; r < size; ++r) {
    if (is_zero(u[r])) continue;
    const S left = u[r] * w[r];
    for (std::size_t c = 0; c < size; ++c)
      if (!is_zero(v[c])) raw[r * size + c] = left * (conj(v[c]) * w[c]);
  }
  const int d = basis.max_degree();
  return TruncatedOperator<S>(basis, std::move(raw), d, Growth{1, d}, Growth{1, d});
}

/// Coefficient vector of A x. Rows above the valid block are uncertified.
template <Scalar S>
CoeffVector<S> apply(const TruncatedOperator<S>& a, const CoeffVector<S>& x) {
  detail::require_vector(x, a.basis(), "apply");
  const std::size_t size = a.size();
  CoeffVector<S> y(size);
  for (std::size_t r = 0; r < size; ++r) {
    S acc{};
    for (std::size_t c = 0; c < size; ++c)
      if (!is_zero(x[c])) add_product(acc, a.raw(r, c), x[c]);
    y[r] = acc * from_rational<S>(Rational(1 / a.basis().weight(r)));
  }
  return y;
}

/// P_d A P_d x: input and output restricted to degrees <= d.
template <Scalar S>
CoeffVector<S> apply_on_block(const TruncatedOperator<S>& a, const CoeffVector<S>& x, int d) {
  detail::require_vector(x, a.basis(), "apply_on_block");
  const std::size_t k = a.basis().block_size(d);
  CoeffVector<S> y(a.size());
  for (std::size_t r = 0; r < k; ++r) {
    S acc{};
    for (std::size_t c = 0; c < k; ++c)
      if (!is_zero(x[c])) add_product(acc, a.raw(r, c), x[c]);
    y[r] = acc * from_rational<S>(Rational(1 / a.basis().weight(r)));
  }
  return y;
}

template <Scalar S>
CoeffVector<S> restrict_to_block(CoeffVector<S> x, const BasisTable& basis, int d) {
  for (std::size_t i = basis.block_size(d); i < x.size(); ++i) x[i] = S{};
  return x;
}

/// <x, y> = sum_alpha x_alpha conj(y_alpha) w(alpha).
template <Scalar S>
S inner(const CoeffVector<S>& x, const CoeffVector<S>& y, const BasisTable& basis) {
  detail::require_vector(x, basis, "inner");
  detail::require_vector(y, basis, "inner");
  S acc{};
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!is_zero(x[i]) && !is_zero(y[i])) acc += x[i] * conj(y[i]) * from_rational<S>(basis.weight(i));
  return acc;
}

/// ||x||^2 as a real number of the scalar field (exact for exact scalars).
template <Scalar S>
S norm_sq(const CoeffVector<S>& x, const BasisTable& basis) {
  return inner(x, x, basis);
}

template <Scalar S>
double vector_norm(const CoeffVector<S>& x, const BasisTable& basis) {
  return std::sqrt(std::max(std::real(to_complex(norm_sq(x, basis))), 0.0));
}

template <Scalar S>
CoeffVector<S> monomial_vector(const MultiIndex& alpha, const BasisTable& basis) {
  const auto i = basis.index_of(alpha);
  if (!i) throw InputError("monomial " + alpha.to_string() + " is outside the basis");
  CoeffVector<S> x(basis.size());
  x[*i] = S(1);
  return x;
}

template <Scalar S>
CoeffVector<S> polynomial_vector(const Polynomial<S>& p, const BasisTable& basis) {
  if (p.dimension() != basis.dimension()) throw InputError("polynomial_vector: dimension mismatch");
  CoeffVector<S> x(basis.size());
  for (const auto& [alpha, c] : p.terms()) {
    const auto i = basis.index_of(alpha);
    if (!i) throw InputError("polynomial term " + alpha.to_string() + " exceeds the truncation degree");
    x[*i] = c;
  }
  return x;
}

/// Degree-<=D truncation of the reproducing kernel K_a: coefficient of z^alpha is conj(a^alpha) / w(alpha).
template <Scalar S>
CoeffVector<S> kernel_vector(const std::vector<S>& a, const BasisTable& basis) {
  if (static_cast<int>(a.size()) != basis.dimension()) throw InputError("kernel_vector: dimension mismatch");
  if constexpr (is_exact_v<S>) {
    Rational r2 = 0;
    for (const auto& x : a) r2 += x.norm();
    if (r2 >= 1) throw InputError("kernel_vector: point must lie in the open unit ball");
  } else {
    double r2 = 0;
    for (const auto& x : a) r2 += std::norm(x);
    if (!(r2 < 1.0)) throw InputError("kernel_vector: point must lie in the open unit ball");
  }
  const int n = basis.dimension();
  CoeffVector<S> x(basis.size());
  x[0] = S(1);
  for (std::size_t i = 1; i < basis.size(); ++i) {
    const MultiIndex& alpha = basis[i];
    int j = 0;
    while (alpha[j] == 0) ++j;
    // conj(a^alpha) = conj(a^(alpha - e_j)) conj(a_j)
    x[i] = x[*basis.index_of(*alpha.minus(MultiIndex::unit(n, j)))] * conj(a[static_cast<std::size_t>(j)]);
  }
  // Undo the weights only after the recursion, which needs the plain powers.
  for (std::size_t i = 0; i < basis.size(); ++i) x[i] = x[i] * from_rational<S>(Rational(1 / basis.weight(i)));
  return x;
}

/// Orthonormal-basis matrix of P_d A P_d.
template <Scalar S>
Eigen::MatrixXcd orthonormal_block(const TruncatedOperator<S>& a, int d) {
  const auto k = static_cast<Eigen::Index>(a.basis().block_size(d));
  Eigen::MatrixXcd m(k, k);
  for (Eigen::Index r = 0; r < k; ++r)
    for (Eigen::Index c = 0; c < k; ++c)
      m(r, c) = a.orthonormal(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
  return m;
}

/// Largest orthonormal-scale entry difference on the degree-<=d block.
template <Scalar S>
double max_diff_on_block(const TruncatedOperator<S>& a, const TruncatedOperator<S>& b, int d) {
  detail::require_same_basis(a, b, "max_diff_on_block");
  const std::size_t k = a.basis().block_size(d);
  double worst = 0.0;
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t c = 0; c < k; ++c) {
      if (a.raw(r, c) == b.raw(r, c)) continue;
      worst = std::max(worst, std::abs(a.orthonormal(r, c) - b.orthonormal(r, c)));
    }
  return worst;
}

/// Entrywise equality on the degree-<=d block; exact for rational scalars.
template <Scalar S>
bool equal_on_block(const TruncatedOperator<S>& a, const TruncatedOperator<S>& b, int d, double tol = 0.0) {
  detail::require_same_basis(a, b, "equal_on_block");
  const std::size_t k = a.basis().block_size(d);
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t c = 0; c < k; ++c) {
      if (a.raw(r, c) == b.raw(r, c)) continue;
      if constexpr (is_exact_v<S>) return false;
      if (std::abs(a.orthonormal(r, c) - b.orthonormal(r, c)) > tol) return false;
    }
  return true;
}

template <Scalar S>
bool is_zero_operator(const TruncatedOperator<S>& a) {
  return std::all_of(a.raw_data().begin(), a.raw_data().end(), [](const S& x) { return is_zero(x); });
}

}  // namespace hardy
