#pragma once

#include <Eigen/Dense>

#include <random>
#include <vector>

#include "hardy/errors.hpp"
#include "hardy/operators.hpp"
#include "hardy/symbols.hpp"

namespace hardy {

namespace detail {

// Phi(A) = sum_j T_{conj z_j} A T_{z_j}: lifts a degree bound by at most ceil(slope) - 1.
inline GrowthBound phi_growth(const GrowthBound& g) {
  if (!g) return std::nullopt;
  return Growth{g->slope, g->offset + std::max(ceil_rational(g->slope) - 1, 0)};
}

}  // namespace detail

/// One application of Phi by the shift rule R'[gamma, beta] = sum_j R[gamma + e_j, beta + e_j].
/// The certified block shrinks by exactly one degree.
template <Scalar S>
TruncatedOperator<S> phi_apply(const TruncatedOperator<S>& a) {
  if (a.valid_degree() < 0) throw TrustExhausted("phi_apply: operator has no certified block", 0);
  const BasisTable& basis = a.basis();
  const int n = basis.dimension();
  const std::size_t size = basis.size();
  const std::size_t inner = basis.block_size(basis.max_degree() - 1);
  std::vector<S> raw(size * size);
  for (std::size_t r = 0; r < inner; ++r)
    for (std::size_t c = 0; c < inner; ++c) {
      S acc{};
      for (int j = 0; j < n; ++j)
        acc += a.raw(static_cast<std::size_t>(basis.shifted(r, j)), static_cast<std::size_t>(basis.shifted(c, j)));
      raw[r * size + c] = std::move(acc);
    }
  return TruncatedOperator<S>(basis, std::move(raw), a.valid_degree() - 1, detail::phi_growth(a.growth()),
                              detail::phi_growth(a.adjoint_growth()));
}

/// [A, Phi(A), ..., Phi^m(A)].
template <Scalar S>
std::vector<TruncatedOperator<S>> phi_iterate(const TruncatedOperator<S>& a, int m) {
  if (m < 0) throw InputError("phi_iterate: m must be non-negative");
  if (m > a.valid_degree())
    throw TrustExhausted("phi_iterate: " + std::to_string(m) + " iterates exceed the certified block",
                         std::max(a.valid_degree(), 0));
  std::vector<TruncatedOperator<S>> out;
  out.reserve(static_cast<std::size_t>(m) + 1);
  out.push_back(a);
  for (int i = 1; i <= m; ++i) out.push_back(phi_apply(out.back()));
  return out;
}

/// (1/m) sum_{j=1}^m Phi^j(iterates[0]) from a precomputed iterate list.
template <Scalar S>
TruncatedOperator<S> cesaro_from_iterates(const std::vector<TruncatedOperator<S>>& iterates, int m) {
  if (m < 1 || m >= static_cast<int>(iterates.size())) throw InputError("cesaro mean: m out of range");
  TruncatedOperator<S> sum = iterates[1];
  for (int j = 2; j <= m; ++j) sum = add(sum, iterates[static_cast<std::size_t>(j)]);
  return scale(from_rational<S>(Rational(1, m)), sum);
}

template <Scalar S>
TruncatedOperator<S> cesaro_mean(const TruncatedOperator<S>& a, int m) {
  if (m < 1) throw InputError("cesaro_mean: m must be >= 1");
  return cesaro_from_iterates(phi_iterate(a, m), m);
}

/// Phi computed in the frame of a unitary U: sum_j T_{conj f_j} A T_{f_j}, f_j(z) = <z, u_j>
/// with u_j the j-th column of U.
template <Scalar S>
FloatOperator phi_in_frame(const TruncatedOperator<S>& a, const Eigen::MatrixXcd& u) {
  const int n = a.basis().dimension();
  if (u.rows() != n || u.cols() != n) throw InputError("phi_in_frame: frame has wrong size");
  const Eigen::MatrixXcd defect = u.adjoint() * u - Eigen::MatrixXcd::Identity(n, n);
  if (defect.cwiseAbs().maxCoeff() > 1e-10) throw InputError("phi_in_frame: frame is not unitary");
  const FloatOperator af = a.template cast<Complex>();
  FloatOperator total = FloatOperator::zero(a.basis());
  for (int j = 0; j < n; ++j) {
    Polynomial<Complex> fj(n);
    for (int k = 0; k < n; ++k) fj.add_term(MultiIndex::unit(n, k), std::conj(u(k, j)));
    const auto t = toeplitz_op(SphereSymbol<Complex>::holomorphic(fj), a.basis());
    total = add(total, multiply(adjoint(t), multiply(af, t)));
  }
  return total;
}

/// Haar-distributed unitary from the QR factorization of a complex Gaussian
/// matrix, with the phases of R's diagonal folded into Q.
inline Eigen::MatrixXcd random_unitary(int n, std::mt19937_64& rng) {
  if (n < 1) throw InputError("random_unitary: dimension must be >= 1");
  std::normal_distribution<double> gauss;
  Eigen::MatrixXcd z(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) z(i, j) = Complex(gauss(rng), gauss(rng));
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
  for (int j = 0; j < n; ++j) {
    const Complex d = qr.matrixQR()(j, j);
    q.col(j) *= d / std::abs(d);
  }
  return q;
}

}  // namespace hardy
