#include <gtest/gtest.h>

#include <random>

#include "hardy/operators.hpp"
#include "hardy/sampling.hpp"

using namespace hardy;
using Q = ComplexRational;

namespace {

Q q(long a, long b = 1) { return Q(Rational(a, b)); }

// <T_f z^beta, z^gamma> as the sphere integral of f z^beta conj(z^gamma).
Q toeplitz_entry_oracle(const SphereSymbol<Q>& f, const MultiIndex& beta, const MultiIndex& gamma) {
  return integrate_symbol(symbol_product(f, SphereSymbol<Q>::term(beta, gamma)));
}

// <C_phi z^alpha, z^gamma> = coefficient of z^gamma in alpha-th power of phi, times ||z^gamma||^2.
Q composition_entry_oracle(const PolySelfMap<Q>& phi, const MultiIndex& alpha, const MultiIndex& gamma) {
  const auto p = compose(Polynomial<Q>::monomial(alpha), phi);
  return p.coefficient(gamma) * Q(monomial_norm_sq(gamma, phi.dimension()));
}

PolySelfMap<Q> linear(const std::vector<std::vector<Q>>& a) { return PolySelfMap<Q>::linear(a); }

bool same_on_block(const ExactOperator& a, const ExactOperator& b, int d) { return equal_on_block(a, b, d); }

}  // namespace

TEST(Toeplitz, EntriesMatchIntegralOracle) {
  std::mt19937_64 rng(1);
  for (int n = 1; n <= 3; ++n) {
    const auto basis = enumerate_basis(n, 4);
    const auto f = random_rational_symbol(n, 2, 2, 6, rng);
    const auto t = toeplitz_op(f, basis);
    for (std::size_t r = 0; r < basis.size(); ++r)
      for (std::size_t c = 0; c < basis.size(); ++c)
        ASSERT_EQ(t.raw(r, c), toeplitz_entry_oracle(f, basis[c], basis[r])) << n << " " << r << " " << c;
    EXPECT_EQ(t.valid_degree(), 4);
  }
}

TEST(Toeplitz, OneDimensionalFourierRule) {
  // On the circle <T_f z^b, z^c> is the Fourier coefficient of f at c - b.
  const auto basis = enumerate_basis(1, 6);
  SphereSymbol<Q> f(1);
  f.add_term(MultiIndex{2}, MultiIndex{0}, q(3));
  f.add_term(MultiIndex{0}, MultiIndex{1}, q(-1, 2));
  f.add_term(MultiIndex{1}, MultiIndex{1}, q(5));
  const auto t = toeplitz_op(f, basis);
  for (int c = 0; c <= 6; ++c)
    for (int b = 0; b <= 6; ++b) {
      const Q expected = c - b == 2 ? q(3) : c - b == -1 ? q(-1, 2) : c == b ? q(5) : q(0);
      EXPECT_EQ(t.raw(static_cast<std::size_t>(c), static_cast<std::size_t>(b)), expected);
    }
}

TEST(Toeplitz, AdjointIsConjugateSymbol) {
  std::mt19937_64 rng(2);
  const auto basis = enumerate_basis(2, 5);
  for (int k = 0; k < 5; ++k) {
    const auto f = random_rational_symbol(2, 2, 3, 7, rng);
    EXPECT_TRUE(same_on_block(adjoint(toeplitz_op(f, basis)), toeplitz_op(symbol_conj(f), basis), 5));
  }
}

TEST(Toeplitz, ProductWithAnalyticOrCoanalyticFactor) {
  std::mt19937_64 rng(3);
  const auto basis = enumerate_basis(2, 8);
  for (int k = 0; k < 4; ++k) {
    const auto f = random_rational_symbol(2, 2, 2, 5, rng);
    const auto h = random_rational_symbol(2, 2, 0, 3, rng);  // holomorphic
    const auto tf = toeplitz_op(f, basis);
    const auto th = toeplitz_op(h, basis);
    const auto tfh = toeplitz_op(symbol_product(f, h), basis);
    const auto p1 = multiply(tf, th);
    ASSERT_GE(p1.valid_degree(), 0);
    EXPECT_TRUE(same_on_block(p1, tfh, p1.valid_degree()));
    const auto hc = symbol_conj(h);
    const auto p2 = multiply(toeplitz_op(hc, basis), tf);
    ASSERT_GE(p2.valid_degree(), 0);
    EXPECT_TRUE(same_on_block(p2, toeplitz_op(symbol_product(hc, f), basis), p2.valid_degree()));
  }
}

TEST(Toeplitz, CoisometrySumIsIdentityOnValidBlock) {
  for (int n = 1; n <= 3; ++n) {
    const auto basis = enumerate_basis(n, 6);
    auto sum = ExactOperator::zero(basis);
    for (int j = 0; j < n; ++j) {
      const auto t = toeplitz_op(SphereSymbol<Q>::holomorphic(Polynomial<Q>::coordinate(n, j)), basis);
      sum = add(sum, multiply(adjoint(t), t));
    }
    EXPECT_EQ(sum.valid_degree(), 5);
    EXPECT_TRUE(same_on_block(sum, ExactOperator::identity(basis), 5));
  }
}

TEST(Composition, EntriesMatchPolynomialOracle) {
  const auto x = Polynomial<Q>::coordinate(2, 0);
  const auto y = Polynomial<Q>::coordinate(2, 1);
  const PolySelfMap<Q> phi(2, {x.scaled(q(1, 2)) + (y * y).scaled(q(1, 3)), (x * y).scaled(q(1, 4)) + y.scaled(q(-1, 5))});
  const auto basis = enumerate_basis(2, 6);
  const auto c = composition_op(phi, basis);
  for (std::size_t r = 0; r < basis.size(); ++r)
    for (std::size_t k = 0; k < basis.size(); ++k)
      ASSERT_EQ(c.raw(r, k), composition_entry_oracle(phi, basis[k], basis[r]));
}

TEST(Composition, ProductIsCompositionOfMaps) {
  const auto phi = linear({{q(1, 2), q(1, 3)}, {q(0), q(1, 4)}});
  const auto psi = linear({{q(1, 5), q(0)}, {q(-1, 2), q(1, 3)}});
  const auto basis = enumerate_basis(2, 7);
  // C_phi C_psi f = f o psi o phi.
  PolySelfMap<Q> psi_phi(2, {compose(psi.component(0), phi), compose(psi.component(1), phi)});
  const auto prod = multiply(composition_op(phi, basis), composition_op(psi, basis));
  EXPECT_EQ(prod.valid_degree(), 7);
  EXPECT_TRUE(same_on_block(prod, composition_op(psi_phi, basis), 7));
}

TEST(Composition, AdjointMapsKernelsToKernels) {
  const auto phi = linear({{q(1, 2), q(1, 3)}, {q(0), q(1, 4)}});
  const auto basis = enumerate_basis(2, 6);
  const std::vector<Q> a{Q(Rational(1, 3), Rational(1, 5)), q(-1, 4)};
  const auto phi_a = std::vector<Q>{q(1, 2) * a[0] + q(1, 3) * a[1], q(1, 4) * a[1]};
  const auto lhs = hardy::apply(adjoint(composition_op(phi, basis)), kernel_vector(a, basis));
  EXPECT_TRUE(lhs == kernel_vector(phi_a, basis));
}

TEST(Composition, CounterexampleIsIsometricOnPowersOfLastCoordinate) {
  const PolySelfMap<Q> phi(2, {Polynomial<Q>(2), Polynomial<Q>::coordinate(2, 0)});
  const int d = 8;
  const auto basis = enumerate_basis(2, d);
  const auto c = composition_op(phi, basis);
  for (int s = 0; s <= d; ++s) {
    const auto x = monomial_vector<Q>(MultiIndex{0, s}, basis);
    EXPECT_EQ(norm_sq(hardy::apply(c, x), basis), norm_sq(x, basis));
  }
  const PolySelfMap<Q> psi(2, {Polynomial<Q>::coordinate(2, 1), Polynomial<Q>(2)});
  EXPECT_TRUE(same_on_block(adjoint(c), composition_op(psi, basis), d));
}

TEST(Operators, AdjointAndProductAlgebra) {
  std::mt19937_64 rng(4);
  const auto basis = enumerate_basis(2, 6);
  const auto a = toeplitz_op(random_rational_symbol(2, 1, 1, 4, rng), basis);
  const auto b = composition_op(linear({{q(1, 2), q(0)}, {q(1, 3), q(1, 3)}}), basis);
  EXPECT_TRUE(same_on_block(adjoint(adjoint(a)), a, 6));
  const auto ab = multiply(a, b);
  const auto ba_adj = multiply(adjoint(b), adjoint(a));
  const int v = std::min(ab.valid_degree(), ba_adj.valid_degree());
  ASSERT_GE(v, 0);
  EXPECT_TRUE(same_on_block(adjoint(ab), ba_adj, v));
  EXPECT_TRUE(is_zero_operator(subtract(a, a)));
  EXPECT_TRUE(same_on_block(add(a, a), scale(q(2), a), 6));
  EXPECT_TRUE(same_on_block(multiply(ExactOperator::identity(basis), a), a, 6));
}

TEST(Operators, ProductTracksValidDegree) {
  const auto basis = enumerate_basis(2, 6);
  const auto up = toeplitz_op(SphereSymbol<Q>::term(MultiIndex{2, 0}, MultiIndex{0, 0}), basis);
  const auto down = adjoint(up);
  EXPECT_EQ(multiply(up, up).valid_degree(), 6);        // adjoint growth of the left factor is (1, 0)
  EXPECT_EQ(multiply(down, up).valid_degree(), 4);      // up lifts degrees by two
  EXPECT_EQ(multiply(up, down).valid_degree(), 6);
  const auto bad = PolySelfMap<Q>::affine({{q(1, 2), q(0)}, {q(0), q(1, 2)}}, {q(1, 4), q(0)});
  EXPECT_FALSE(composition_op(bad, basis).adjoint_growth().has_value());
}

TEST(Operators, RankOneActsAsOuterProduct) {
  const auto basis = enumerate_basis(2, 4);
  const auto u = polynomial_vector(Polynomial<Q>::constant(2, Q(1)) + Polynomial<Q>::coordinate(2, 0), basis);
  const auto v = monomial_vector<Q>(MultiIndex{0, 2}, basis);
  const auto k = rank_one(u, v, basis);
  std::mt19937_64 rng(8);
  const auto x = polynomial_vector(
      [&] {
        Polynomial<Q> p(2);
        for (std::size_t i = 0; i < basis.size(); ++i) p.add_term(basis[i], q(static_cast<long>(rng() % 7) - 3, 2));
        return p;
      }(),
      basis);
  const Q coef = inner(x, v, basis);
  auto expected = u;
  for (auto& e : expected) e *= coef;
  EXPECT_TRUE(hardy::apply(k, x) == expected);
}

TEST(Vectors, KernelReproducesPolynomials) {
  const auto basis = enumerate_basis(3, 5);
  const std::vector<Q> a{q(1, 3), Q(Rational(0), Rational(1, 4)), q(-1, 5)};
  const auto x = Polynomial<Q>::coordinate(3, 0);
  const auto z = Polynomial<Q>::coordinate(3, 2);
  const auto p = (x * x * z).scaled(q(3)) + Polynomial<Q>::constant(3, q(2)) + z;
  const Q pa = q(3) * a[0] * a[0] * a[2] + q(2) + a[2];
  EXPECT_EQ(inner(polynomial_vector(p, basis), kernel_vector(a, basis), basis), pa);
  EXPECT_THROW(kernel_vector(std::vector<Q>{q(1), q(0), q(0)}, basis), InputError);
}

TEST(Vectors, MonomialNormsAndBlocks) {
  const auto basis = enumerate_basis(2, 4);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto e = monomial_vector<Q>(basis[i], basis);
    EXPECT_EQ(norm_sq(e, basis), Q(basis.weight(i)));
  }
  const auto kv = kernel_vector(std::vector<Q>{q(1, 2), q(1, 3)}, basis);
  const auto r = restrict_to_block(kv, basis, 2);
  for (std::size_t i = 0; i < basis.size(); ++i) EXPECT_EQ(is_zero(r[i]), basis.degree(i) > 2 || is_zero(kv[i]));
  const auto t = toeplitz_op(SphereSymbol<Q>::term(MultiIndex{1, 0}, MultiIndex{0, 1}), basis);
  const auto full = restrict_to_block(hardy::apply(t, r), basis, 2);
  EXPECT_TRUE(apply_on_block(t, r, 2) == full);
}

TEST(Operators, FloatCastAgreesWithExact) {
  std::mt19937_64 rng(9);
  const auto basis = enumerate_basis(2, 5);
  const auto a = toeplitz_op(random_rational_symbol(2, 2, 2, 5, rng), basis);
  const auto af = a.cast<Complex>();
  for (std::size_t r = 0; r < basis.size(); ++r)
    for (std::size_t c = 0; c < basis.size(); ++c) EXPECT_EQ(af.raw(r, c), to_complex(a.raw(r, c)));
  const auto prod = multiply(af, af);
  const auto exact = multiply(a, a).cast<Complex>();
  EXPECT_LT(max_diff_on_block(prod, exact, prod.valid_degree()), 1e-12);
}

TEST(Operators, OrthonormalBlockIsUnitaryForIsometry) {
  // The coordinate swap is unitary on every degree block.
  const auto basis = enumerate_basis(2, 5);
  const auto c = composition_op(linear({{q(0), q(1)}, {q(1), q(0)}}), basis);
  const Eigen::MatrixXcd m = orthonormal_block(c, 5);
  EXPECT_LT((m.adjoint() * m - Eigen::MatrixXcd::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff(), 1e-14);
}
