#include <gtest/gtest.h>

#include <random>

#include "hardy/phi.hpp"

using namespace hardy;
using Q = ComplexRational;

namespace {

Q q(long a, long b = 1) { return Q(Rational(a, b)); }

// Phi(A) through operator products: sum_j T_{conj z_j} A T_{z_j}.
template <Scalar S>
TruncatedOperator<S> phi_by_products(const TruncatedOperator<S>& a) {
  const auto& basis = a.basis();
  const int n = basis.dimension();
  auto total = TruncatedOperator<S>::zero(basis);
  for (int j = 0; j < n; ++j) {
    const auto t = toeplitz_op(SphereSymbol<S>::holomorphic(Polynomial<S>::coordinate(n, j)), basis);
    total = add(total, multiply(adjoint(t), multiply(a, t)));
  }
  return total;
}

ExactOperator random_dense(const BasisTable& basis, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-5, 5);
  std::vector<Q> raw(basis.size() * basis.size());
  for (auto& x : raw) x = Q(Rational(num(rng), 3), Rational(num(rng), 4));
  return ExactOperator(basis, std::move(raw), basis.max_degree(), std::nullopt, std::nullopt);
}

}  // namespace

TEST(Phi, ShiftRuleMatchesProductDefinition) {
  std::mt19937_64 rng(1);
  for (int n = 1; n <= 3; ++n) {
    const auto basis = enumerate_basis(n, 5);
    const auto a = random_dense(basis, rng);
    const auto shift = phi_apply(a);
    const auto prod = phi_by_products(a);
    EXPECT_EQ(prod.valid_degree(), 3);
    EXPECT_TRUE(equal_on_block(shift, prod, prod.valid_degree())) << n;
  }
}

TEST(Phi, ToeplitzOperatorsAreFixedPoints) {
  std::mt19937_64 rng(2);
  for (int n = 1; n <= 3; ++n)
    for (int k = 0; k < 4; ++k) {
      const auto basis = enumerate_basis(n, 6);
      const auto t = toeplitz_op(random_rational_symbol(n, 3, 3, 6, rng), basis);
      const auto p = phi_apply(t);
      EXPECT_EQ(p.valid_degree(), 5);
      EXPECT_TRUE(equal_on_block(p, t, 5));
    }
}

TEST(Phi, NonToeplitzOperatorIsMoved) {
  const auto basis = enumerate_basis(2, 5);
  const auto c = composition_op(PolySelfMap<Q>::linear({{q(1, 2), q(0)}, {q(0), q(1, 2)}}), basis);
  EXPECT_FALSE(equal_on_block(phi_apply(c), c, 4));
}

TEST(Phi, ScalarMultipleOfIdentityMap) {
  // C_{lambda z}: Phi^j(C) = lambda^j C.
  const Q lambda(Rational(0), Rational(1));
  const auto basis = enumerate_basis(2, 7);
  const auto c = composition_op(PolySelfMap<Q>::linear({{lambda, q(0)}, {q(0), lambda}}), basis);
  const auto it = phi_iterate(c, 4);
  Q power(1);
  for (int j = 1; j <= 4; ++j) {
    power *= lambda;
    EXPECT_TRUE(equal_on_block(it[static_cast<std::size_t>(j)], scale(power, c), 7 - j));
  }
  // Cesaro mean (1/4) sum lambda^j = 0 for the fourth root of unity.
  EXPECT_TRUE(equal_on_block(cesaro_from_iterates(it, 4), ExactOperator::zero(basis), 3));
}

TEST(Phi, LinearAndCommutesWithAdjoint) {
  std::mt19937_64 rng(3);
  const auto basis = enumerate_basis(2, 5);
  const auto a = random_dense(basis, rng);
  const auto b = random_dense(basis, rng);
  const Q c(Rational(2, 3), Rational(-1, 2));
  EXPECT_TRUE(equal_on_block(phi_apply(add(a, scale(c, b))), add(phi_apply(a), scale(c, phi_apply(b))), 4));
  EXPECT_TRUE(equal_on_block(phi_apply(adjoint(a)), adjoint(phi_apply(a)), 4));
}

TEST(Phi, CounterexampleVanishes) {
  for (int n = 2; n <= 3; ++n) {
    std::vector<Polynomial<Q>> comps(static_cast<std::size_t>(n), Polynomial<Q>(n));
    comps[1] = Polynomial<Q>::coordinate(n, 0);
    const auto c = composition_op(PolySelfMap<Q>(n, comps), enumerate_basis(n, 6));
    const auto p = phi_apply(c);
    EXPECT_TRUE(equal_on_block(p, ExactOperator::zero(c.basis()), p.valid_degree()));
  }
}

TEST(Phi, FiniteRankOperatorsDieAfterDegreeSteps) {
  const auto basis = enumerate_basis(2, 8);
  // u carries every degree-3 monomial, so the vanishing order is set by v alone.
  const auto x = Polynomial<Q>::coordinate(2, 0), y = Polynomial<Q>::coordinate(2, 1);
  const auto u = polynomial_vector(Polynomial<Q>::constant(2, q(1)) + (x + y).pow(3), basis);
  for (int m0 = 0; m0 <= 3; ++m0) {
    MultiIndex alpha = MultiIndex::zero(2);
    for (int i = 0; i < m0; ++i) alpha = alpha.plus_unit(i % 2);
    const auto v = monomial_vector<Q>(alpha, basis);
    const auto it = phi_iterate(rank_one(u, v, basis), m0 + 1);
    EXPECT_FALSE(is_zero_operator(it[static_cast<std::size_t>(m0)]));
    EXPECT_TRUE(equal_on_block(it.back(), ExactOperator::zero(basis), it.back().valid_degree()));
  }
}

TEST(Phi, InductionFormulaForSandwichedToeplitz) {
  const auto basis = enumerate_basis(2, 8);
  const auto phi = PolySelfMap<Q>::linear({{q(1, 2), q(1, 3)}, {q(0), q(1, 4)}});
  const auto eta = PolySelfMap<Q>::linear({{q(1, 3), q(0)}, {q(1, 5), q(1, 2)}});
  SphereSymbol<Q> g(2);
  g.add_term(MultiIndex{1, 0}, MultiIndex{0, 1}, q(1));
  g.add_term(MultiIndex{0, 0}, MultiIndex{0, 0}, q(2));
  const auto ce = adjoint(composition_op(eta, basis));
  const auto cp = composition_op(phi, basis);
  const auto a = multiply(ce, multiply(toeplitz_op(g, basis), cp));
  const auto it = phi_iterate(a, 3);
  const auto pairing = pairing_symbol(phi, eta);
  for (int m = 1; m <= 3; ++m) {
    const auto rhs = multiply(ce, multiply(toeplitz_op(symbol_product(g, symbol_power(pairing, m)), basis), cp));
    const auto& lhs = it[static_cast<std::size_t>(m)];
    EXPECT_TRUE(equal_on_block(lhs, rhs, std::min(lhs.valid_degree(), rhs.valid_degree()))) << m;
  }
}

TEST(Phi, ValidityBookkeeping) {
  const auto basis = enumerate_basis(2, 4);
  const auto t = ExactOperator::identity(basis);
  const auto it = phi_iterate(t, 4);
  ASSERT_EQ(it.size(), 5u);
  for (int m = 0; m <= 4; ++m) EXPECT_EQ(it[static_cast<std::size_t>(m)].valid_degree(), 4 - m);
  try {
    phi_iterate(t, 5);
    FAIL() << "expected TrustExhausted";
  } catch (const TrustExhausted& e) {
    EXPECT_EQ(e.max_usable_m(), 4);
    EXPECT_NE(std::string(e.what()).find("max usable m = 4"), std::string::npos);
  }
  EXPECT_THROW(phi_apply(it[4].with_valid_degree(-1)), TrustExhausted);
}

TEST(Phi, FrameInvariance) {
  std::mt19937_64 rng(4);
  const auto basis = enumerate_basis(2, 6);
  const auto a = add(toeplitz_op(random_rational_symbol(2, 2, 2, 5, rng), basis),
                     composition_op(PolySelfMap<Q>::linear({{q(1, 2), q(1, 4)}, {q(-1, 3), q(1, 5)}}), basis));
  const auto reference = phi_apply(a).cast<Complex>();
  for (int k = 0; k < 5; ++k) {
    const Eigen::MatrixXcd u = random_unitary(2, rng);
    EXPECT_LT((u.adjoint() * u - Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-13);
    const auto framed = phi_in_frame(a, u);
    EXPECT_LT(max_diff_on_block(framed, reference, std::min(framed.valid_degree(), reference.valid_degree())), 1e-10);
  }
  Eigen::MatrixXcd not_unitary = Eigen::MatrixXcd::Identity(2, 2) * 0.9;
  EXPECT_THROW(phi_in_frame(a, not_unitary), InputError);
}
