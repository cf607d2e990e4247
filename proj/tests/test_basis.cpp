#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "hardy/basis.hpp"
#include "hardy/errors.hpp"
#include "hardy/scalar.hpp"

using namespace hardy;

namespace {

// Independent oracle: ||z^alpha||^2 = (n-1)! prod alpha_j! / (n-1+|alpha|)! through lgamma.
double weight_oracle(const MultiIndex& a) {
  const int n = a.dimension();
  double log_w = std::lgamma(n) - std::lgamma(n + a.degree());
  for (int j = 0; j < n; ++j) log_w += std::lgamma(a[j] + 1);
  return std::exp(log_w);
}

long binomial(int n, int k) {
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST(ComplexRational, FieldArithmetic) {
  const ComplexRational a(Rational(1, 2), Rational(-3, 4));
  const ComplexRational b(Rational(2, 3), Rational(5));
  EXPECT_EQ(a * b, ComplexRational(Rational(1, 3) + Rational(15, 4), Rational(5, 2) - Rational(1, 2)));
  EXPECT_EQ((a * b) / b, a);
  EXPECT_EQ(a + b - b, a);
  EXPECT_EQ(a.conj().conj(), a);
  EXPECT_EQ(a.norm(), Rational(1, 4) + Rational(9, 16));
  EXPECT_EQ(a * a.conj(), ComplexRational(a.norm()));
  EXPECT_THROW(a / ComplexRational(0), std::exception);
}

TEST(ComplexRational, SelfMultiplicationDoesNotAlias) {
  ComplexRational a(Rational(1), Rational(2));
  a *= a;
  EXPECT_EQ(a, ComplexRational(Rational(-3), Rational(4)));
  ComplexRational acc(1);
  acc.add_product(acc, acc);
  EXPECT_EQ(acc, ComplexRational(2));
}

TEST(ComplexRational, UnreducedInputsCompareEqual) {
  EXPECT_EQ(ComplexRational(Rational(3, 3)), ComplexRational(1));
  EXPECT_EQ(ComplexRational(Rational(2, 4), Rational(0, 5)), ComplexRational(Rational(1, 2)));
}

TEST(ComplexRational, ConversionToDouble) {
  const ComplexRational a(Rational(1, 3), Rational(-2, 7));
  const Complex z = to_complex(a);
  EXPECT_DOUBLE_EQ(z.real(), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(z.imag(), -2.0 / 7.0);
  EXPECT_EQ(scalar_cast<Complex>(a), z);
}

TEST(MultiIndex, Arithmetic) {
  const MultiIndex a({2, 0, 1});
  const MultiIndex b({1, 0, 1});
  EXPECT_EQ(a.degree(), 3);
  EXPECT_EQ(a + b, MultiIndex({3, 0, 2}));
  EXPECT_EQ(a.minus(b), MultiIndex({1, 0, 0}));
  EXPECT_FALSE(b.minus(a).has_value());
  EXPECT_EQ(a.plus_unit(1), MultiIndex({2, 1, 1}));
  EXPECT_TRUE(MultiIndex::zero(3).is_zero());
  EXPECT_EQ(a.to_string(), "(2,0,1)");
  EXPECT_THROW(a + MultiIndex({1, 1}), InputError);
}

TEST(Basis, SizeMatchesBinomialCount) {
  for (int n = 1; n <= 4; ++n)
    for (int d = 0; d <= 8; ++d) {
      const auto b = enumerate_basis(n, d);
      EXPECT_EQ(static_cast<long>(b.size()), binomial(n + d, n)) << n << "," << d;
      for (int k = 0; k <= d; ++k) EXPECT_EQ(static_cast<long>(b.block_size(k)), binomial(n + k, n));
      EXPECT_EQ(b.block_size(-1), 0u);
    }
}

TEST(Basis, GradedOrderAndIndexRoundTrip) {
  const auto b = enumerate_basis(3, 6);
  std::set<MultiIndex> seen;
  for (std::size_t i = 0; i < b.size(); ++i) {
    EXPECT_EQ(b.degree(i), b[i].degree());
    if (i > 0) {
      EXPECT_LE(b.degree(i - 1), b.degree(i));
      if (b.degree(i - 1) == b.degree(i)) {
        EXPECT_GT(b[i - 1], b[i]);
      }
    }
    EXPECT_EQ(b.index_of(b[i]), i);
    EXPECT_TRUE(seen.insert(b[i]).second);
  }
  EXPECT_FALSE(b.index_of(MultiIndex({7, 0, 0})).has_value());
  const auto two = enumerate_basis(2, 1);
  EXPECT_EQ(two[1], MultiIndex({1, 0}));
  EXPECT_EQ(two[2], MultiIndex({0, 1}));
}

TEST(Basis, ShiftTable) {
  const auto b = enumerate_basis(2, 5);
  for (std::size_t i = 0; i < b.size(); ++i)
    for (int j = 0; j < 2; ++j) {
      const long s = b.shifted(i, j);
      if (b.degree(i) == 5) {
        EXPECT_EQ(s, -1);
      } else {
        ASSERT_GE(s, 0);
        EXPECT_EQ(b[static_cast<std::size_t>(s)], b[i].plus_unit(j));
      }
    }
}

TEST(Basis, WeightsMatchGammaFunctionOracle) {
  for (int n = 1; n <= 4; ++n) {
    const auto b = enumerate_basis(n, 7);
    for (std::size_t i = 0; i < b.size(); ++i) {
      EXPECT_NEAR(b.weight(i).get_d(), weight_oracle(b[i]), 1e-14 * weight_oracle(b[i]));
      EXPECT_EQ(b.weight(i), monomial_norm_sq(b[i], n));
    }
  }
}

// sum_j ||z^(alpha + e_j)||^2 = ||z^alpha||^2: the tensor of the co-isometry identity.
TEST(Basis, WeightsSatisfyShiftRecursion) {
  for (int n = 1; n <= 4; ++n) {
    const auto b = enumerate_basis(n, 6);
    for (std::size_t i = 0; i < b.block_size(5); ++i) {
      Rational sum(0);
      for (int j = 0; j < n; ++j) sum += b.weight(static_cast<std::size_t>(b.shifted(i, j)));
      EXPECT_EQ(sum, b.weight(i));
    }
  }
}

TEST(Basis, OneDimensionalWeightsAreOne) {
  const auto b = enumerate_basis(1, 10);
  for (std::size_t i = 0; i < b.size(); ++i) EXPECT_EQ(b.weight(i), Rational(1));
}

TEST(Basis, RejectsBadArguments) {
  EXPECT_THROW(enumerate_basis(0, 3), InputError);
  EXPECT_THROW(enumerate_basis(2, -1), InputError);
}
