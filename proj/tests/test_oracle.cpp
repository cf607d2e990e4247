#include <gtest/gtest.h>

#include <random>

#include "hardy/operators.hpp"
#include "hardy/oracle.hpp"

using namespace hardy;
using Q = ComplexRational;

TEST(Oracle, MonomialNormsWithinFourStandardErrors) {
  for (int n = 1; n <= 3; ++n) {
    const auto basis = enumerate_basis(n, 3);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const auto m = SphereSymbol<Q>::term(basis[i], MultiIndex::zero(n));
      const auto e = mc_pairing(m, m, 200000, 10 + i);
      EXPECT_LE(std::abs(e.estimate - basis.weight(i).get_d()), 4.0 * e.std_error + 1e-15) << basis[i].to_string();
    }
  }
}

TEST(Oracle, ToeplitzEntriesWithinFourStandardErrors) {
  std::mt19937_64 rng(7);
  const auto basis = enumerate_basis(2, 3);
  const auto f = random_rational_symbol(2, 2, 1, 4, rng);
  const auto t = toeplitz_op(f, basis);
  for (std::size_t r = 0; r < basis.size(); r += 3)
    for (std::size_t c = 0; c < basis.size(); c += 2) {
      const auto e = mc_toeplitz_entry(f, basis[c], basis[r], 100000, 100 + r * 31 + c);
      EXPECT_LE(std::abs(e.estimate - to_complex(t.raw(r, c))), 4.0 * e.std_error + 1e-15);
    }
}

TEST(Oracle, EstimatesAreSeededAndRecordProvenance) {
  const auto f = SphereSymbol<Q>::term(MultiIndex{1, 1}, MultiIndex{0, 1});
  const auto a = mc_pairing(f, f, 5000, 3);
  const auto b = mc_pairing(f, f, 5000, 3);
  const auto c = mc_pairing(f, f, 5000, 4);
  EXPECT_EQ(a.estimate, b.estimate);
  EXPECT_EQ(a.std_error, b.std_error);
  EXPECT_NE(a.estimate, c.estimate);
  EXPECT_EQ(a.samples, 5000u);
  EXPECT_EQ(a.seed, 3u);
  EXPECT_GT(a.std_error, 0.0);
}

TEST(Oracle, StandardErrorShrinksWithSamples) {
  const auto f = SphereSymbol<Q>::term(MultiIndex{2, 0}, MultiIndex{0, 0});
  const auto small = mc_pairing(f, f, 10000, 1);
  const auto large = mc_pairing(f, f, 160000, 1);
  EXPECT_NEAR(large.std_error / small.std_error, 0.25, 0.03);
}

TEST(Oracle, RejectsDegenerateInput) {
  const auto f = SphereSymbol<Q>::constant(2, Q(1));
  EXPECT_THROW(mc_pairing(f, f, 1, 1), InputError);
  EXPECT_THROW(mc_pairing(f, SphereSymbol<Q>::constant(3, Q(1)), 100, 1), InputError);
  EXPECT_THROW(mc_toeplitz_entry(f, MultiIndex{1}, MultiIndex{0, 1}, 100, 1), InputError);
}
