#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hardy/diagnostics.hpp"

using namespace hardy;
using Q = ComplexRational;

namespace {

Q q(long a, long b = 1) { return Q(Rational(a, b)); }

Series geometric(double start, double ratio, int count) {
  Series s;
  for (int m = 1; m <= count; ++m) s.push_back({m, start * std::pow(ratio, m - 1)});
  return s;
}

double binomial(int n, int k) { return std::exp(std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1)); }

// Closed form for f = |z_1|^2, phi = lambda z, zeta = e_1 in C^2: h_s = (1 + z_1)^s and
// q_s = sum_k C(s,k)^2 / (k + 2) / sum_k C(s,k)^2 / (k + 1).
double rotation_lower_bound_oracle(int s) {
  double num = 0.0, den = 0.0;
  for (int k = 0; k <= s; ++k) {
    const double c2 = binomial(s, k) * binomial(s, k);
    num += c2 / (k + 2);
    den += c2 / (k + 1);
  }
  return num / den;
}

}  // namespace

TEST(Norms, PowerIterationMatchesSvd) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  for (int k = 0; k < 10; ++k) {
    Eigen::MatrixXcd m(7, 5);
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 5; ++j) m(i, j) = Complex(g(rng), g(rng));
    const double sigma = Eigen::JacobiSVD<Eigen::MatrixXcd>(m).singularValues()(0);
    EXPECT_NEAR(spectral_norm_estimate(m), sigma, 1e-8 * sigma);
  }
  EXPECT_EQ(spectral_norm_estimate(Eigen::MatrixXcd::Zero(3, 3)), 0.0);
}

TEST(Norms, BlockNormOfKnownOperators) {
  const auto basis = enumerate_basis(2, 6);
  EXPECT_NEAR(block_norm(ExactOperator::identity(basis)), 1.0, 1e-12);
  const auto c = composition_op(PolySelfMap<Q>::linear({{q(1, 2), q(0)}, {q(0), q(1, 3)}}), basis);
  EXPECT_NEAR(block_norm(c), 1.0, 1e-10);
  const auto t = toeplitz_op(SphereSymbol<Q>::term(MultiIndex{1, 0}, MultiIndex{1, 0}), basis);
  EXPECT_LE(block_norm(t), 1.0 + 1e-12);
  EXPECT_THROW(block_norm(t.with_valid_degree(-1)), InputError);
}

TEST(Classify, ZeroByThreshold) {
  ConvergenceReport r;
  r.series = geometric(1.0, 1e-2, 5);
  EXPECT_EQ(classify(r), Verdict::converges_to_zero);
}

TEST(Classify, ZeroByAnalyticBound) {
  ConvergenceReport r;
  r.series = geometric(0.4, 0.45, 6);
  r.analytic_bound = geometric(0.5, 0.5, 6);
  r.bound_base = 0.5;
  EXPECT_EQ(classify(r), Verdict::converges_to_zero);
  r.bound_base = 1.0;
  EXPECT_EQ(classify(r), Verdict::inconclusive);
}

TEST(Classify, ToeplitzLimit) {
  ConvergenceReport r;
  r.series = geometric(2.0, 1.0, 5);
  r.difference = geometric(0.5, 1e-3, 5);
  r.residual = 1e-9;
  EXPECT_EQ(classify(r), Verdict::converges_to_toeplitz);
  r.residual = 1e-2;
  EXPECT_EQ(classify(r), Verdict::inconclusive);
}

TEST(Classify, NonConvergentNeedsDecayingCompanion) {
  ConvergenceReport r;
  r.series = geometric(1.0, 1.0, 6);
  EXPECT_EQ(classify(r), Verdict::inconclusive);
  EXPECT_EQ(classify(r, {{"c", geometric(1.0, 0.7, 6)}}), Verdict::non_convergent);
  EXPECT_EQ(classify(r, {{"c", geometric(1.0, 1.0, 6)}}), Verdict::inconclusive);
}

TEST(Classify, VerdictNamesRoundTrip) {
  for (auto v : {Verdict::converges_to_toeplitz, Verdict::converges_to_zero, Verdict::non_convergent,
                 Verdict::inconclusive})
    EXPECT_EQ(parse_verdict(to_string(v)), v);
  EXPECT_EQ(to_string(Verdict::converges_to_zero), "converges-to-zero");
  EXPECT_FALSE(parse_verdict("zero").has_value());
}

TEST(ExtractSymbol, RecoversToeplitzSymbol) {
  std::mt19937_64 rng(5);
  const auto basis = enumerate_basis(2, 8);
  const auto f = random_rational_symbol(2, 2, 2, 5, rng);
  const auto t = toeplitz_op(f, basis);
  const auto e = extract_symbol(t);
  EXPECT_LT(e.residual, 1e-12);
  EXPECT_LT(e.fit_error, 1e-10);
  for (const auto& z : sphere_sample(2, 20, 3)) EXPECT_LT(std::abs(eval_symbol(e.symbol, z) - eval_symbol(f, z)), 1e-9);
}

TEST(UatSequence, ToeplitzAndCounterexample) {
  std::mt19937_64 rng(6);
  const auto basis = enumerate_basis(2, 8);
  const auto t = toeplitz_op(random_rational_symbol(2, 1, 1, 4, rng), basis);
  EXPECT_EQ(uat_sequence(t, 4).verdict, Verdict::converges_to_toeplitz);
  const PolySelfMap<Q> phi(2, {Polynomial<Q>(2), Polynomial<Q>::coordinate(2, 0)});
  const auto r = uat_sequence(composition_op(phi, basis), 4);
  EXPECT_EQ(r.verdict, Verdict::converges_to_zero);
  for (const auto& p : r.series) EXPECT_EQ(p.value, 0.0);
  EXPECT_THROW(uat_sequence(t, 9), TrustExhausted);
}

TEST(UatSequence, LinearContractionWithinAnalyticBound) {
  const auto basis = enumerate_basis(2, 8);
  const auto phi = PolySelfMap<Q>::linear({{q(1, 2), q(0)}, {q(0), q(1, 3)}});
  const auto r = uat_sequence(composition_op(phi, basis), 5, phi, 20000, 1);
  ASSERT_TRUE(r.analytic_bound.has_value());
  EXPECT_NEAR(*r.bound_base, 0.5, 1e-3);
  for (std::size_t i = 0; i < r.series.size(); ++i) EXPECT_LE(r.series[i].value, 2.0 * (*r.analytic_bound)[i].value);
  // ||Phi^m(C_phi)|| is at least |<Phi^m(C_phi) 1, 1>| = integral of <Az, z>^m.
  const auto f = pairing_symbol(phi, PolySelfMap<Q>::identity(2));
  for (const auto& p : r.series)
    EXPECT_GE(p.value + 1e-12, std::abs(to_complex(integrate_symbol(symbol_power(f, p.m)))));
}

TEST(Probes, InnerFunctionOnTheDisc) {
  const auto basis = enumerate_basis(1, 12);
  const PolySelfMap<Q> phi(1, {Polynomial<Q>::monomial(MultiIndex{2})});
  const auto c = composition_op(phi, basis);
  std::vector<ProbeVector<Q>> xs{{"1", monomial_vector<Q>(MultiIndex{0}, basis)}};
  const auto r = sat_probe(c, xs, 6);
  for (const auto& p : r.series) EXPECT_DOUBLE_EQ(p.value, 1.0);
  const auto ces = cesaro_probe(c, xs, 6);
  for (const auto& p : ces.series) EXPECT_NEAR(p.value, 1.0 / std::sqrt(p.m), 1e-12);
}

TEST(Probes, CesaroMeansOfRotation) {
  const Complex lambda = std::polar(1.0, std::numbers::pi / 3);
  const auto basis = enumerate_basis(2, 10);
  const auto c = composition_op(PolySelfMap<Complex>::linear({{lambda, 0.0}, {0.0, lambda}}), basis);
  std::vector<ProbeVector<Complex>> xs;
  for (std::size_t i = 1; i < basis.block_size(2); ++i) xs.push_back({basis[i].to_string(), monomial_vector<Complex>(basis[i], basis)});
  const auto r = cesaro_probe(c, xs, 6);
  for (const auto& probe : r.probes)
    for (const auto& p : probe.values) {
      Complex sum = 0.0;
      for (int j = 1; j <= p.m; ++j) sum += std::pow(lambda, j);
      EXPECT_NEAR(p.value, std::abs(sum) / p.m, 1e-12);
      EXPECT_LE(p.value, 2.0 / (p.m * std::abs(1.0 - lambda)) + 1e-12);
    }
}

TEST(Probes, DefaultVectorsAndWeakProxy) {
  const auto basis = enumerate_basis(2, 6);
  EXPECT_EQ(default_test_vectors<Q>(basis).size(), basis.block_size(2) + 2);
  const auto t = toeplitz_op(SphereSymbol<Q>::term(MultiIndex{0, 1}, MultiIndex{1, 0}), basis);
  const auto r = weak_probe(t, 3);
  EXPECT_EQ(r.series.size(), 3u);
  EXPECT_THROW(sat_probe(t, default_test_vectors<Q>(basis), 7), TrustExhausted);
}

TEST(LowerBound, MatchesClosedFormForRotation) {
  const Complex lambda = std::polar(1.0, std::numbers::pi / 4);
  const auto phi = PolySelfMap<Complex>::linear({{lambda, 0.0}, {0.0, lambda}});
  const auto f = SphereSymbol<Complex>::term(MultiIndex{1, 0}, MultiIndex{1, 0});
  const auto qs = lower_bound_probe(f, phi, {1.0, 0.0}, {lambda, 0.0}, 16);
  for (int s = 1; s <= 16; ++s) {
    EXPECT_NEAR(qs[static_cast<std::size_t>(s - 1)], rotation_lower_bound_oracle(s), 1e-12) << s;
    if (s > 1) {
      EXPECT_GE(qs[static_cast<std::size_t>(s - 1)], qs[static_cast<std::size_t>(s - 2)]);
    }
  }
  EXPECT_NEAR(qs[11], 85.0 / 98.0, 1e-12);
  EXPECT_THROW(lower_bound_probe(f, phi, {1.0, 0.0}, {1.0, 0.0}, 4), InputError);
}

TEST(LowerBound, ExactArithmeticAgrees) {
  const auto phi = PolySelfMap<Q>::linear({{q(1), q(0)}, {q(0), q(1, 2)}});
  const auto f = pairing_symbol(phi, PolySelfMap<Q>::identity(2));
  const auto exact = lower_bound_probe(f, phi, {q(1), q(0)}, {q(1), q(0)}, 10);
  const auto fl = lower_bound_probe(f.cast<Complex>(), phi.cast<Complex>(), {1.0, 0.0}, {1.0, 0.0}, 10);
  for (std::size_t i = 0; i < exact.size(); ++i) EXPECT_NEAR(exact[i], fl[i], 1e-12);
}

TEST(LinearClassifier, SpectralRadiusDecides) {
  const auto uat = linear_uat_classifier(to_eigen<Q>({{q(1, 2), q(0)}, {q(0), q(1, 3)}}));
  EXPECT_TRUE(uat.uat);
  EXPECT_NEAR(uat.spectral_radius, 0.5, 1e-14);
  EXPECT_FALSE(uat.certificate.has_value());

  const auto non = linear_uat_classifier(to_eigen<Q>({{q(1), q(0)}, {q(0), q(1, 2)}}));
  EXPECT_FALSE(non.uat);
  ASSERT_TRUE(non.certificate.has_value());
  EXPECT_TRUE(non.certificate->verified);
  EXPECT_LE(non.certificate->residual, 1e-10);
  EXPECT_NEAR(std::abs(non.certificate->lambda - 1.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(non.certificate->zeta[0]), 1.0, 1e-14);

  // A rotation block has a unimodular complex pair.
  Eigen::MatrixXcd rot(2, 2);
  rot << 0.0, -1.0, 1.0, 0.0;
  const auto r = linear_uat_classifier(rot);
  EXPECT_FALSE(r.uat);
  EXPECT_NEAR(std::abs(r.certificate->lambda), 1.0, 1e-12);

  EXPECT_THROW(linear_uat_classifier(Eigen::MatrixXcd::Identity(2, 2)), InputError);
  EXPECT_THROW(linear_uat_classifier(Eigen::MatrixXcd::Identity(2, 2) * 1.5), InputError);
}
