#pragma once

#include <cmath>
#include <cstdint>

#include "hardy/basis.hpp"
#include "hardy/sampling.hpp"
#include "hardy/symbols.hpp"

namespace hardy {

struct McEstimate {
  Complex estimate;
  double std_error = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

namespace detail {

// Streaming mean and variance of complex samples (Welford, pooled over re/im).
class ComplexMoments {
 public:
  void push(Complex x) {
    ++count_;
    const Complex delta = x - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += std::real(std::conj(delta) * (x - mean_));
  }
  Complex mean() const noexcept { return mean_; }
  double std_error() const {
    if (count_ < 2) return 0.0;
    const double var = m2_ / static_cast<double>(count_ - 1);
    return std::sqrt(std::max(var, 0.0) / static_cast<double>(count_));
  }

 private:
  std::size_t count_ = 0;
  Complex mean_{};
  double m2_ = 0.0;
};

inline void require_mc_samples(std::size_t n) {
  if (n < 2) throw InputError("Monte Carlo estimate needs at least two samples");
}

}  // namespace detail

/// Monte Carlo estimate of <f, g>_{L^2(sigma)} = integral of f conj(g).
template <Scalar S>
McEstimate mc_pairing(const SphereSymbol<S>& f, const SphereSymbol<S>& g, std::size_t samples,
                      std::uint64_t seed) {
  if (f.dimension() != g.dimension()) throw InputError("mc_pairing: dimension mismatch");
  detail::require_mc_samples(samples);
  const detail::CompiledSymbol ef(f), eg(g);
  detail::ComplexMoments acc;
  for_each_sphere_sample(f.dimension(), samples, seed,
                         [&](const SpherePoint& z) { acc.push(ef(z) * std::conj(eg(z))); });
  return {acc.mean(), acc.std_error(), samples, seed};
}

/// Monte Carlo estimate of <T_f z^beta, z^gamma> = integral of f z^beta conj(z^gamma).
template <Scalar S>
McEstimate mc_toeplitz_entry(const SphereSymbol<S>& f, const MultiIndex& beta, const MultiIndex& gamma,
                             std::size_t samples, std::uint64_t seed) {
  const int n = f.dimension();
  if (beta.dimension() != n || gamma.dimension() != n) throw InputError("mc_toeplitz_entry: dimension mismatch");
  const auto zero = MultiIndex::zero(n);
  const auto fb = symbol_product(f, SphereSymbol<S>::term(beta, zero));
  return mc_pairing(fb, SphereSymbol<S>::term(gamma, zero), samples, seed);
}

}  // namespace hardy
