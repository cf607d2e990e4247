#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "hardy/errors.hpp"
#include "hardy/scalar.hpp"

namespace hardy {

using SpherePoint = std::vector<Complex>;

/// Reproducible uniform sampler on the unit sphere of C^n.
///
/// The sample stream is cut into partitions of `kPartitionSize` points.
/// Partition p draws from std::mt19937_64 seeded with
/// std::seed_seq{seed_lo32, seed_hi32, p}; each coordinate is a standard
/// complex Gaussian built by Box-Muller from two 53-bit uniforms
///   u1 = ((x >> 11) + 1) * 2^-53,  u2 = (y >> 11) * 2^-53,
///   re = sqrt(-2 ln u1) cos(2 pi u2),  im = sqrt(-2 ln u1) sin(2 pi u2),
/// and the vector is normalized. Partitions are independent, so the stream
/// can be split across workers without changing any sample.
class SphereSampler {
 public:
  static constexpr std::size_t kPartitionSize = 1u << 16;

  SphereSampler(int n, std::uint64_t seed) : n_(n), seed_(seed) {
    if (n < 1) throw InputError("sphere sampler: dimension must be >= 1");
    start_partition(0);
  }

  int dimension() const noexcept { return n_; }

  SpherePoint next() {
    if (in_partition_ == kPartitionSize) start_partition(partition_ + 1);
    ++in_partition_;
    SpherePoint z(static_cast<std::size_t>(n_));
    double norm_sq = 0.0;
    for (auto& c : z) {
      const double u1 = static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
      const double u2 = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
      const double r = std::sqrt(-2.0 * std::log(u1));
      const double t = 2.0 * std::numbers::pi * u2;
      c = Complex(r * std::cos(t), r * std::sin(t));
      norm_sq += std::norm(c);
    }
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (auto& c : z) c *= inv;
    return z;
  }

 private:
  void start_partition(std::uint64_t p) {
    partition_ = p;
    in_partition_ = 0;
    std::seed_seq seq{static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32),
                      static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(p >> 32)};
    engine_.seed(seq);
  }

  int n_;
  std::uint64_t seed_;
  std::uint64_t partition_ = 0;
  std::size_t in_partition_ = 0;
  std::mt19937_64 engine_;
};

/// N i.i.d. uniform points on the unit sphere of C^n.
inline std::vector<SpherePoint> sphere_sample(int n, std::size_t count, std::uint64_t seed) {
  if (count < 1) throw InputError("sphere_sample: need at least one sample");
  SphereSampler sampler(n, seed);
  std::vector<SpherePoint> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(sampler.next());
  return out;
}

/// Streams N sphere samples through `visit` without storing them.
template <class Visit>
void for_each_sphere_sample(int n, std::size_t count, std::uint64_t seed, Visit&& visit) {
  SphereSampler sampler(n, seed);
  for (std::size_t i = 0; i < count; ++i) visit(sampler.next());
}

inline double euclidean_norm(const SpherePoint& z) {
  double s = 0.0;
  for (const auto& c : z) s += std::norm(c);
  return std::sqrt(s);
}

}  // namespace hardy
