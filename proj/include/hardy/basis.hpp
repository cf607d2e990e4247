#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "hardy/errors.hpp"
#include "hardy/scalar.hpp"

namespace hardy {

/// Exponent vector of a monomial z^alpha in n complex variables.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> exponents) : exps_(std::move(exponents)) {
    if (exps_.empty()) throw InputError("multi-index must have length >= 1");
    for (int e : exps_)
      if (e < 0) throw InputError("multi-index exponents must be non-negative");
  }
  MultiIndex(std::initializer_list<int> exponents) : MultiIndex(std::vector<int>(exponents)) {}

  static MultiIndex zero(int n) { return MultiIndex(std::vector<int>(check_dim(n), 0)); }
  static MultiIndex unit(int n, int j) {
    std::vector<int> e(check_dim(n), 0);
    e.at(j) = 1;
    return MultiIndex(std::move(e));
  }

  int dimension() const noexcept { return static_cast<int>(exps_.size()); }
  int degree() const noexcept { return std::accumulate(exps_.begin(), exps_.end(), 0); }
  int operator[](int j) const { return exps_[j]; }
  const std::vector<int>& exponents() const noexcept { return exps_; }
  auto begin() const noexcept { return exps_.begin(); }
  auto end() const noexcept { return exps_.end(); }

  MultiIndex operator+(const MultiIndex& o) const {
    require_same_dim(o);
    std::vector<int> e(exps_);
    for (std::size_t j = 0; j < e.size(); ++j) e[j] += o.exps_[j];
    return MultiIndex(std::move(e));
  }

  /// this - o, or nullopt when some component would go negative.
  std::optional<MultiIndex> minus(const MultiIndex& o) const {
    require_same_dim(o);
    std::vector<int> e(exps_);
    for (std::size_t j = 0; j < e.size(); ++j) {
      e[j] -= o.exps_[j];
      if (e[j] < 0) return std::nullopt;
    }
    return MultiIndex(std::move(e));
  }

  MultiIndex plus_unit(int j) const {
    std::vector<int> e(exps_);
    ++e.at(j);
    return MultiIndex(std::move(e));
  }

  bool is_zero() const noexcept {
    return std::all_of(exps_.begin(), exps_.end(), [](int e) { return e == 0; });
  }

  auto operator<=>(const MultiIndex&) const = default;
  bool operator==(const MultiIndex&) const = default;

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t j = 0; j < exps_.size(); ++j) {
      if (j) s += ",";
      s += std::to_string(exps_[j]);
    }
    return s + ")";
  }

 private:
  static int check_dim(int n) {
    if (n < 1) throw InputError("dimension must be >= 1");
    return n;
  }
  void require_same_dim(const MultiIndex& o) const {
    if (o.dimension() != dimension()) throw InputError("multi-index dimension mismatch");
  }

  std::vector<int> exps_;
};

namespace detail {

inline mpz_class factorial(unsigned long k) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), k);
  return r;
}

}  // namespace detail

/// Squared H^2 norm of z^alpha under the normalized surface measure:
/// (n-1)! alpha! / (n-1+|alpha|)!.
inline Rational monomial_norm_sq(const MultiIndex& alpha, int n) {
  if (n < 1 || alpha.dimension() != n) throw InputError("monomial_norm_sq: dimension mismatch");
  mpz_class num = detail::factorial(static_cast<unsigned long>(n - 1));
  for (int e : alpha) num *= detail::factorial(static_cast<unsigned long>(e));
  Rational w(num, detail::factorial(static_cast<unsigned long>(n - 1 + alpha.degree())));
  w.canonicalize();
  return w;
}

namespace detail {

struct BasisData {
  int n = 0;
  int max_degree = 0;
  std::vector<MultiIndex> entries;
  std::vector<int> degrees;
  std::vector<Rational> weights;
  std::vector<std::size_t> block_end;          // block_end[d] = #entries of degree <= d
  std::vector<std::vector<long>> shift;        // shift[i][j] = index of entries[i] + e_j or -1
  std::map<MultiIndex, std::size_t> lookup;
};

// All exponent vectors of total degree d in decreasing lexicographic order.
inline void compositions(int n, int d, std::vector<int>& prefix, std::vector<MultiIndex>& out) {
  if (static_cast<int>(prefix.size()) == n - 1) {
    prefix.push_back(d);
    out.emplace_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int first = d; first >= 0; --first) {
    prefix.push_back(first);
    compositions(n, d - first, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace detail

/// Graded monomial basis {z^alpha : |alpha| <= D} of the truncated Hardy space.
///
/// Entries are sorted by degree, and within a degree by decreasing
/// lexicographic exponent order (z1 before z2). Degree blocks are therefore
/// prefixes of the table. Copies share the same immutable data.
class BasisTable {
 public:
  BasisTable() = default;

  int dimension() const noexcept { return d_->n; }
  int max_degree() const noexcept { return d_->max_degree; }
  std::size_t size() const noexcept { return d_->entries.size(); }

  const MultiIndex& operator[](std::size_t i) const { return d_->entries[i]; }
  const std::vector<MultiIndex>& entries() const noexcept { return d_->entries; }
  int degree(std::size_t i) const { return d_->degrees[i]; }
  const Rational& weight(std::size_t i) const { return d_->weights[i]; }

  std::optional<std::size_t> index_of(const MultiIndex& alpha) const {
    auto it = d_->lookup.find(alpha);
    if (it == d_->lookup.end()) return std::nullopt;
    return it->second;
  }

  /// Number of basis entries with degree <= d (0 for d < 0).
  std::size_t block_size(int d) const {
    if (d < 0) return 0;
    if (d >= max_degree()) return size();
    return d_->block_end[static_cast<std::size_t>(d)];
  }

  /// Index of entries[i] + e_j, or -1 when that leaves the truncation.
  long shifted(std::size_t i, int j) const { return d_->shift[i][static_cast<std::size_t>(j)]; }

  bool operator==(const BasisTable& o) const noexcept {
    return d_ == o.d_ || (d_ && o.d_ && d_->n == o.d_->n && d_->max_degree == o.d_->max_degree);
  }

  bool valid() const noexcept { return static_cast<bool>(d_); }

 private:
  friend BasisTable enumerate_basis(int n, int max_degree);
  explicit BasisTable(std::shared_ptr<const detail::BasisData> d) : d_(std::move(d)) {}

  std::shared_ptr<const detail::BasisData> d_;
};

inline BasisTable enumerate_basis(int n, int max_degree) {
  if (n < 1) throw InputError("enumerate_basis: dimension must be >= 1");
  if (max_degree < 0) throw InputError("enumerate_basis: max degree must be >= 0");
  auto data = std::make_shared<detail::BasisData>();
  data->n = n;
  data->max_degree = max_degree;
  for (int d = 0; d <= max_degree; ++d) {
    std::vector<int> prefix;
    detail::compositions(n, d, prefix, data->entries);
    data->block_end.push_back(data->entries.size());
  }
  const std::size_t size = data->entries.size();
  data->degrees.reserve(size);
  data->weights.reserve(size);
  for (std::size_t i = 0; i < size; ++i) {
    const auto& alpha = data->entries[i];
    data->degrees.push_back(alpha.degree());
    data->weights.push_back(monomial_norm_sq(alpha, n));
    data->lookup.emplace(alpha, i);
  }
  data->shift.assign(size, std::vector<long>(static_cast<std::size_t>(n), -1));
  for (std::size_t i = 0; i < size; ++i) {
    if (data->degrees[i] == max_degree) continue;
    for (int j = 0; j < n; ++j)
      data->shift[i][static_cast<std::size_t>(j)] =
          static_cast<long>(data->lookup.at(data->entries[i].plus_unit(j)));
  }
  return BasisTable(std::move(data));
}

}  // namespace hardy
