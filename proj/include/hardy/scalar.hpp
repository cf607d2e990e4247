#pragma once

#include <gmpxx.h>

#include <complex>
#include <concepts>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

namespace hardy {

using Rational = mpq_class;
using Complex = std::complex<double>;

/// Complex number with arbitrary-precision rational real and imaginary parts.
class ComplexRational {
 public:
  ComplexRational() = default;
  // Parts are canonicalized: mpq_class(a, b) keeps common factors and GMP equality assumes lowest terms.
  ComplexRational(Rational re) : re_(std::move(re)) { re_.canonicalize(); }  // NOLINT(google-explicit-constructor)
  ComplexRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }
  ComplexRational(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  ComplexRational(int v) : re_(v) {}   // NOLINT(google-explicit-constructor)

  const Rational& real() const noexcept { return re_; }
  const Rational& imag() const noexcept { return im_; }

  bool is_zero() const noexcept { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const noexcept { return sgn(im_) == 0; }

  ComplexRational conj() const { return {re_, -im_}; }
  Rational norm() const { return Rational(re_ * re_ + im_ * im_); }

  ComplexRational& operator+=(const ComplexRational& o) {
    re_ += o.re_;
    if (sgn(o.im_) != 0) im_ += o.im_;
    return *this;
  }
  ComplexRational& operator-=(const ComplexRational& o) {
    re_ -= o.re_;
    if (sgn(o.im_) != 0) im_ -= o.im_;
    return *this;
  }
  ComplexRational& operator*=(const ComplexRational& o) {
    if (is_real() && o.is_real()) {
      re_ *= o.re_;
    } else {
      Rational re = re_ * o.re_ - im_ * o.im_;
      Rational im = re_ * o.im_ + im_ * o.re_;
      re_ = std::move(re);
      im_ = std::move(im);
    }
    return *this;
  }
  ComplexRational& operator*=(const Rational& q) {
    re_ *= q;
    if (sgn(im_) != 0) im_ *= q;
    return *this;
  }
  ComplexRational& operator/=(const Rational& q) {
    if (sgn(q) == 0) throw std::domain_error("ComplexRational: division by zero");
    re_ /= q;
    if (sgn(im_) != 0) im_ /= q;
    return *this;
  }
  ComplexRational& operator/=(const ComplexRational& o) {
    if (o.is_real()) return *this /= o.re_;
    Rational d = o.norm();
    *this *= o.conj();
    return *this /= d;
  }

  /// acc += a * b without materialising the product when either factor is real.
  void add_product(const ComplexRational& a, const ComplexRational& b) {
    if (a.is_real() && b.is_real()) {
      tmp_() = a.re_ * b.re_;
      re_ += tmp_();
      return;
    }
    ComplexRational p = a;
    p *= b;
    *this += p;
  }

  friend ComplexRational operator+(ComplexRational a, const ComplexRational& b) { return a += b; }
  friend ComplexRational operator-(ComplexRational a, const ComplexRational& b) { return a -= b; }
  friend ComplexRational operator*(ComplexRational a, const ComplexRational& b) { return a *= b; }
  friend ComplexRational operator/(ComplexRational a, const ComplexRational& b) { return a /= b; }
  friend ComplexRational operator-(const ComplexRational& a) { return {-a.re_, -a.im_}; }
  friend bool operator==(const ComplexRational& a, const ComplexRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  friend std::ostream& operator<<(std::ostream& os, const ComplexRational& z) {
    os << z.re_;
    if (!z.is_real()) os << (sgn(z.im_) < 0 ? " - " : " + ") << abs(z.im_) << "i";
    return os;
  }

 private:
  static Rational& tmp_() {
    thread_local Rational t;
    return t;
  }

  Rational re_{0};
  Rational im_{0};
};

/// The two scalar fields an operator can be built over: exact complex
/// rationals, or IEEE double complex for data with irrational entries.
template <class S>
concept Scalar = std::same_as<S, ComplexRational> || std::same_as<S, Complex>;

template <class S>
inline constexpr bool is_exact_v = std::same_as<S, ComplexRational>;

inline ComplexRational conj(const ComplexRational& z) { return z.conj(); }
inline Complex conj(const Complex& z) { return std::conj(z); }

inline bool is_zero(const ComplexRational& z) noexcept { return z.is_zero(); }
inline bool is_zero(const Complex& z) noexcept { return z == Complex{}; }

inline Complex to_complex(const ComplexRational& z) { return {z.real().get_d(), z.imag().get_d()}; }
inline Complex to_complex(const Complex& z) noexcept { return z; }

inline void add_product(ComplexRational& acc, const ComplexRational& a, const ComplexRational& b) {
  acc.add_product(a, b);
}
inline void add_product(Complex& acc, const Complex& a, const Complex& b) { acc += a * b; }

/// Embeds a rational into scalar type S.
template <Scalar S>
S from_rational(const Rational& q) {
  if constexpr (is_exact_v<S>) {
    return S(q);
  } else {
    return S(q.get_d(), 0.0);
  }
}

/// Converts between scalar types; exact -> float is the only cross-type direction.
template <Scalar To, Scalar From>
To scalar_cast(const From& z) {
  if constexpr (std::same_as<To, From>) {
    return z;
  } else {
    static_assert(is_exact_v<From>, "float scalars cannot be lifted to exact rationals");
    return to_complex(z);
  }
}

/// Squared modulus as a double (exact inputs are squared exactly first).
inline double abs_sq(const ComplexRational& z) { return z.norm().get_d(); }
inline double abs_sq(const Complex& z) { return std::norm(z); }

inline std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace hardy
