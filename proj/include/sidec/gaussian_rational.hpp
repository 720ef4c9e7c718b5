#pragma once

#include <compare>
#include <concepts>
#include <string>

#include "sidec/rational.hpp"

namespace sidec {

/// Exact complex scalar re + im*i with rational parts. Both parts are kept
/// in canonical reduced form, so equality is structural.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(Rational re) : re_(std::move(re)) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}
  template <std::integral T>
  GaussianRational(T re) : re_(static_cast<long>(re)) {}  // NOLINT(google-explicit-constructor)

  static GaussianRational imaginary_unit() { return {Rational(0), Rational(1)}; }

  const Rational& real() const { return re_; }
  const Rational& imag() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  /// re^2 + im^2, exact. Moduli themselves are never formed.
  Rational modulus_squared() const { return re_ * re_ + im_ * im_; }
  GaussianRational conj() const { return {re_, -im_}; }

  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  /// Throws DivisionByZero when o == 0.
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  GaussianRational operator-() const { return {-re_, -im_}; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  /// Lexicographic (re, im). Only used to give spectral values a fixed order.
  friend std::strong_ordering operator<=>(const GaussianRational& a, const GaussianRational& b) {
    if (int c = cmp(a.re_, b.re_); c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    int c = cmp(a.im_, b.im_);
    if (c == 0) return std::strong_ordering::equal;
    return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }

  /// "3/4", "-1/2i", "1+2/3i", "0".
  std::string to_string() const;

 private:
  Rational re_{0};
  Rational im_{0};
};

inline Rational modulus_squared(const GaussianRational& z) { return z.modulus_squared(); }

}  // namespace sidec
