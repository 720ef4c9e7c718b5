#include "sidec/gaussian_rational.hpp"

#include "sidec/errors.hpp"

namespace sidec {

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  if (sgn(o.im_) != 0) im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  if (sgn(o.im_) != 0) im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  if (is_real() && o.is_real()) {
    re_ *= o.re_;
    return *this;
  }
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  if (o.is_zero()) throw DivisionByZero();
  if (o.is_real()) {
    re_ /= o.re_;
    if (sgn(im_) != 0) im_ /= o.re_;
    return *this;
  }
  Rational d = o.modulus_squared();
  *this *= o.conj();
  re_ /= d;
  im_ /= d;
  return *this;
}

std::string GaussianRational::to_string() const {
  if (sgn(im_) == 0) return sidec::to_string(re_);
  std::string im_text = sidec::to_string(abs(im_)) + "i";
  if (sgn(re_) == 0) return (sgn(im_) < 0 ? "-" : "") + im_text;
  return sidec::to_string(re_) + (sgn(im_) < 0 ? "-" : "+") + im_text;
}

}  // namespace sidec
