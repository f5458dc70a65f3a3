#pragma once

#include <gmpxx.h>

#include <ostream>
#include <string>
#include <utility>

#include "crtrans/errors.hpp"

namespace crtrans {

/// Exact element of Q(i): a pair of GMP rationals kept in canonical form.
class GaussRat {
 public:
  GaussRat() = default;
  GaussRat(long value) : re_(value), im_(0) {}  // NOLINT(google-explicit-constructor)
  GaussRat(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }
  explicit GaussRat(mpq_class re) : GaussRat(std::move(re), mpq_class(0)) {}

  static GaussRat i() { return {mpq_class(0), mpq_class(1)}; }
  static GaussRat ratio(long num, long den) { return GaussRat(mpq_class(num, den)); }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_imaginary() const { return sgn(re_) == 0; }

  GaussRat conj() const { return {re_, mpq_class(-im_)}; }
  mpq_class norm() const { return mpq_class(re_ * re_ + im_ * im_); }

  GaussRat operator-() const { return {mpq_class(-re_), mpq_class(-im_)}; }

  GaussRat& operator+=(const GaussRat& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussRat& operator-=(const GaussRat& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussRat& operator*=(const GaussRat& o) {
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class m = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(m);
    return *this;
  }
  GaussRat& operator/=(const GaussRat& o) {
    if (o.is_zero()) throw DivisionByZero();
    mpq_class d = o.norm();
    mpq_class r = (re_ * o.re_ + im_ * o.im_) / d;
    mpq_class m = (im_ * o.re_ - re_ * o.im_) / d;
    re_ = std::move(r);
    im_ = std::move(m);
    return *this;
  }

  friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
  friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
  friend GaussRat operator*(GaussRat a, const GaussRat& b) { return a *= b; }
  friend GaussRat operator/(GaussRat a, const GaussRat& b) { return a /= b; }

  friend bool operator==(const GaussRat& a, const GaussRat& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }

  GaussRat pow(unsigned e) const {
    GaussRat result(1);
    GaussRat base = *this;
    while (e) {
      if (e & 1u) result *= base;
      base *= base;
      e >>= 1;
    }
    return result;
  }

  // "3/4", "-i", "2*i", "(1/2 - 3*i)". Parenthesised when both parts are set
  // so the text can be used as a factor and parsed back.
  std::string to_string() const {
    if (is_real()) return re_.get_str();
    std::string imag;
    mpq_class a = abs(im_);
    imag = (a == 1) ? "i" : a.get_str() + "*i";
    if (sgn(re_) == 0) return (sgn(im_) < 0 ? "-" : "") + imag;
    return "(" + re_.get_str() + (sgn(im_) < 0 ? " - " : " + ") + imag + ")";
  }

  friend std::ostream& operator<<(std::ostream& os, const GaussRat& g) {
    return os << g.to_string();
  }

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

}  // namespace crtrans
