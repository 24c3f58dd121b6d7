#pragma once

#include <string>

#include <gmpxx.h>

#include "qdf/big_index.hpp"

namespace qdf {

/// Exact a + b i with rational a, b.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(mpq_class re, mpq_class im = 0) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }
  GaussianRational(long re) : re_(re), im_(0) {}

  static GaussianRational i() { return {0, 1}; }

  [[nodiscard]] const mpq_class& real() const noexcept { return re_; }
  [[nodiscard]] const mpq_class& imag() const noexcept { return im_; }
  [[nodiscard]] bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  [[nodiscard]] GaussianRational conj() const { return {re_, -im_}; }
  [[nodiscard]] Complex to_complex() const { return {re_.get_d(), im_.get_d()}; }
  /// "3/2", "-i", "1/2*i", "(1-2*i)".
  [[nodiscard]] std::string to_string() const;

  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  /// InvalidArgument on division by zero.
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re_, -a.im_}; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

 private:
  mpq_class re_;
  mpq_class im_;
};

/// Exact value of a decimal or fraction literal: "2", "-0.25", "3/4", "1e-3".
mpq_class parse_rational(const std::string& text);
/// Exact rational equal to the shortest decimal that round-trips `x`.
mpq_class rational_from_double(double x);

}  // namespace qdf
