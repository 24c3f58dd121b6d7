#include "qdf/gaussian_rational.hpp"

#include <charconv>
#include <cmath>
#include <regex>

#include "qdf/error.hpp"

namespace qdf {

std::string GaussianRational::to_string() const {
  const bool has_re = sgn(re_) != 0;
  const bool has_im = sgn(im_) != 0;
  if (!has_im) return re_.get_str();
  std::string imag;
  if (im_ == 1) {
    imag = "i";
  } else if (im_ == -1) {
    imag = "-i";
  } else {
    imag = im_.get_str() + "*i";
  }
  if (!has_re) return imag;
  return "(" + re_.get_str() + (sgn(im_) > 0 ? "+" : "") + imag + ")";
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  const mpq_class denom = o.re_ * o.re_ + o.im_ * o.im_;
  if (sgn(denom) == 0) fail(ErrorCode::InvalidArgument, "division by zero");
  mpq_class re = (re_ * o.re_ + im_ * o.im_) / denom;
  mpq_class im = (im_ * o.re_ - re_ * o.im_) / denom;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

mpq_class parse_rational(const std::string& text) {
  static const std::regex fraction(R"(([+-]?\d+)/(\d+))");
  static const std::regex decimal(R"(([+-]?)(\d*)(?:\.(\d*))?(?:[eE]([+-]?\d+))?)");
  std::smatch m;
  if (std::regex_match(text, m, fraction)) {
    const mpz_class den(m[2].str());
    if (den == 0) fail(ErrorCode::ParseError, "zero denominator in '" + text + "'");
    mpq_class q(mpz_class(m[1].str()), den);
    q.canonicalize();
    return q;
  }
  if (std::regex_match(text, m, decimal) && (m[2].length() > 0 || m[3].length() > 0)) {
    const std::string digits = m[2].str() + m[3].str();
    long exponent = -static_cast<long>(m[3].length());
    if (m[4].matched) exponent += std::stol(m[4].str());
    if (std::labs(exponent) > 4096) fail(ErrorCode::ParseError, "exponent out of range in '" + text + "'");
    mpz_class num(digits.empty() ? "0" : digits);
    if (m[1].str() == "-") num = -num;
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
    mpq_class q = exponent >= 0 ? mpq_class(num * scale) : mpq_class(num, scale);
    q.canonicalize();
    return q;
  }
  fail(ErrorCode::ParseError, "not a number: '" + text + "'");
}

mpq_class rational_from_double(double x) {
  if (!std::isfinite(x)) fail(ErrorCode::InvalidArgument, "non-finite value has no rational form");
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return parse_rational(std::string(buf, ptr));
}

}  // namespace qdf
