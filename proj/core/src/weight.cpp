#include "qdf/weight.hpp"

#include <charconv>
#include <cmath>

#include "qdf/error.hpp"

namespace qdf {

namespace {

double parse_number(std::string_view text, std::string_view context) {
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
    fail(ErrorCode::InvalidArgument,
         "bad numeric parameter '" + std::string(text) + "' in weight '" + std::string(context) + "'");
  }
  return value;
}

std::string format_number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

// Values of n below 2^53 are exact as doubles; beyond that go through the
// mantissa/exponent split so nothing overflows prematurely.
bool small(const BigIndex& n) { return n < BigIndex(1L << 53); }

}  // namespace

WeightFormula::WeightFormula(Kind kind, double param) : kind_(kind), param_(param) {
  if (!std::isfinite(param)) fail(ErrorCode::InvalidArgument, "weight parameter must be finite");
}

WeightFormula WeightFormula::parse(std::string_view text) {
  if (text == "log") return log();
  if (text == "sqrt") return sqrt();
  if (text == "linear") return linear();
  if (text == "inverse") return inverse();
  if (text.starts_with("const:")) return constant(parse_number(text.substr(6), text));
  if (text.starts_with("pow:")) return power(parse_number(text.substr(4), text));
  fail(ErrorCode::InvalidArgument, "unknown weight formula '" + std::string(text) + "'");
}

std::string WeightFormula::to_string() const {
  switch (kind_) {
    case Kind::log: return "log";
    case Kind::sqrt: return "sqrt";
    case Kind::linear: return "linear";
    case Kind::inverse: return "inverse";
    case Kind::constant: return "const:" + format_number(param_);
    case Kind::power: return "pow:" + format_number(param_);
  }
  return {};
}

double WeightFormula::operator()(const BigIndex& n) const {
  if (n < 1) fail(ErrorCode::WeightUndefined, "weight index must be >= 1, got " + qdf::to_string(n));
  double value = 0.0;
  if (small(n)) {
    const double x = n.get_d();
    switch (kind_) {
      case Kind::log: value = std::log(x); break;
      case Kind::sqrt: value = std::sqrt(x); break;
      case Kind::linear: value = x; break;
      case Kind::inverse: value = 1.0 / x; break;
      case Kind::constant: value = param_; break;
      case Kind::power: value = std::pow(x, param_); break;
    }
  } else {
    const double ln = big_log(n);
    switch (kind_) {
      case Kind::log: value = ln; break;
      case Kind::sqrt: value = std::exp(0.5 * ln); break;
      case Kind::linear: value = big_to_double(n); break;
      case Kind::inverse: value = std::exp(-ln); break;
      case Kind::constant: value = param_; break;
      case Kind::power: value = std::exp(param_ * ln); break;
    }
  }
  if (!std::isfinite(value)) {
    fail(ErrorCode::WeightUndefined,
         "weight '" + to_string() + "' is not finite at n = " + qdf::to_string(n));
  }
  return value;
}

double WeightFormula::operator()(Index n) const { return (*this)(to_big(n)); }

}  // namespace qdf
