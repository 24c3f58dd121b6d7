#pragma once

#include <string>
#include <string_view>

#include "qdf/big_index.hpp"

namespace qdf {

/// Closed vocabulary of weight sequences w_1, w_2, ... used by shifts and
/// diagonals:
///
///   "log"      w_n = ln n          (so w_1 = 0)
///   "sqrt"     w_n = sqrt(n)
///   "linear"   w_n = n
///   "inverse"  w_n = 1/n
///   "const:c"  w_n = c
///   "pow:a"    w_n = n^a
class WeightFormula {
 public:
  enum class Kind { log, sqrt, linear, inverse, constant, power };

  WeightFormula() = default;
  WeightFormula(Kind kind, double param = 0.0);

  static WeightFormula log() { return {Kind::log}; }
  static WeightFormula sqrt() { return {Kind::sqrt}; }
  static WeightFormula linear() { return {Kind::linear}; }
  static WeightFormula inverse() { return {Kind::inverse}; }
  static WeightFormula constant(double c) { return {Kind::constant, c}; }
  static WeightFormula power(double a) { return {Kind::power, a}; }

  /// Throws InvalidArgument on an unknown name.
  static WeightFormula parse(std::string_view text);

  [[nodiscard]] Kind kind() const noexcept { return kind_; }
  [[nodiscard]] double param() const noexcept { return param_; }
  [[nodiscard]] std::string to_string() const;

  /// Throws WeightUndefined for n < 1 or a non-finite value.
  [[nodiscard]] double operator()(const BigIndex& n) const;
  [[nodiscard]] double operator()(Index n) const;

  friend bool operator==(const WeightFormula&, const WeightFormula&) = default;

 private:
  Kind kind_ = Kind::constant;
  double param_ = 0.0;
};

}  // namespace qdf
