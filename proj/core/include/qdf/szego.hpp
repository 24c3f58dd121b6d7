#pragma once

#include <map>
#include <span>
#include <vector>

#include "qdf/operator_spec.hpp"

namespace qdf {

/// Eigenvalues of an n x n Hermitian compression, each carrying mass 1/n.
struct EmpiricalSpectralMeasure {
  Index n = 0;
  std::vector<double> eigenvalues;  // ascending, with multiplicity

  [[nodiscard]] double weight() const noexcept { return 1.0 / static_cast<double>(n); }
  [[nodiscard]] double mass() const noexcept { return weight() * static_cast<double>(eigenvalues.size()); }
};

/// Real trigonometric polynomial f(t) = sum_k c_k e^{ikt} with c_{-k} = conj(c_k).
class SymbolPolynomial {
 public:
  /// InvalidArgument unless the coefficients are Hermitian symmetric.
  explicit SymbolPolynomial(std::map<long, Complex> coefficients);
  /// Symbol of a Toeplitz spec; InvalidArgument for any other kind.
  static SymbolPolynomial of(const OperatorSpec& spec);

  [[nodiscard]] const std::map<long, Complex>& coefficients() const noexcept { return coefficients_; }
  /// sum |c_k|, an upper bound for sup |f|.
  [[nodiscard]] double sup_bound() const noexcept;
  [[nodiscard]] OperatorSpec toeplitz() const;

 private:
  std::map<long, Complex> coefficients_;
};

/// NonHermitianCompression unless compress(spec, n) is Hermitian within 1e-10.
EmpiricalSpectralMeasure empirical_spectrum(const OperatorSpec& spec, Index n);

/// (1/n) sum lambda_i^p.
double moment(const EmpiricalSpectralMeasure& m, unsigned p);

/// Constant Fourier coefficient of f^p, by repeated convolution.
double symbol_moment(const SymbolPolynomial& s, unsigned p);

/// Rounding allowance for comparing gaps near zero: 64 eps (sum |c_k|)^p.
double roundoff_allowance(const SymbolPolynomial& s, unsigned p);

struct SzegoRow {
  Index n = 0;
  unsigned p = 0;
  double empirical = 0.0;
  double reference = 0.0;
  double gap = 0.0;
};

struct SzegoComparison {
  std::vector<SzegoRow> rows;             // ordered by n, then p
  std::map<unsigned, bool> monotone_gap;  // gap non-increasing in n (within the allowance), per p
};

SzegoComparison szego_compare(const OperatorSpec& spec, std::span<const Index> ns, std::span<const unsigned> ps);

/// Gap bound C / n with C = max n * gap over the fit sizes, checked at a
/// larger size with factor 1.5 (plus the rounding allowance).
struct GapFit {
  double constant = 0.0;
  Index validation_n = 0;
  double validation_gap = 0.0;
  double validation_bound = 0.0;
  bool holds = false;
};

GapFit fit_gap_constant(const SymbolPolynomial& s, unsigned p, std::span<const Index> fit_ns, Index validation_n);

}  // namespace qdf
