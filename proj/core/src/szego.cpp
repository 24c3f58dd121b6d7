#include "qdf/szego.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>

#include "linalg.hpp"
#include "qdf/error.hpp"
#include "qdf/op_core.hpp"

namespace qdf {

namespace {

constexpr double kSymmetryTolerance = 1e-14;
constexpr double kCompressionTolerance = 1e-10;

// Neumaier-compensated sum.
double compensated_sum(const std::vector<double>& values) {
  double sum = 0.0;
  double carry = 0.0;
  for (double v : values) {
    const double t = sum + v;
    carry += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  return sum + carry;
}

double gap_at(const SymbolPolynomial& s, unsigned p, Index n) {
  return std::abs(moment(empirical_spectrum(s.toeplitz(), n), p) - symbol_moment(s, p));
}

}  // namespace

SymbolPolynomial::SymbolPolynomial(std::map<long, Complex> coefficients) : coefficients_(std::move(coefficients)) {
  for (const auto& [k, c] : coefficients_) {
    const auto mirror = coefficients_.find(-k);
    const Complex partner = mirror == coefficients_.end() ? Complex{} : mirror->second;
    if (std::abs(partner - std::conj(c)) > kSymmetryTolerance) {
      fail(ErrorCode::InvalidArgument, "symbol coefficients are not Hermitian symmetric at offset " + std::to_string(k));
    }
  }
}

SymbolPolynomial SymbolPolynomial::of(const OperatorSpec& spec) {
  if (spec.kind() != OperatorKind::toeplitz) fail(ErrorCode::InvalidArgument, "symbol needs a toeplitz operator");
  return SymbolPolynomial(spec.band());
}

double SymbolPolynomial::sup_bound() const noexcept {
  double total = 0.0;
  for (const auto& [k, c] : coefficients_) total += std::abs(c);
  return total;
}

OperatorSpec SymbolPolynomial::toeplitz() const { return OperatorSpec::toeplitz(coefficients_); }

EmpiricalSpectralMeasure empirical_spectrum(const OperatorSpec& spec, Index n) {
  const Eigen::MatrixXcd m = compress(spec, n).dense();
  const double defect = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (defect > kCompressionTolerance) {
    fail(ErrorCode::NonHermitianCompression, "compression deviates from its adjoint by " + std::to_string(defect));
  }
  const Eigen::VectorXd w = linalg::hermitian_eigenvalues(0.5 * (m + m.adjoint()));
  EmpiricalSpectralMeasure out{n, std::vector<double>(w.begin(), w.end())};
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
  return out;
}

double moment(const EmpiricalSpectralMeasure& m, unsigned p) {
  if (m.n < 1) fail(ErrorCode::InvalidArgument, "empty spectral measure");
  std::vector<double> powers;
  powers.reserve(m.eigenvalues.size());
  for (double x : m.eigenvalues) powers.push_back(std::pow(x, static_cast<double>(p)));
  return compensated_sum(powers) / static_cast<double>(m.n);
}

double symbol_moment(const SymbolPolynomial& s, unsigned p) {
  std::map<long, Complex> power{{0, 1.0}};
  for (unsigned step = 0; step < p; ++step) {
    std::map<long, Complex> next;
    for (const auto& [a, x] : power) {
      for (const auto& [b, y] : s.coefficients()) next[a + b] += x * y;
    }
    power = std::move(next);
  }
  const auto it = power.find(0);
  return it == power.end() ? 0.0 : it->second.real();
}

double roundoff_allowance(const SymbolPolynomial& s, unsigned p) {
  return 64.0 * DBL_EPSILON * std::pow(std::max(1.0, s.sup_bound()), static_cast<double>(p));
}

SzegoComparison szego_compare(const OperatorSpec& spec, std::span<const Index> ns, std::span<const unsigned> ps) {
  const SymbolPolynomial symbol = SymbolPolynomial::of(spec);
  SzegoComparison out;
  std::map<unsigned, double> previous;
  for (unsigned p : ps) out.monotone_gap[p] = true;
  for (Index n : ns) {
    const EmpiricalSpectralMeasure measure = empirical_spectrum(spec, n);
    for (unsigned p : ps) {
      SzegoRow row{n, p, moment(measure, p), symbol_moment(symbol, p), 0.0};
      row.gap = std::abs(row.empirical - row.reference);
      if (const auto it = previous.find(p); it != previous.end()) {
        if (row.gap > it->second + roundoff_allowance(symbol, p)) out.monotone_gap[p] = false;
      }
      previous[p] = row.gap;
      out.rows.push_back(row);
    }
  }
  return out;
}

GapFit fit_gap_constant(const SymbolPolynomial& s, unsigned p, std::span<const Index> fit_ns, Index validation_n) {
  if (fit_ns.empty()) fail(ErrorCode::InvalidArgument, "no fit sizes");
  GapFit fit;
  for (Index n : fit_ns) fit.constant = std::max(fit.constant, static_cast<double>(n) * gap_at(s, p, n));
  fit.validation_n = validation_n;
  fit.validation_gap = gap_at(s, p, validation_n);
  fit.validation_bound = 1.5 * fit.constant / static_cast<double>(validation_n) + roundoff_allowance(s, p);
  fit.holds = fit.validation_gap <= fit.validation_bound;
  return fit;
}

}  // namespace qdf
