#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qdf/gaussian_rational.hpp"
#include "qdf/operator_spec.hpp"
#include "qdf/window.hpp"

namespace qdf {

/// Exponent pair (k, l) of the normally ordered monomial p^k q^l.
struct Monomial {
  unsigned p = 0;
  unsigned q = 0;

  [[nodiscard]] unsigned degree() const noexcept { return p + q; }
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Graded order: by total degree, then by the power of p.
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const noexcept {
    return a.degree() != b.degree() ? a.degree() < b.degree() : a.p < b.p;
  }
};

/// Element of the algebra generated by p, q with qp - pq = i, stored in
/// normal form sum c_{kl} p^k q^l with nonzero coefficients only.
class WeylElement {
 public:
  using Terms = std::map<Monomial, GaussianRational, MonomialOrder>;

  WeylElement() = default;
  WeylElement(GaussianRational scalar);
  static WeylElement monomial(unsigned p_power, unsigned q_power, GaussianRational coefficient = 1);
  static WeylElement p() { return monomial(1, 0); }
  static WeylElement q() { return monomial(0, 1); }
  /// Terms like "2*p^2*q - i*q^3" or "(q*p - p*q)/1"; factors multiply in
  /// the written order. Throws ParseError.
  static WeylElement parse(std::string_view text);

  [[nodiscard]] const Terms& terms() const noexcept { return terms_; }
  [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
  /// Largest k + l; 0 for scalars and the zero element.
  [[nodiscard]] unsigned degree() const noexcept;
  [[nodiscard]] GaussianRational coefficient(Monomial m) const;
  /// Parseable normal form, "0" for zero.
  [[nodiscard]] std::string to_string() const;

  WeylElement& operator+=(const WeylElement& o);
  WeylElement& operator-=(const WeylElement& o);
  WeylElement& operator*=(const GaussianRational& c);

  friend WeylElement operator+(WeylElement a, const WeylElement& b) { return a += b; }
  friend WeylElement operator-(WeylElement a, const WeylElement& b) { return a -= b; }
  friend WeylElement operator-(WeylElement a) { return a *= GaussianRational(-1); }
  friend WeylElement operator*(const GaussianRational& c, WeylElement a) { return a *= c; }
  friend bool operator==(const WeylElement&, const WeylElement&) = default;

 private:
  void add_term(const Monomial& m, const GaussianRational& c);
  Terms terms_;
};

/// Normal form of the product x y.
WeylElement multiply(const WeylElement& x, const WeylElement& y);
WeylElement operator*(const WeylElement& x, const WeylElement& y);

/// Span of a set of elements with exact dimension.
class WeylSubspace {
 public:
  /// Returns true when v enlarged the span.
  bool insert(const WeylElement& v);
  [[nodiscard]] Index dimension() const noexcept { return static_cast<Index>(pivots_.size()); }
  [[nodiscard]] bool contains(const WeylElement& v) const;

 private:
  [[nodiscard]] WeylElement reduce(WeylElement v) const;
  std::map<Monomial, WeylElement, MonomialOrder> pivots_;  // leading monomial -> row with leading coefficient 1
};

/// Monomials p^k q^l with k + l <= n, in (degree, k) order.
std::vector<Monomial> level_monomials(unsigned n);
/// (n + 1)(n + 2) / 2.
Index level_dimension(unsigned n);

struct FoelnerCount {
  Index sum_dimension = 0;  // dim(a V_n + V_n)
  Index level_dimension = 0;
  mpq_class ratio;
};

FoelnerCount foelner_count(const WeylElement& a, unsigned n);
mpq_class foelner_ratio(const WeylElement& a, unsigned n);

struct WitnessRow {
  WeylElement element;
  Index sum_dimension = 0;
  mpq_class ratio;
};

struct AmenabilityWitness {
  unsigned n = 0;
  unsigned search_bound = 0;  // ceil((delta + 2) / (sqrt(1 + eps) - 1))
  unsigned max_degree = 0;
  Index level_dimension = 0;
  std::vector<WitnessRow> rows;
  bool certified = false;
};

/// Smallest n <= search_bound with every ratio <= 1 + epsilon.
AmenabilityWitness amenability_witness(const std::vector<WeylElement>& elements, const mpq_class& epsilon);
AmenabilityWitness amenability_witness(const std::vector<WeylElement>& elements, double epsilon);

/// Matrix of x in the Hermite basis, evaluated on an enlarged window of size
/// N + deg(x) and truncated to N x N. DegreeExceedsWindow unless N > deg(x).
Window represent(const WeylElement& x, Index dim);

/// The same element as a symbolic operator (sum of scaled products of
/// hermite_p and hermite_q).
OperatorSpec as_operator_spec(const WeylElement& x);

}  // namespace qdf
