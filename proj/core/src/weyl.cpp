#include "qdf/weyl.hpp"

#include <cctype>
#include <cmath>
#include <tuple>

#include "qdf/error.hpp"
#include "qdf/op_core.hpp"

namespace qdf {

namespace {

constexpr unsigned kMaxParsedExponent = 64;

using Word = std::string;  // letters 'p' and 'q', read left to right

std::size_t inversions(const Word& w) {
  std::size_t qs = 0;
  std::size_t count = 0;
  for (char c : w) {
    if (c == 'q') {
      ++qs;
    } else {
      count += qs;
    }
  }
  return count;
}

// Normal form of q^b p^c. Each rewrite qp -> pq + i either keeps the length
// and removes one inversion or shortens the word, so visiting words in
// decreasing (length, inversions) order never revisits a finished word.
WeylElement::Terms reorder(unsigned b, unsigned c) {
  using Key = std::tuple<std::size_t, std::size_t, Word>;
  std::map<Key, GaussianRational, std::greater<>> pending;
  const Word start = Word(b, 'q') + Word(c, 'p');
  pending.emplace(Key{start.size(), inversions(start), start}, GaussianRational(1));

  WeylElement::Terms out;
  auto push = [&pending](Word w, const GaussianRational& coeff) {
    const Key key{w.size(), inversions(w), w};
    auto [it, inserted] = pending.try_emplace(key, coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second.is_zero()) pending.erase(it);
    }
  };
  while (!pending.empty()) {
    auto node = pending.extract(pending.begin());
    const Word& w = std::get<2>(node.key());
    const GaussianRational& coeff = node.mapped();
    const auto pos = w.find("qp");
    if (pos == Word::npos) {
      const auto ps = static_cast<unsigned>(w.find('q') == Word::npos ? w.size() : w.find('q'));
      out[{ps, static_cast<unsigned>(w.size()) - ps}] += coeff;
      continue;
    }
    Word swapped = w;
    swapped[pos] = 'p';
    swapped[pos + 1] = 'q';
    push(std::move(swapped), coeff);
    Word shortened = w;
    shortened.erase(pos, 2);
    push(std::move(shortened), coeff * GaussianRational::i());
  }
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  WeylElement parse() {
    WeylElement out = expression();
    skip_space();
    if (pos_ != text_.size()) error("unexpected '" + std::string(1, text_[pos_]) + "'");
    return out;
  }

 private:
  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorCode::ParseError, what + " at position " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  WeylElement expression() {
    bool negate = false;
    if (accept('-')) {
      negate = true;
    } else {
      accept('+');
    }
    WeylElement out = term();
    if (negate) out = -out;
    while (true) {
      if (accept('+')) {
        out += term();
      } else if (accept('-')) {
        out -= term();
      } else {
        return out;
      }
    }
  }

  WeylElement term() {
    WeylElement out = factor();
    while (true) {
      if (accept('*')) {
        out = multiply(out, factor());
      } else if (accept('/')) {
        const WeylElement divisor = factor();
        if (divisor.degree() != 0 || divisor.is_zero()) error("division by a non-scalar or zero");
        out *= GaussianRational(1) / divisor.coefficient({0, 0});
      } else {
        return out;
      }
    }
  }

  WeylElement factor() {
    const WeylElement base = primary();
    if (!accept('^')) return base;
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) error("expected an exponent");
    const unsigned long e = std::stoul(std::string(text_.substr(start, pos_ - start)));
    if (e > kMaxParsedExponent) error("exponent too large");
    WeylElement out(1);
    for (unsigned long k = 0; k < e; ++k) out = multiply(out, base);
    return out;
  }

  WeylElement primary() {
    skip_space();
    if (pos_ >= text_.size()) error("unexpected end of input");
    const char c = text_[pos_];
    if (c == 'p' || c == 'q' || c == 'i') {
      ++pos_;
      if (c == 'p') return WeylElement::p();
      if (c == 'q') return WeylElement::q();
      return WeylElement(GaussianRational::i());
    }
    if (c == '(') {
      ++pos_;
      WeylElement inner = expression();
      if (!accept(')')) error("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
        ++pos_;
        if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      }
      return WeylElement(GaussianRational(parse_rational(std::string(text_.substr(start, pos_ - start)))));
    }
    error("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string monomial_text(const Monomial& m) {
  std::string out;
  auto append = [&out](char letter, unsigned power) {
    if (power == 0) return;
    if (!out.empty()) out += '*';
    out += letter;
    if (power > 1) out += '^' + std::to_string(power);
  };
  append('p', m.p);
  append('q', m.q);
  return out;
}

}  // namespace

WeylElement::WeylElement(GaussianRational scalar) { add_term({0, 0}, scalar); }

WeylElement WeylElement::monomial(unsigned p_power, unsigned q_power, GaussianRational coefficient) {
  WeylElement out;
  out.add_term({p_power, q_power}, coefficient);
  return out;
}

WeylElement WeylElement::parse(std::string_view text) { return Parser(text).parse(); }

unsigned WeylElement::degree() const noexcept { return terms_.empty() ? 0 : terms_.rbegin()->first.degree(); }

GaussianRational WeylElement::coefficient(Monomial m) const {
  const auto it = terms_.find(m);
  return it == terms_.end() ? GaussianRational{} : it->second;
}

std::string WeylElement::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms_) {
    // Pull a leading minus out of purely real or purely imaginary coefficients.
    const bool negative = (sgn(c.imag()) == 0 && sgn(c.real()) < 0) || (sgn(c.real()) == 0 && sgn(c.imag()) < 0);
    const GaussianRational magnitude = negative ? -c : c;
    if (out.empty()) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    const std::string mono = monomial_text(m);
    if (mono.empty()) {
      out += magnitude.to_string();
    } else if (magnitude == GaussianRational(1)) {
      out += mono;
    } else {
      out += magnitude.to_string() + '*' + mono;
    }
  }
  return out;
}

void WeylElement::add_term(const Monomial& m, const GaussianRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

WeylElement& WeylElement::operator+=(const WeylElement& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

WeylElement& WeylElement::operator-=(const WeylElement& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

WeylElement& WeylElement::operator*=(const GaussianRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

WeylElement multiply(const WeylElement& x, const WeylElement& y) {
  // (p^a q^b)(p^c q^d) = p^a (q^b p^c) q^d.
  std::map<std::pair<unsigned, unsigned>, WeylElement::Terms> memo;
  WeylElement out;
  for (const auto& [mx, cx] : x.terms()) {
    for (const auto& [my, cy] : y.terms()) {
      const GaussianRational coeff = cx * cy;
      auto key = std::make_pair(mx.q, my.p);
      auto it = memo.find(key);
      if (it == memo.end()) it = memo.emplace(key, reorder(mx.q, my.p)).first;
      for (const auto& [mid, cm] : it->second) {
        out += WeylElement::monomial(mx.p + mid.p, mid.q + my.q, coeff * cm);
      }
    }
  }
  return out;
}

WeylElement operator*(const WeylElement& x, const WeylElement& y) { return multiply(x, y); }

WeylElement WeylSubspace::reduce(WeylElement v) const {
  while (!v.is_zero()) {
    const auto& [lead, coeff] = *v.terms().rbegin();
    const auto it = pivots_.find(lead);
    if (it == pivots_.end()) break;
    v -= coeff * it->second;
  }
  return v;
}

bool WeylSubspace::insert(const WeylElement& v) {
  WeylElement r = reduce(v);
  if (r.is_zero()) return false;
  const auto [lead, coeff] = *r.terms().rbegin();
  r *= GaussianRational(1) / coeff;
  pivots_.emplace(lead, std::move(r));
  return true;
}

bool WeylSubspace::contains(const WeylElement& v) const { return reduce(v).is_zero(); }

std::vector<Monomial> level_monomials(unsigned n) {
  std::vector<Monomial> out;
  out.reserve(static_cast<std::size_t>(level_dimension(n)));
  for (unsigned d = 0; d <= n; ++d) {
    for (unsigned k = 0; k <= d; ++k) out.push_back({k, d - k});
  }
  return out;
}

Index level_dimension(unsigned n) { return (Index{n} + 1) * (Index{n} + 2) / 2; }

FoelnerCount foelner_count(const WeylElement& a, unsigned n) {
  WeylSubspace span;
  const auto basis = level_monomials(n);
  for (const auto& m : basis) span.insert(WeylElement::monomial(m.p, m.q));
  for (const auto& m : basis) span.insert(multiply(a, WeylElement::monomial(m.p, m.q)));
  FoelnerCount out;
  out.sum_dimension = span.dimension();
  out.level_dimension = level_dimension(n);
  out.ratio = mpq_class(mpz_class(static_cast<long>(out.sum_dimension)), mpz_class(static_cast<long>(out.level_dimension)));
  out.ratio.canonicalize();
  return out;
}

mpq_class foelner_ratio(const WeylElement& a, unsigned n) { return foelner_count(a, n).ratio; }

AmenabilityWitness amenability_witness(const std::vector<WeylElement>& elements, const mpq_class& epsilon) {
  if (elements.empty()) fail(ErrorCode::InvalidArgument, "need at least one element");
  if (sgn(epsilon) <= 0) fail(ErrorCode::InvalidArgument, "epsilon must be positive");
  AmenabilityWitness out;
  for (const auto& a : elements) out.max_degree = std::max(out.max_degree, a.degree());
  const double growth = std::sqrt(1.0 + epsilon.get_d()) - 1.0;
  out.search_bound = static_cast<unsigned>(std::ceil((out.max_degree + 2.0) / growth));
  const mpq_class limit = 1 + epsilon;

  for (unsigned n = 0; n <= out.search_bound; ++n) {
    std::vector<WitnessRow> rows;
    bool all_within = true;
    for (const auto& a : elements) {
      const FoelnerCount count = foelner_count(a, n);
      all_within = all_within && count.ratio <= limit;
      rows.push_back({a, count.sum_dimension, count.ratio});
    }
    if (all_within || n == out.search_bound) {
      out.n = n;
      out.level_dimension = level_dimension(n);
      out.rows = std::move(rows);
      out.certified = all_within;
      break;
    }
  }
  return out;
}

AmenabilityWitness amenability_witness(const std::vector<WeylElement>& elements, double epsilon) {
  return amenability_witness(elements, rational_from_double(epsilon));
}

Window represent(const WeylElement& x, Index dim) {
  const Index deg = x.degree();
  if (dim <= deg) {
    fail(ErrorCode::DegreeExceedsWindow,
         "window " + std::to_string(dim) + " must exceed the degree " + std::to_string(deg));
  }
  const Index big = dim + deg;
  const Eigen::MatrixXcd p = compress(OperatorSpec::hermite_p(), big).dense();
  const Eigen::MatrixXcd q = compress(OperatorSpec::hermite_q(), big).dense();
  std::vector<Eigen::MatrixXcd> p_pow{Eigen::MatrixXcd::Identity(big, big)};
  std::vector<Eigen::MatrixXcd> q_pow{Eigen::MatrixXcd::Identity(big, big)};
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(big, big);
  for (const auto& [m, c] : x.terms()) {
    while (p_pow.size() <= m.p) p_pow.push_back(p_pow.back() * p);
    while (q_pow.size() <= m.q) q_pow.push_back(q_pow.back() * q);
    sum += c.to_complex() * (p_pow[m.p] * q_pow[m.q]);
  }
  return Window::from_dense(sum.topLeftCorner(dim, dim));
}

OperatorSpec as_operator_spec(const WeylElement& x) {
  if (x.is_zero()) return OperatorSpec::diagonal(WeightFormula::constant(0.0));
  std::vector<OperatorSpec> terms;
  for (const auto& [m, c] : x.terms()) {
    std::vector<OperatorSpec> factors;
    for (unsigned k = 0; k < m.p; ++k) factors.push_back(OperatorSpec::hermite_p());
    for (unsigned k = 0; k < m.q; ++k) factors.push_back(OperatorSpec::hermite_q());
    OperatorSpec body = factors.empty()      ? OperatorSpec::diagonal(WeightFormula::constant(1.0))
                        : factors.size() == 1 ? factors.front()
                                              : OperatorSpec::product(std::move(factors));
    terms.push_back(c == GaussianRational(1) ? body : OperatorSpec::scale(c.to_complex(), std::move(body)));
  }
  return terms.size() == 1 ? terms.front() : OperatorSpec::sum(std::move(terms));
}

}  // namespace qdf
