#include "qdf/operator_spec.hpp"

#include <array>
#include <cmath>

#include "qdf/error.hpp"

namespace qdf {

struct OperatorSpec::Node {
  OperatorKind kind;
  WeightFormula weight;
  std::map<long, Complex> band;
  Complex factor{1.0, 0.0};
  std::vector<OperatorSpec> children;
};

namespace {

constexpr std::array<std::pair<OperatorKind, std::string_view>, 13> kKindNames{{
    {OperatorKind::weighted_shift, "weighted_shift"},
    {OperatorKind::adjoint_weighted_shift, "adjoint_weighted_shift"},
    {OperatorKind::diagonal, "diagonal"},
    {OperatorKind::dilation_shift, "dilation_shift"},
    {OperatorKind::example_A, "example_A"},
    {OperatorKind::toeplitz, "toeplitz"},
    {OperatorKind::hermite_q, "hermite_q"},
    {OperatorKind::hermite_p, "hermite_p"},
    {OperatorKind::creation, "creation"},
    {OperatorKind::annihilation, "annihilation"},
    {OperatorKind::sum, "sum"},
    {OperatorKind::scale, "scale"},
    {OperatorKind::product, "product"},
}};

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
const Complex kI{0.0, 1.0};

double root(const BigIndex& n) { return WeightFormula::sqrt()(n); }

void accumulate(std::map<BigIndex, Complex>& acc, const SparseVector& v, Complex scale) {
  for (const auto& [idx, value] : v) acc[idx] += scale * value;
}

SparseVector flatten(const std::map<BigIndex, Complex>& acc) {
  return SparseVector(acc.begin(), acc.end());
}

bool is_finite(Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

}  // namespace

std::string_view kind_name(OperatorKind kind) noexcept {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::optional<OperatorKind> parse_kind(std::string_view name) noexcept {
  for (const auto& [k, n] : kKindNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

OperatorSpec OperatorSpec::weighted_shift(WeightFormula w) {
  return OperatorSpec(std::make_shared<const Node>(Node{OperatorKind::weighted_shift, w, {}, {1.0, 0.0}, {}}));
}

OperatorSpec OperatorSpec::adjoint_weighted_shift(WeightFormula w) {
  return OperatorSpec(
      std::make_shared<const Node>(Node{OperatorKind::adjoint_weighted_shift, w, {}, {1.0, 0.0}, {}}));
}

OperatorSpec OperatorSpec::diagonal(WeightFormula w) {
  return OperatorSpec(std::make_shared<const Node>(Node{OperatorKind::diagonal, w, {}, {1.0, 0.0}, {}}));
}

OperatorSpec OperatorSpec::dilation_shift(WeightFormula w) {
  return OperatorSpec(std::make_shared<const Node>(Node{OperatorKind::dilation_shift, w, {}, {1.0, 0.0}, {}}));
}

OperatorSpec OperatorSpec::example_a() {
  return OperatorSpec(std::make_shared<const Node>(Node{OperatorKind::example_A, {}, {}, {1.0, 0.0}, {}}));
}

OperatorSpec OperatorSpec::toeplitz(std::map<long, Complex> band) {
  for (const auto& [offset, c] : band) {
    if (!is_finite(c)) fail(ErrorCode::InvalidArgument, "toeplitz coefficient at offset " + std::to_string(offset) + " is not finite");
  }
  return OperatorSpec(
      std::make_shared<const Node>(Node{OperatorKind::toeplitz, {}, std::move(band), {1.0, 0.0}, {}}));
}

OperatorSpec OperatorSpec::hermite_q() {
  return OperatorSpec(std::make_shared<const Node>(Node{OperatorKind::hermite_q, {}, {}, {1.0, 0.0}, {}}));
}

OperatorSpec OperatorSpec::hermite_p() {
  return OperatorSpec(std::make_shared<const Node>(Node{OperatorKind::hermite_p, {}, {}, {1.0, 0.0}, {}}));
}

OperatorSpec OperatorSpec::creation() {
  return OperatorSpec(std::make_shared<const Node>(Node{OperatorKind::creation, {}, {}, {1.0, 0.0}, {}}));
}

OperatorSpec OperatorSpec::annihilation() {
  return OperatorSpec(std::make_shared<const Node>(Node{OperatorKind::annihilation, {}, {}, {1.0, 0.0}, {}}));
}

OperatorSpec OperatorSpec::sum(std::vector<OperatorSpec> terms) {
  if (terms.empty()) fail(ErrorCode::InvalidArgument, "sum needs at least one term");
  return OperatorSpec(std::make_shared<const Node>(Node{OperatorKind::sum, {}, {}, {1.0, 0.0}, std::move(terms)}));
}

OperatorSpec OperatorSpec::scale(Complex factor, OperatorSpec operand) {
  if (!is_finite(factor)) fail(ErrorCode::InvalidArgument, "scale factor is not finite");
  return OperatorSpec(
      std::make_shared<const Node>(Node{OperatorKind::scale, {}, {}, factor, {std::move(operand)}}));
}

OperatorSpec OperatorSpec::product(std::vector<OperatorSpec> factors) {
  if (factors.empty()) fail(ErrorCode::InvalidArgument, "product needs at least one factor");
  return OperatorSpec(
      std::make_shared<const Node>(Node{OperatorKind::product, {}, {}, {1.0, 0.0}, std::move(factors)}));
}

OperatorKind OperatorSpec::kind() const noexcept { return node_->kind; }

const WeightFormula& OperatorSpec::weight() const {
  switch (node_->kind) {
    case OperatorKind::weighted_shift:
    case OperatorKind::adjoint_weighted_shift:
    case OperatorKind::diagonal:
    case OperatorKind::dilation_shift:
      return node_->weight;
    default:
      fail(ErrorCode::InvalidArgument, std::string(kind_name(node_->kind)) + " has no weight formula");
  }
}

const std::map<long, Complex>& OperatorSpec::band() const { return node_->band; }
Complex OperatorSpec::factor() const { return node_->factor; }
const std::vector<OperatorSpec>& OperatorSpec::children() const { return node_->children; }

std::optional<Index> OperatorSpec::propagation() const {
  switch (node_->kind) {
    case OperatorKind::diagonal:
      return 0;
    case OperatorKind::weighted_shift:
    case OperatorKind::adjoint_weighted_shift:
    case OperatorKind::example_A:
    case OperatorKind::hermite_q:
    case OperatorKind::hermite_p:
    case OperatorKind::creation:
    case OperatorKind::annihilation:
      return 1;
    case OperatorKind::dilation_shift:
      return std::nullopt;
    case OperatorKind::toeplitz: {
      Index width = 0;
      for (const auto& [offset, c] : node_->band) width = std::max<Index>(width, std::abs(offset));
      return width;
    }
    case OperatorKind::scale:
      return node_->children.front().propagation();
    case OperatorKind::sum:
    case OperatorKind::product: {
      Index total = 0;
      for (const auto& child : node_->children) {
        const auto p = child.propagation();
        if (!p) return std::nullopt;
        total = node_->kind == OperatorKind::sum ? std::max(total, *p) : total + *p;
      }
      return total;
    }
  }
  return std::nullopt;
}

SparseVector OperatorSpec::column(const BigIndex& j) const {
  if (j < 1) fail(ErrorCode::InvalidArgument, "column index must be >= 1");
  const auto& n = *node_;
  switch (n.kind) {
    case OperatorKind::weighted_shift:
      return {{j + 1, n.weight(j)}};
    case OperatorKind::adjoint_weighted_shift:
      if (j == 1) return {};
      return {{j - 1, std::conj(Complex(n.weight(BigIndex(j - 1))))}};
    case OperatorKind::diagonal:
      return {{j, n.weight(j)}};
    case OperatorKind::dilation_shift:
      return {{2 * j, n.weight(j)}};
    case OperatorKind::example_A: {
      const double square = WeightFormula::power(2.0)(j);
      if (mpz_odd_p(j.get_mpz_t())) return {{j, square}, {j + 1, WeightFormula::inverse()(j)}};
      return {{j, square}};
    }
    case OperatorKind::toeplitz: {
      SparseVector out;
      for (const auto& [offset, c] : n.band) {
        BigIndex i = j + offset;
        if (i >= 1) out.emplace_back(std::move(i), c);
      }
      return out;
    }
    case OperatorKind::hermite_q:
    case OperatorKind::hermite_p: {
      const bool is_p = n.kind == OperatorKind::hermite_p;
      SparseVector out;
      if (j > 1) {
        const Complex v = kInvSqrt2 * root(BigIndex(j - 1));
        out.emplace_back(j - 1, is_p ? -kI * v : v);
      }
      const Complex v = kInvSqrt2 * root(j);
      out.emplace_back(j + 1, is_p ? kI * v : v);
      return out;
    }
    case OperatorKind::creation:
      return {{j + 1, root(j)}};
    case OperatorKind::annihilation:
      if (j == 1) return {};
      return {{j - 1, root(BigIndex(j - 1))}};
    case OperatorKind::sum: {
      std::map<BigIndex, Complex> acc;
      for (const auto& term : n.children) accumulate(acc, term.column(j), 1.0);
      return flatten(acc);
    }
    case OperatorKind::scale: {
      auto out = n.children.front().column(j);
      for (auto& entry : out) entry.second *= n.factor;
      return out;
    }
    case OperatorKind::product: {
      // Push e_j through the factors from the right; every intermediate
      // vector has finite support, so no infinite sum is ever formed.
      SparseVector v{{j, 1.0}};
      for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) {
        std::map<BigIndex, Complex> acc;
        for (const auto& [k, coeff] : v) accumulate(acc, it->column(k), coeff);
        v = flatten(acc);
      }
      return v;
    }
  }
  return {};
}

SparseVector OperatorSpec::row(const BigIndex& i) const {
  if (i < 1) fail(ErrorCode::InvalidArgument, "row index must be >= 1");
  const auto& n = *node_;
  switch (n.kind) {
    case OperatorKind::weighted_shift:
      if (i == 1) return {};
      return {{i - 1, n.weight(BigIndex(i - 1))}};
    case OperatorKind::adjoint_weighted_shift:
      return {{i + 1, std::conj(Complex(n.weight(i)))}};
    case OperatorKind::diagonal:
      return {{i, n.weight(i)}};
    case OperatorKind::dilation_shift: {
      if (mpz_odd_p(i.get_mpz_t())) return {};
      BigIndex half = i / 2;
      const double w = n.weight(half);
      return {{std::move(half), w}};
    }
    case OperatorKind::example_A: {
      const double square = WeightFormula::power(2.0)(i);
      if (mpz_even_p(i.get_mpz_t())) {
        BigIndex prev = i - 1;
        const double coupling = WeightFormula::inverse()(prev);
        return {{std::move(prev), coupling}, {i, square}};
      }
      return {{i, square}};
    }
    case OperatorKind::toeplitz: {
      std::map<BigIndex, Complex> acc;
      for (const auto& [offset, c] : n.band) {
        BigIndex j = i - offset;
        if (j >= 1) acc.emplace(std::move(j), c);
      }
      return flatten(acc);
    }
    case OperatorKind::hermite_q:
    case OperatorKind::hermite_p: {
      const bool is_p = n.kind == OperatorKind::hermite_p;
      SparseVector out;
      if (i > 1) {
        const Complex v = kInvSqrt2 * root(BigIndex(i - 1));
        out.emplace_back(i - 1, is_p ? kI * v : v);
      }
      const Complex v = kInvSqrt2 * root(i);
      out.emplace_back(i + 1, is_p ? -kI * v : v);
      return out;
    }
    case OperatorKind::creation:
      if (i == 1) return {};
      return {{i - 1, root(BigIndex(i - 1))}};
    case OperatorKind::annihilation:
      return {{i + 1, root(i)}};
    case OperatorKind::sum: {
      std::map<BigIndex, Complex> acc;
      for (const auto& term : n.children) accumulate(acc, term.row(i), 1.0);
      return flatten(acc);
    }
    case OperatorKind::scale: {
      auto out = n.children.front().row(i);
      for (auto& entry : out) entry.second *= n.factor;
      return out;
    }
    case OperatorKind::product: {
      SparseVector v{{i, 1.0}};
      for (const auto& factor : n.children) {
        std::map<BigIndex, Complex> acc;
        for (const auto& [k, coeff] : v) accumulate(acc, factor.row(k), coeff);
        v = flatten(acc);
      }
      return v;
    }
  }
  return {};
}

bool operator==(const OperatorSpec& a, const OperatorSpec& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.kind == y.kind && x.weight == y.weight && x.band == y.band && x.factor == y.factor &&
         x.children == y.children;
}

}  // namespace qdf
