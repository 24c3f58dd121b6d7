#include "qdf/projection_family.hpp"

#include <algorithm>

#include "qdf/error.hpp"

namespace qdf {

namespace {

void require_increasing(const std::vector<Index>& values, Index floor, const char* what) {
  Index prev = floor;
  for (Index v : values) {
    if (v <= prev) fail(ErrorCode::SelectorOutOfRange, std::string(what) + " must be strictly increasing and positive");
    prev = v;
  }
}

}  // namespace

IndexSequence IndexSequence::geometric(Index base) {
  if (base < 2) fail(ErrorCode::InvalidArgument, "geometric selector needs base >= 2");
  return {Rule::geometric, base, 0, {}};
}

IndexSequence IndexSequence::polynomial(Index exponent) {
  if (exponent < 1) fail(ErrorCode::InvalidArgument, "polynomial selector needs exponent >= 1");
  return {Rule::polynomial, exponent, 0, {}};
}

IndexSequence IndexSequence::affine(Index slope, Index offset) {
  if (slope < 1 || slope + offset < 1) fail(ErrorCode::InvalidArgument, "affine selector must be positive and increasing");
  return {Rule::affine, slope, offset, {}};
}

IndexSequence IndexSequence::list(std::vector<Index> values) {
  require_increasing(values, 0, "selector");
  return {Rule::list, 0, 0, std::move(values)};
}

std::optional<Index> IndexSequence::length() const {
  if (rule_ == Rule::list) return static_cast<Index>(values_.size());
  return std::nullopt;
}

BigIndex IndexSequence::operator()(Index n) const {
  if (n < 1) fail(ErrorCode::InvalidArgument, "selector index must be >= 1");
  BigIndex out;
  switch (rule_) {
    case Rule::geometric:
      mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(a_), static_cast<unsigned long>(n));
      return out;
    case Rule::polynomial:
      mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(a_));
      return out;
    case Rule::affine:
      return to_big(a_) * to_big(n) + to_big(b_);
    case Rule::list:
      if (n > static_cast<Index>(values_.size())) {
        fail(ErrorCode::SelectorOutOfRange, "selector has only " + std::to_string(values_.size()) + " terms");
      }
      return to_big(values_[static_cast<std::size_t>(n - 1)]);
  }
  return out;
}

BoundarySequence BoundarySequence::unit() { return {true, {}}; }

BoundarySequence BoundarySequence::list(std::vector<Index> values) {
  if (!values.empty() && values.front() == 0) values.erase(values.begin());
  require_increasing(values, 0, "block boundaries");
  return {false, std::move(values)};
}

std::optional<Index> BoundarySequence::length() const {
  if (unit_) return std::nullopt;
  return static_cast<Index>(values_.size());
}

Index BoundarySequence::operator()(Index n) const {
  if (n < 0) fail(ErrorCode::InvalidArgument, "boundary index must be >= 0");
  if (n == 0 || unit_) return n;
  if (n > static_cast<Index>(values_.size())) {
    fail(ErrorCode::SelectorOutOfRange, "only " + std::to_string(values_.size()) + " block boundaries given");
  }
  return values_[static_cast<std::size_t>(n - 1)];
}

ProjectionFamily ProjectionFamily::canonical() {
  return {FamilyKind::canonical, BoundarySequence::unit(), std::nullopt, nullptr};
}

ProjectionFamily ProjectionFamily::sparse(IndexSequence selector) {
  return {FamilyKind::sparse, BoundarySequence::unit(), std::move(selector), nullptr};
}

ProjectionFamily ProjectionFamily::blocks(BoundarySequence boundaries, std::optional<IndexSequence> selector) {
  if (selector && boundaries.length()) {
    // Every selected block has to exist; an infinite selector runs off the
    // end of any finite boundary list, which is caught per n instead.
    if (const auto len = selector->length()) {
      if (*len > 0 && (*selector)(*len) > to_big(*boundaries.length())) {
        fail(ErrorCode::SelectorOutOfRange, "selector picks a block past the last boundary");
      }
    }
  }
  return {FamilyKind::blocks, std::move(boundaries), std::move(selector), nullptr};
}

ProjectionFamily ProjectionFamily::explicit_bases(std::vector<Eigen::MatrixXcd> bases) {
  if (bases.empty()) fail(ErrorCode::InvalidArgument, "explicit family needs at least one basis");
  const Index dim = bases.front().rows();
  for (const auto& v : bases) {
    if (v.rows() != dim || dim < 1) fail(ErrorCode::InvalidArgument, "explicit bases must share one ambient dimension");
    const Eigen::MatrixXcd gram = v.adjoint() * v;
    const double defect = (gram - Eigen::MatrixXcd::Identity(v.cols(), v.cols())).cwiseAbs().maxCoeff();
    if (v.cols() > 0 && defect > 1e-12) {
      fail(ErrorCode::InvalidArgument, "explicit basis is not orthonormal (defect " + std::to_string(defect) + ")");
    }
  }
  return {FamilyKind::explicit_bases, BoundarySequence::unit(), std::nullopt,
          std::make_shared<const std::vector<Eigen::MatrixXcd>>(std::move(bases))};
}

const std::vector<Eigen::MatrixXcd>& ProjectionFamily::bases() const {
  if (!bases_) fail(ErrorCode::InvalidArgument, "family has no explicit bases");
  return *bases_;
}

Index ProjectionFamily::window_dim() const { return bases().front().rows(); }

std::optional<Index> ProjectionFamily::length() const {
  switch (kind_) {
    case FamilyKind::canonical:
      return std::nullopt;
    case FamilyKind::sparse:
      return selector_->length();
    case FamilyKind::blocks:
      if (selector_) {
        // Count selected blocks that exist.
        const auto blocks = boundaries_.length();
        if (!blocks) return selector_->length();
        Index n = 0;
        while ((!selector_->length() || n < *selector_->length()) && (*selector_)(n + 1) <= to_big(*blocks)) ++n;
        return n;
      }
      return boundaries_.length();
    case FamilyKind::explicit_bases:
      return static_cast<Index>(bases_->size());
  }
  return std::nullopt;
}

void ProjectionFamily::check_n(Index n) const {
  if (n < 1) fail(ErrorCode::InvalidArgument, "projection index must be >= 1");
  if (kind_ == FamilyKind::explicit_bases && n > static_cast<Index>(bases_->size())) {
    fail(ErrorCode::SelectorOutOfRange, "explicit family has only " + std::to_string(bases_->size()) + " projections");
  }
}

Index ProjectionFamily::rank(Index n) const {
  check_n(n);
  switch (kind_) {
    case FamilyKind::canonical:
    case FamilyKind::sparse:
      if (kind_ == FamilyKind::sparse) (void)(*selector_)(n);
      return n;
    case FamilyKind::blocks: {
      if (!selector_) return boundaries_(n);
      Index total = 0;
      for (const auto& iv : coordinates(n)) total += to_index(BigIndex(iv.hi - iv.lo + 1));
      return total;
    }
    case FamilyKind::explicit_bases:
      return (*bases_)[static_cast<std::size_t>(n - 1)].cols();
  }
  return 0;
}

std::vector<CoordinateInterval> ProjectionFamily::coordinates(Index n) const {
  check_n(n);
  std::vector<CoordinateInterval> out;
  auto append = [&out](BigIndex lo, BigIndex hi) {
    if (!out.empty() && out.back().hi + 1 >= lo) {
      out.back().hi = std::max(out.back().hi, hi);
    } else {
      out.push_back({std::move(lo), std::move(hi)});
    }
  };
  switch (kind_) {
    case FamilyKind::canonical:
      out.push_back({1, to_big(n)});
      break;
    case FamilyKind::sparse:
      out.reserve(static_cast<std::size_t>(n));
      for (Index m = 1; m <= n; ++m) {
        BigIndex k = (*selector_)(m);
        append(k, k);
      }
      break;
    case FamilyKind::blocks:
      if (!selector_) {
        out.push_back({1, to_big(boundaries_(n))});
        break;
      }
      for (Index m = 1; m <= n; ++m) {
        const BigIndex k = (*selector_)(m);
        if (boundaries_.is_unit()) {
          append(k, k);
          continue;
        }
        if (!fits_index(k) || k > to_big(*boundaries_.length())) {
          fail(ErrorCode::SelectorOutOfRange, "selector picks block " + to_string(k) + " past the last boundary");
        }
        const Index block = to_index(k);
        append(to_big(boundaries_(block - 1) + 1), to_big(boundaries_(block)));
      }
      break;
    case FamilyKind::explicit_bases:
      fail(ErrorCode::InvalidArgument, "explicit families have no coordinate description");
  }
  return out;
}

BigIndex ProjectionFamily::max_coordinate(Index n) const {
  if (kind_ == FamilyKind::explicit_bases) {
    check_n(n);
    return to_big(window_dim());
  }
  switch (kind_) {
    case FamilyKind::canonical:
      check_n(n);
      return to_big(n);
    case FamilyKind::sparse:
      check_n(n);
      return (*selector_)(n);
    default:
      return coordinates(n).back().hi;
  }
}

bool operator==(const ProjectionFamily& a, const ProjectionFamily& b) {
  if (a.kind_ != b.kind_ || !(a.boundaries_ == b.boundaries_) || !(a.selector_ == b.selector_)) return false;
  if (a.bases_ == b.bases_) return true;
  if (!a.bases_ || !b.bases_ || a.bases_->size() != b.bases_->size()) return false;
  for (std::size_t i = 0; i < a.bases_->size(); ++i) {
    const auto& x = (*a.bases_)[i];
    const auto& y = (*b.bases_)[i];
    if (x.rows() != y.rows() || x.cols() != y.cols() || x != y) return false;
  }
  return true;
}

}  // namespace qdf
