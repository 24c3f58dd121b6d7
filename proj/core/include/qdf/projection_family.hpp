#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qdf/big_index.hpp"

namespace qdf {

/// Strictly increasing positive integer sequence k_1 < k_2 < ... given by a
/// rule. Every rule is increasing by construction; lists are checked.
class IndexSequence {
 public:
  enum class Rule { geometric, polynomial, affine, list };

  static IndexSequence geometric(Index base);               // k_n = base^n
  static IndexSequence polynomial(Index exponent);          // k_n = n^exponent
  static IndexSequence affine(Index slope, Index offset);   // k_n = slope*n + offset
  static IndexSequence list(std::vector<Index> values);

  [[nodiscard]] Rule rule() const noexcept { return rule_; }
  [[nodiscard]] Index first_param() const noexcept { return a_; }
  [[nodiscard]] Index second_param() const noexcept { return b_; }
  [[nodiscard]] const std::vector<Index>& values() const noexcept { return values_; }
  /// Number of terms, or nullopt for an infinite rule.
  [[nodiscard]] std::optional<Index> length() const;

  /// k_n for n >= 1; SelectorOutOfRange past the end of a list.
  [[nodiscard]] BigIndex operator()(Index n) const;

  friend bool operator==(const IndexSequence&, const IndexSequence&) = default;

 private:
  IndexSequence(Rule rule, Index a, Index b, std::vector<Index> values)
      : rule_(rule), a_(a), b_(b), values_(std::move(values)) {}
  Rule rule_;
  Index a_;
  Index b_;
  std::vector<Index> values_;
};

/// Block boundaries 0 = b_0 < b_1 < b_2 < ...; block k is (b_{k-1}, b_k].
class BoundarySequence {
 public:
  static BoundarySequence unit();  // b_n = n
  /// A leading 0 is accepted and dropped.
  static BoundarySequence list(std::vector<Index> values);

  [[nodiscard]] bool is_unit() const noexcept { return unit_; }
  [[nodiscard]] const std::vector<Index>& values() const noexcept { return values_; }
  [[nodiscard]] std::optional<Index> length() const;
  /// b_n for n >= 0.
  [[nodiscard]] Index operator()(Index n) const;

  friend bool operator==(const BoundarySequence&, const BoundarySequence&) = default;

 private:
  BoundarySequence(bool unit, std::vector<Index> values) : unit_(unit), values_(std::move(values)) {}
  bool unit_;
  std::vector<Index> values_;
};

/// Closed range [lo, hi] of basis coordinates.
struct CoordinateInterval {
  BigIndex lo;
  BigIndex hi;
};

enum class FamilyKind { canonical, sparse, blocks, explicit_bases };

/// Rule producing finite-rank orthogonal projections P_1, P_2, ...
///
///   canonical       P_n projects onto e_1..e_n
///   sparse          P_n projects onto e_{k_1}, ..., e_{k_n}
///   blocks          P_n = Q_1 + ... + Q_n, or Q_{k_1} + ... + Q_{k_n} with a selector
///   explicit_bases  P_n = V_n V_n^* for stored orthonormal V_n in a fixed window
class ProjectionFamily {
 public:
  static ProjectionFamily canonical();
  static ProjectionFamily sparse(IndexSequence selector);
  static ProjectionFamily blocks(BoundarySequence boundaries, std::optional<IndexSequence> selector = std::nullopt);
  /// Columns of each basis must be orthonormal within 1e-12.
  static ProjectionFamily explicit_bases(std::vector<Eigen::MatrixXcd> bases);

  [[nodiscard]] FamilyKind kind() const noexcept { return kind_; }
  [[nodiscard]] bool is_coordinate() const noexcept { return kind_ != FamilyKind::explicit_bases; }
  [[nodiscard]] const std::optional<IndexSequence>& selector() const noexcept { return selector_; }
  [[nodiscard]] const BoundarySequence& boundaries() const noexcept { return boundaries_; }
  [[nodiscard]] const std::vector<Eigen::MatrixXcd>& bases() const;
  /// Ambient dimension of an explicit family.
  [[nodiscard]] Index window_dim() const;

  /// Number of projections, or nullopt for an infinite family.
  [[nodiscard]] std::optional<Index> length() const;
  [[nodiscard]] Index rank(Index n) const;

  /// Sorted, merged coordinate ranges spanning range(P_n). Coordinate kinds only.
  [[nodiscard]] std::vector<CoordinateInterval> coordinates(Index n) const;
  /// Largest coordinate touched by P_n (window_dim for explicit families).
  [[nodiscard]] BigIndex max_coordinate(Index n) const;

  friend bool operator==(const ProjectionFamily& a, const ProjectionFamily& b);

 private:
  ProjectionFamily(FamilyKind kind, BoundarySequence boundaries, std::optional<IndexSequence> selector,
                   std::shared_ptr<const std::vector<Eigen::MatrixXcd>> bases)
      : kind_(kind), boundaries_(std::move(boundaries)), selector_(std::move(selector)), bases_(std::move(bases)) {}
  void check_n(Index n) const;

  FamilyKind kind_;
  BoundarySequence boundaries_;
  std::optional<IndexSequence> selector_;
  std::shared_ptr<const std::vector<Eigen::MatrixXcd>> bases_;
};

}  // namespace qdf
