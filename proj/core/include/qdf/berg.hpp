#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qdf/projection_family.hpp"
#include "qdf/window.hpp"

namespace qdf {

/// Uniform partition of [-bound, bound] into half-open cells of equal length
/// (the last one closed), fine enough that each cell is at most
/// epsilon / 2^level long.
class SpectralPartition {
 public:
  SpectralPartition(double bound, Index level, double epsilon);

  [[nodiscard]] double bound() const noexcept { return bound_; }
  [[nodiscard]] Index level() const noexcept { return level_; }
  [[nodiscard]] double max_length() const noexcept { return max_length_; }
  [[nodiscard]] double cell_length() const noexcept { return cell_length_; }
  /// May exceed the range of Index at deep levels; kept as a double.
  [[nodiscard]] double cell_count() const noexcept { return cell_count_; }
  /// Cell of x with 1e-12 absolute tolerance at cell edges, clamped to the range.
  [[nodiscard]] double cell_of(double x) const;
  /// Explicit cell list; InvalidArgument beyond 2^24 cells.
  [[nodiscard]] std::vector<std::pair<double, double>> intervals() const;

 private:
  double bound_;
  Index level_;
  double max_length_;
  double cell_count_;
  double cell_length_;
};

SpectralPartition dyadic_partition(double bound, Index level, double epsilon);

struct BergResult {
  Index dim = 0;
  double epsilon = 0.0;
  /// Orthonormal basis of Q_n for each step n (possibly zero columns).
  std::vector<Eigen::MatrixXcd> increments;
  std::vector<Index> block_ranks;
  std::vector<double> commutator_norms;  // u([A, P_n]) per step
  double perturbation_norm = 0.0;        // u(sum_n Q_n A P_n^perp + P_n^perp A Q_n)
  std::vector<Index> zero_rank_steps;

  [[nodiscard]] Index steps() const noexcept { return static_cast<Index>(increments.size()); }
  [[nodiscard]] Index final_rank() const;
  /// Orthonormal basis of range(P_n), 1 <= n <= steps().
  [[nodiscard]] Eigen::MatrixXcd basis(Index n) const;
  [[nodiscard]] Window projection(Index n) const;
  [[nodiscard]] std::vector<Window> projections() const;
  [[nodiscard]] ProjectionFamily family() const;
};

/// Quasidiagonalizing projections of a Hermitian window, seeded by the basis
/// vectors e_{order[0]}, e_{order[1]}, ... (1-based; empty means 1..N).
/// Throws NotHermitian, RankStall.
BergResult berg_sequence(const Window& a, std::span<const Index> basis_order, double epsilon);
BergResult berg_sequence(const Eigen::MatrixXcd& a, std::span<const Index> basis_order, double epsilon);

/// Hermitian replacement of a normal window built from its spectral projections.
struct SelfAdjointReduction {
  Window hermitian;
  std::vector<Window> spectral_projections;  // E_1, E_2, ... in summation order
  Index levels = 0;
};

/// Square cells at level n have diameter epsilon / 2^n. Throws NotNormal.
SelfAdjointReduction normal_to_selfadjoint(const Window& normal, double epsilon);

/// A Berg sequence computed inside range(range_basis), in ambient coordinates.
struct IntervalBerg {
  Eigen::MatrixXcd range_basis;  // N x d, orthonormal columns
  BergResult berg;               // in the d-dimensional reduced coordinates
};

/// Orthonormal eigenbases of A for the spectral intervals cut at the given
/// ascending points: (-inf, c_1), [c_1, c_2), ..., [c_k, inf). Empty
/// intervals are omitted.
std::vector<Eigen::MatrixXcd> spectral_ranges(const Window& a, const std::vector<double>& cuts);

IntervalBerg berg_in_range(const Window& a, const Eigen::MatrixXcd& range_basis, double epsilon);

/// Diagonal interleaving of several interval sequences:
/// E_{k-1} = sum_{n+m=k} Q^(n)_m and P_k = E_1 + ... + E_k.
/// NonOrthogonalRanges if two ranges overlap beyond 1e-10.
ProjectionFamily unbounded_combine(const std::vector<IntervalBerg>& parts);

/// Seeded random Hermitian matrix with spectrum scaled into [-1, 1].
Window random_hermitian(Index dim, std::uint64_t seed);

}  // namespace qdf
