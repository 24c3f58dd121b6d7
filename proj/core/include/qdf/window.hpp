#pragma once

#include <vector>

#include <Eigen/Dense>

#include "qdf/big_index.hpp"

namespace qdf {

/// One stored entry of a window, 1-based.
struct WindowEntry {
  Index row;
  Index col;
  Complex value;

  friend bool operator==(const WindowEntry&, const WindowEntry&) = default;
};

/// Finite N x N complex matrix with 1-based indexing. Stored as sorted
/// (column, row) triplets with exact zeros dropped, so windows of very large
/// dimension with few nonzeros stay cheap.
class Window {
 public:
  explicit Window(Index dim);
  /// Duplicate positions are summed. Throws InvalidArgument on out-of-range
  /// positions and NumericalFailure on non-finite values.
  Window(Index dim, std::vector<WindowEntry> entries);

  static Window from_dense(const Eigen::MatrixXcd& m);
  static Window identity(Index dim);

  [[nodiscard]] Index dim() const noexcept { return dim_; }
  [[nodiscard]] const std::vector<WindowEntry>& entries() const noexcept { return entries_; }
  [[nodiscard]] std::size_t nonzeros() const noexcept { return entries_.size(); }
  [[nodiscard]] Complex operator()(Index i, Index j) const;

  [[nodiscard]] Eigen::MatrixXcd dense() const;
  /// Same matrix embedded in the leading block of a larger zero window.
  [[nodiscard]] Window padded(Index dim) const;
  /// Leading dim x dim block.
  [[nodiscard]] Window leading(Index dim) const;
  [[nodiscard]] Window adjoint() const;
  [[nodiscard]] double max_abs() const noexcept;

  friend Window operator+(const Window& a, const Window& b);
  friend Window operator-(const Window& a, const Window& b);
  friend Window operator*(Complex c, const Window& w);
  friend bool operator==(const Window&, const Window&) = default;

 private:
  Index dim_;
  std::vector<WindowEntry> entries_;
};

/// Entrywise max |a_ij - b_ij|; dimensions must agree.
double max_abs_difference(const Window& a, const Window& b);

}  // namespace qdf
