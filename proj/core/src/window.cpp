#include "qdf/window.hpp"

#include <algorithm>
#include <cmath>

#include "qdf/error.hpp"

namespace qdf {

namespace {

bool column_major_less(const WindowEntry& a, const WindowEntry& b) {
  return a.col != b.col ? a.col < b.col : a.row < b.row;
}

void check_dim(Index dim) {
  if (dim < 1) fail(ErrorCode::InvalidArgument, "window dimension must be >= 1");
}

}  // namespace

Window::Window(Index dim) : dim_(dim) { check_dim(dim); }

Window::Window(Index dim, std::vector<WindowEntry> entries) : dim_(dim) {
  check_dim(dim);
  for (const auto& e : entries) {
    if (e.row < 1 || e.row > dim || e.col < 1 || e.col > dim) {
      fail(ErrorCode::InvalidArgument, "entry (" + std::to_string(e.row) + "," + std::to_string(e.col) +
                                           ") outside a window of dimension " + std::to_string(dim));
    }
    if (!std::isfinite(e.value.real()) || !std::isfinite(e.value.imag())) {
      fail(ErrorCode::NumericalFailure,
           "non-finite entry at (" + std::to_string(e.row) + "," + std::to_string(e.col) + ")");
    }
  }
  std::sort(entries.begin(), entries.end(), column_major_less);
  std::vector<WindowEntry> merged;
  merged.reserve(entries.size());
  for (const auto& e : entries) {
    if (!merged.empty() && merged.back().row == e.row && merged.back().col == e.col) {
      merged.back().value += e.value;
    } else {
      merged.push_back(e);
    }
  }
  std::erase_if(merged, [](const WindowEntry& e) { return e.value == Complex{}; });
  entries_ = std::move(merged);
}

Window Window::from_dense(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols()) fail(ErrorCode::InvalidArgument, "window matrix must be square");
  std::vector<WindowEntry> entries;
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      if (m(i, j) != Complex{}) entries.push_back({i + 1, j + 1, m(i, j)});
    }
  }
  return Window(m.rows(), std::move(entries));
}

Window Window::identity(Index dim) {
  std::vector<WindowEntry> entries;
  entries.reserve(static_cast<std::size_t>(std::max<Index>(dim, 0)));
  for (Index i = 1; i <= dim; ++i) entries.push_back({i, i, 1.0});
  return Window(dim, std::move(entries));
}

Complex Window::operator()(Index i, Index j) const {
  if (i < 1 || i > dim_ || j < 1 || j > dim_) fail(ErrorCode::InvalidArgument, "window index out of range");
  const WindowEntry key{i, j, {}};
  const auto it = std::lower_bound(entries_.begin(), entries_.end(), key, column_major_less);
  if (it != entries_.end() && it->row == i && it->col == j) return it->value;
  return {};
}

Eigen::MatrixXcd Window::dense() const {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim_, dim_);
  for (const auto& e : entries_) m(e.row - 1, e.col - 1) = e.value;
  return m;
}

Window Window::padded(Index dim) const {
  if (dim < dim_) fail(ErrorCode::InvalidArgument, "padding cannot shrink a window");
  Window out(dim);
  out.entries_ = entries_;
  return out;
}

Window Window::leading(Index dim) const {
  if (dim > dim_) fail(ErrorCode::InvalidArgument, "leading block larger than the window");
  Window out(dim);
  for (const auto& e : entries_) {
    if (e.row <= dim && e.col <= dim) out.entries_.push_back(e);
  }
  return out;
}

Window Window::adjoint() const {
  std::vector<WindowEntry> entries;
  entries.reserve(entries_.size());
  for (const auto& e : entries_) entries.push_back({e.col, e.row, std::conj(e.value)});
  return Window(dim_, std::move(entries));
}

double Window::max_abs() const noexcept {
  double m = 0.0;
  for (const auto& e : entries_) m = std::max(m, std::abs(e.value));
  return m;
}

Window operator+(const Window& a, const Window& b) {
  if (a.dim_ != b.dim_) fail(ErrorCode::InvalidArgument, "window dimensions differ");
  auto entries = a.entries_;
  entries.insert(entries.end(), b.entries_.begin(), b.entries_.end());
  return Window(a.dim_, std::move(entries));
}

Window operator-(const Window& a, const Window& b) { return a + Complex(-1.0) * b; }

Window operator*(Complex c, const Window& w) {
  auto entries = w.entries_;
  for (auto& e : entries) e.value *= c;
  return Window(w.dim_, std::move(entries));
}

double max_abs_difference(const Window& a, const Window& b) { return (a - b).max_abs(); }

}  // namespace qdf
