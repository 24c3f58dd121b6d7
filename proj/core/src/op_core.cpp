#include "qdf/op_core.hpp"

#include <algorithm>

#include "qdf/error.hpp"

namespace qdf {

namespace {

// Upper limit on coordinates scanned one by one when the operator has no
// finite propagation, so every coordinate of P_n must be visited.
constexpr Index kMaxScannedCoordinates = Index{1} << 26;

class CoordinateSet {
 public:
  explicit CoordinateSet(std::vector<CoordinateInterval> intervals) : intervals_(std::move(intervals)) {}

  [[nodiscard]] bool contains(const BigIndex& x) const {
    auto it = std::upper_bound(intervals_.begin(), intervals_.end(), x,
                               [](const BigIndex& v, const CoordinateInterval& iv) { return v < iv.lo; });
    if (it == intervals_.begin()) return false;
    --it;
    return x <= it->hi;
  }

  [[nodiscard]] const std::vector<CoordinateInterval>& intervals() const { return intervals_; }

 private:
  std::vector<CoordinateInterval> intervals_;
};

bool col_major_less(const CommutatorEntry& a, const CommutatorEntry& b) {
  const int c = cmp(a.col, b.col);
  return c != 0 ? c < 0 : a.row < b.row;
}

CapturedCommutator capture_coordinate(const OperatorSpec& spec, const ProjectionFamily& family, Index n) {
  const CoordinateSet set(family.coordinates(n));
  const auto prop = spec.propagation();
  CapturedCommutator out;
  out.rank = family.rank(n);
  out.capture_bound = set.intervals().back().hi;

  auto visit = [&](const BigIndex& j) {
    for (auto& [i, v] : spec.column(j)) {
      if (set.contains(i)) continue;
      if (i > out.capture_bound) out.capture_bound = i;
      out.entries.push_back({i, j, v});
    }
    for (auto& [k, v] : spec.row(j)) {
      if (set.contains(k)) continue;
      if (k > out.capture_bound) out.capture_bound = k;
      out.entries.push_back({j, k, -v});
    }
  };

  for (const auto& iv : set.intervals()) {
    if (!prop) {
      const BigIndex count = iv.hi - iv.lo + 1;
      if (count > to_big(kMaxScannedCoordinates)) {
        fail(ErrorCode::UnboundedSupport, "operator without finite propagation against a projection of rank " +
                                              to_string(count) + " would need an exhaustive scan");
      }
      for (BigIndex j = iv.lo; j <= iv.hi; ++j) visit(j);
      continue;
    }
    const Index d = *prop;
    if (d == 0) continue;
    // Only coordinates within d of an interval end can couple to the outside.
    BigIndex head_end = iv.lo + (d - 1);
    if (head_end > iv.hi) head_end = iv.hi;
    for (BigIndex j = iv.lo; j <= head_end; ++j) visit(j);
    BigIndex tail_start = iv.hi - (d - 1);
    if (tail_start <= head_end) tail_start = head_end + 1;
    for (BigIndex j = tail_start; j <= iv.hi; ++j) visit(j);
  }
  std::sort(out.entries.begin(), out.entries.end(), col_major_less);
  return out;
}

CapturedCommutator capture_explicit(const OperatorSpec& spec, const ProjectionFamily& family, Index n) {
  (void)family.rank(n);
  const Eigen::MatrixXcd& basis = family.bases()[static_cast<std::size_t>(n - 1)];
  const Index dim = family.window_dim();
  Index m = dim;
  for (Index k = 1; k <= dim; ++k) {
    for (const auto& [i, v] : spec.column(to_big(k))) m = std::max(m, to_index(i));
    for (const auto& [j, v] : spec.row(to_big(k))) m = std::max(m, to_index(j));
  }
  const Eigen::MatrixXcd t = compress(spec, m).dense();
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(m, m);
  p.topLeftCorner(dim, dim) = basis * basis.adjoint();
  const Eigen::MatrixXcd c = t * p - p * t;

  CapturedCommutator out;
  out.rank = basis.cols();
  out.capture_bound = to_big(m);
  for (Index j = 0; j < m; ++j) {
    for (Index i = 0; i < m; ++i) {
      if (c(i, j) != Complex{}) out.entries.push_back({to_big(i + 1), to_big(j + 1), c(i, j)});
    }
  }
  return out;
}

}  // namespace

Complex entry(const OperatorSpec& spec, Index i, Index j) {
  if (i < 1 || j < 1) fail(ErrorCode::InvalidArgument, "matrix indices are 1-based");
  const BigIndex row = to_big(i);
  for (const auto& [k, v] : spec.column(to_big(j))) {
    if (k == row) return v;
  }
  return {};
}

Window compress(const OperatorSpec& spec, Index dim) {
  if (dim < 1) fail(ErrorCode::InvalidArgument, "compression dimension must be >= 1");
  std::vector<WindowEntry> entries;
  const BigIndex limit = to_big(dim);
  for (Index j = 1; j <= dim; ++j) {
    for (const auto& [i, v] : spec.column(to_big(j))) {
      if (i <= limit) entries.push_back({i.get_si(), j, v});
    }
  }
  return Window(dim, std::move(entries));
}

Window projection_window(const ProjectionFamily& family, Index n, Index dim) {
  if (!family.is_coordinate()) {
    (void)family.rank(n);
    const Eigen::MatrixXcd& basis = family.bases()[static_cast<std::size_t>(n - 1)];
    if (basis.rows() > dim) fail(ErrorCode::WindowTooSmall, "window smaller than the family's ambient dimension");
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(dim, dim);
    p.topLeftCorner(basis.rows(), basis.rows()) = basis * basis.adjoint();
    return Window::from_dense(p);
  }
  const auto coords = family.coordinates(n);
  if (coords.back().hi > to_big(dim)) {
    fail(ErrorCode::WindowTooSmall,
         "projection reaches coordinate " + to_string(coords.back().hi) + " past window " + std::to_string(dim));
  }
  std::vector<WindowEntry> entries;
  for (const auto& iv : coords) {
    for (Index k = iv.lo.get_si(); k <= iv.hi.get_si(); ++k) entries.push_back({k, k, 1.0});
  }
  return Window(dim, std::move(entries));
}

CapturedCommutator capture_commutator(const OperatorSpec& spec, const ProjectionFamily& family, Index n) {
  return family.is_coordinate() ? capture_coordinate(spec, family, n) : capture_explicit(spec, family, n);
}

Index capture_bound(const OperatorSpec& spec, const ProjectionFamily& family, Index n) {
  return to_index(capture_commutator(spec, family, n).capture_bound);
}

Index capture_bound(const OperatorSpec& spec, Index n) {
  return capture_bound(spec, ProjectionFamily::canonical(), n);
}

Window commutator_window(const OperatorSpec& spec, const ProjectionFamily& family, Index n) {
  auto captured = capture_commutator(spec, family, n);
  const Index dim = to_index(captured.capture_bound);
  std::vector<WindowEntry> entries;
  entries.reserve(captured.entries.size());
  for (const auto& e : captured.entries) entries.push_back({e.row.get_si(), e.col.get_si(), e.value});
  return Window(dim, std::move(entries));
}

}  // namespace qdf
