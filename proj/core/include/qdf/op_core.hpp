#pragma once

#include <vector>

#include "qdf/big_index.hpp"
#include "qdf/operator_spec.hpp"
#include "qdf/projection_family.hpp"
#include "qdf/window.hpp"

namespace qdf {

/// (i, j) entry of the operator, 1-based.
Complex entry(const OperatorSpec& spec, Index i, Index j);

/// Leading N x N block P_N T P_N.
Window compress(const OperatorSpec& spec, Index dim);

/// Matrix of P_n in an N x N window. WindowTooSmall if P_n reaches past N.
Window projection_window(const ProjectionFamily& family, Index n, Index dim);

struct CommutatorEntry {
  BigIndex row;
  BigIndex col;
  Complex value;
};

/// Every nonzero entry of [T, P_n], with the smallest m such that the
/// leading m x m block holds them all and the range of P_n.
struct CapturedCommutator {
  BigIndex capture_bound;
  Index rank = 0;
  std::vector<CommutatorEntry> entries;  // sorted by (col, row)
};

/// Exact for coordinate families at any coordinate size; explicit families
/// are evaluated densely in their ambient window.
CapturedCommutator capture_commutator(const OperatorSpec& spec, const ProjectionFamily& family, Index n);

Index capture_bound(const OperatorSpec& spec, const ProjectionFamily& family, Index n);
/// Canonical family.
Index capture_bound(const OperatorSpec& spec, Index n);

/// The capture_bound x capture_bound window of [T, P_n].
Window commutator_window(const OperatorSpec& spec, const ProjectionFamily& family, Index n);

}  // namespace qdf
