#pragma once

#include <string>
#include <vector>

#include "qdf/norms.hpp"

namespace qdf {

/// Greedy scan over n = 1..search_limit keeping n whenever
/// u([T, P_n]) < epsilon / 2^(i+1), where n becomes the i-th kept index.
/// NotQuasidiagonalAlongFamily when nothing qualifies.
std::vector<Index> select_subsequence(const OperatorSpec& spec, const ProjectionFamily& family, double epsilon,
                                      Index search_limit);

/// T = B + K on the leading N x N window. Blocks are (b_{i-1}, b_i] plus the
/// remainder (b_last, N], which stands in for the untruncated tail.
struct Decomposition {
  std::vector<Index> boundaries;
  Window k;
  Window b;
  double epsilon = 0.0;
  Index window_dim = 0;
  double k_norm = 0.0;                   // u-seminorm of k
  double off_block_residual = 0.0;       // largest entry of b linking two complete blocks
  double reconstruction_residual = 0.0;  // max |b + k - compress|
  std::vector<std::string> violations;   // empty when every invariant holds
};

/// WindowTooSmall unless N covers the last boundary and its capture overhang.
Decomposition halmos_decompose(const OperatorSpec& spec, const std::vector<Index>& boundaries, Index dim,
                               double epsilon);

/// Family R_n = Q_{k_1} + ... + Q_{k_n} over the blocks of `boundaries`.
ProjectionFamily sparse_family(const BoundarySequence& boundaries, const IndexSequence& selector);
ProjectionFamily sparse_family(const std::vector<Index>& boundaries, const IndexSequence& selector);

}  // namespace qdf
