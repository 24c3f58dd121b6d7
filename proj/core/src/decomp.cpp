#include "qdf/decomp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "qdf/error.hpp"

namespace qdf {

namespace {

std::string format(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

std::vector<Index> select_subsequence(const OperatorSpec& spec, const ProjectionFamily& family, double epsilon,
                                      Index search_limit) {
  if (!(epsilon > 0.0)) fail(ErrorCode::InvalidArgument, "epsilon must be positive");
  if (search_limit < 1) fail(ErrorCode::InvalidArgument, "search limit must be >= 1");
  Index limit = search_limit;
  if (const auto len = family.length()) limit = std::min(limit, *len);

  // The i-th kept index (1-based) must beat epsilon / 2^(i+1); scaling u
  // instead of epsilon keeps zero norms admissible after the threshold
  // would underflow.
  std::vector<Index> picked;
  for (Index n = 1; n <= limit; ++n) {
    const double u = seminorms(capture_commutator(spec, family, n).entries).u;
    const auto exponent = static_cast<int>(std::min<std::size_t>(picked.size() + 2, 4096));
    if (std::ldexp(u, exponent) < epsilon) picked.push_back(n);
  }
  if (picked.empty()) {
    fail(ErrorCode::NotQuasidiagonalAlongFamily,
         "no n <= " + std::to_string(limit) + " has commutator norm below " + format(epsilon / 4.0));
  }
  return picked;
}

Decomposition halmos_decompose(const OperatorSpec& spec, const std::vector<Index>& boundaries, Index dim,
                               double epsilon) {
  if (!(epsilon > 0.0)) fail(ErrorCode::InvalidArgument, "epsilon must be positive");
  if (boundaries.empty()) fail(ErrorCode::InvalidArgument, "at least one boundary is required");
  for (std::size_t i = 0; i < boundaries.size(); ++i) {
    if (boundaries[i] < 1 || (i > 0 && boundaries[i] <= boundaries[i - 1])) {
      fail(ErrorCode::InvalidArgument, "boundaries must be positive and strictly increasing");
    }
  }
  const Index last = boundaries.back();
  const Index needed = capture_bound(spec, last);
  if (dim < needed) {
    fail(ErrorCode::WindowTooSmall,
         "window " + std::to_string(dim) + " cannot hold the commutator at boundary " + std::to_string(last) +
             " (needs " + std::to_string(needed) + ")");
  }

  // K = sum_i (Q_{i+1} T P_{b_i} + P_{b_i} T Q_{i+1}) is exactly the part of the
  // window linking two different blocks. Block of x: first boundary >= x, or
  // the remainder.
  auto block_of = [&](Index x) {
    return std::lower_bound(boundaries.begin(), boundaries.end(), x) - boundaries.begin();
  };

  const Window t = compress(spec, dim);
  std::vector<WindowEntry> k_entries;
  std::vector<WindowEntry> b_entries;
  for (const auto& e : t.entries()) {
    (block_of(e.row) == block_of(e.col) ? b_entries : k_entries).push_back(e);
  }

  Decomposition d{boundaries, Window(dim, std::move(k_entries)), Window(dim, std::move(b_entries)), epsilon, dim,
                  0.0, 0.0, 0.0, {}};
  d.k_norm = seminorm(d.k, SeminormMode::u);
  for (const auto& e : d.b.entries()) {
    if (e.row > last || e.col > last) continue;
    if (block_of(e.row) != block_of(e.col)) d.off_block_residual = std::max(d.off_block_residual, std::abs(e.value));
  }
  d.reconstruction_residual = max_abs_difference(d.b + d.k, t);

  if (!(d.k_norm < epsilon)) {
    d.violations.push_back("compact part has norm " + format(d.k_norm) + ", not below epsilon " + format(epsilon));
  }
  if (!(d.off_block_residual < 1e-12)) {
    d.violations.push_back("block part has off-block entries up to " + format(d.off_block_residual));
  }
  if (!(d.reconstruction_residual <= 1e-14)) {
    d.violations.push_back("B + K differs from the compression by " + format(d.reconstruction_residual));
  }
  return d;
}

ProjectionFamily sparse_family(const BoundarySequence& boundaries, const IndexSequence& selector) {
  return ProjectionFamily::blocks(boundaries, selector);
}

ProjectionFamily sparse_family(const std::vector<Index>& boundaries, const IndexSequence& selector) {
  return sparse_family(BoundarySequence::list(boundaries), selector);
}

}  // namespace qdf
