#pragma once

// Dense and structured linear algebra kernels shared by the modules.

#include <vector>

#include <Eigen/Dense>

#include "qdf/big_index.hpp"

namespace qdf::linalg {

struct Triplet {
  Index row;
  Index col;
  Complex value;
};

/// Singular values of a dense matrix, descending. NumericalFailure on
/// non-finite output.
Eigen::VectorXd singular_values(const Eigen::MatrixXcd& m);

/// Singular values of a sparse matrix given by triplets with arbitrary
/// (possibly sparse) labels, computed per connected block of its row/column
/// incidence graph. Unordered.
std::vector<double> sparse_singular_values(const std::vector<Triplet>& entries);

/// Largest |i - j| over the nonzero pattern.
Index bandwidth(const Eigen::MatrixXcd& m);

/// Ascending eigenvalues of a Hermitian matrix (upper triangle is read).
/// Uses the banded LAPACK driver when the bandwidth is small.
Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& m);

}  // namespace qdf::linalg
