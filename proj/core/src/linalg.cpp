#include "linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "qdf/error.hpp"

namespace qdf::linalg {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

void require_finite(const Eigen::VectorXd& v, const char* what) {
  if (!v.allFinite()) fail(ErrorCode::NumericalFailure, std::string(what) + " produced non-finite values");
}

}  // namespace

Eigen::VectorXd singular_values(const Eigen::MatrixXcd& m) {
  if (m.size() == 0) return {};
  if (!m.allFinite()) fail(ErrorCode::NumericalFailure, "matrix has non-finite entries");
  Eigen::VectorXd sv;
  if (std::min(m.rows(), m.cols()) <= 16) {
    sv = Eigen::JacobiSVD<Eigen::MatrixXcd>(m).singularValues();
  } else {
    sv = Eigen::BDCSVD<Eigen::MatrixXcd>(m).singularValues();
  }
  require_finite(sv, "singular value decomposition");
  return sv;
}

std::vector<double> sparse_singular_values(const std::vector<Triplet>& entries) {
  // Relabel rows and columns as graph nodes 0..R-1 and R..R+C-1.
  std::unordered_map<Index, std::size_t> rows;
  std::unordered_map<Index, std::size_t> cols;
  for (const auto& e : entries) {
    rows.try_emplace(e.row, rows.size());
    cols.try_emplace(e.col, cols.size());
  }
  DisjointSets sets(rows.size() + cols.size());
  for (const auto& e : entries) sets.unite(rows.at(e.row), rows.size() + cols.at(e.col));

  // Group entries by component, then give each component local row/column ids.
  std::unordered_map<std::size_t, std::vector<const Triplet*>> components;
  for (const auto& e : entries) components[sets.find(rows.at(e.row))].push_back(&e);

  std::vector<double> out;
  for (auto& [root, members] : components) {
    if (members.size() == 1) {
      out.push_back(std::abs(members.front()->value));
      continue;
    }
    std::unordered_map<Index, Index> local_row;
    std::unordered_map<Index, Index> local_col;
    for (const auto* e : members) {
      local_row.try_emplace(e->row, static_cast<Index>(local_row.size()));
      local_col.try_emplace(e->col, static_cast<Index>(local_col.size()));
    }
    Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(static_cast<Index>(local_row.size()),
                                                     static_cast<Index>(local_col.size()));
    for (const auto* e : members) block(local_row.at(e->row), local_col.at(e->col)) += e->value;
    const Eigen::VectorXd sv = singular_values(block);
    out.insert(out.end(), sv.begin(), sv.end());
  }
  return out;
}

Index bandwidth(const Eigen::MatrixXcd& m) {
  Index width = 0;
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      if (m(i, j) != Complex{}) width = std::max(width, std::abs(i - j));
    }
  }
  return width;
}

Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& m) {
  const Index n = m.rows();
  if (n == 0) return {};
  if (!m.allFinite()) fail(ErrorCode::NumericalFailure, "matrix has non-finite entries");
  const Index kd = bandwidth(m);
  if (4 * kd >= n) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) fail(ErrorCode::NumericalFailure, "Hermitian eigensolver did not converge");
    return solver.eigenvalues();
  }
  // Upper band storage, column-major: ab(kd + i - j, j) = m(i, j) for i <= j.
  const Index ldab = kd + 1;
  std::vector<Complex> ab(static_cast<std::size_t>(ldab * n));
  for (Index j = 0; j < n; ++j) {
    for (Index i = std::max<Index>(0, j - kd); i <= j; ++i) {
      ab[static_cast<std::size_t>(kd + i - j + j * ldab)] = m(i, j);
    }
  }
  Eigen::VectorXd w(n);
  const lapack_int info = LAPACKE_zhbev(LAPACK_COL_MAJOR, 'N', 'U', static_cast<lapack_int>(n),
                                        static_cast<lapack_int>(kd), ab.data(), static_cast<lapack_int>(ldab),
                                        w.data(), nullptr, 1);
  if (info != 0) fail(ErrorCode::NumericalFailure, "banded Hermitian eigensolver failed (info " + std::to_string(info) + ")");
  return w;
}

}  // namespace qdf::linalg
