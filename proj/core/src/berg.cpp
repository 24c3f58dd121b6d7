#include "qdf/berg.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

#include "linalg.hpp"
#include "qdf/error.hpp"

namespace qdf {

namespace {

constexpr double kEdgeTolerance = 1e-12;
constexpr double kDropThreshold = 1e-10;
constexpr double kHermitianTolerance = 1e-12;
constexpr double kNormalTolerance = 1e-10;
constexpr double kClusterTolerance = 1e-10;
constexpr Index kMaxReductionLevels = 60;

Eigen::MatrixXcd dense_square(const Window& w) { return w.dense(); }

void require_hermitian(const Eigen::MatrixXcd& a) {
  if (a.rows() != a.cols() || a.rows() < 1) fail(ErrorCode::InvalidArgument, "expected a nonempty square matrix");
  const double defect = (a - a.adjoint()).cwiseAbs().maxCoeff();
  if (defect > kHermitianTolerance) {
    fail(ErrorCode::NotHermitian, "matrix deviates from its adjoint by " + std::to_string(defect));
  }
}

std::vector<Index> resolve_order(std::span<const Index> order, Index dim) {
  std::vector<Index> out(order.begin(), order.end());
  if (out.empty()) {
    out.resize(static_cast<std::size_t>(dim));
    std::iota(out.begin(), out.end(), Index{1});
    return out;
  }
  std::vector<bool> seen(static_cast<std::size_t>(dim), false);
  if (static_cast<Index>(out.size()) != dim) fail(ErrorCode::InvalidArgument, "basis order must list every index once");
  for (Index i : out) {
    if (i < 1 || i > dim || seen[static_cast<std::size_t>(i - 1)]) {
      fail(ErrorCode::InvalidArgument, "basis order is not a permutation of 1..N");
    }
    seen[static_cast<std::size_t>(i - 1)] = true;
  }
  return out;
}

// Orthonormal basis of the orthogonal complement of range(u).
Eigen::MatrixXcd complement(const Eigen::MatrixXcd& u, Index dim) {
  if (u.cols() == 0) return Eigen::MatrixXcd::Identity(dim, dim);
  const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(u);
  const Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(dim, dim);
  return q.rightCols(dim - u.cols());
}

double spectral_norm(const Eigen::MatrixXcd& m) {
  const Eigen::VectorXd sv = linalg::singular_values(m);
  return sv.size() == 0 ? 0.0 : sv.maxCoeff();
}

}  // namespace

SpectralPartition::SpectralPartition(double bound, Index level, double epsilon)
    : bound_(bound), level_(level), max_length_(std::ldexp(epsilon, static_cast<int>(-level))) {
  if (!(bound > 0.0) || !(epsilon > 0.0) || level < 0) {
    fail(ErrorCode::InvalidArgument, "partition needs bound > 0, epsilon > 0 and level >= 0");
  }
  cell_count_ = std::ceil(2.0 * bound / max_length_);
  if (!std::isfinite(cell_count_)) fail(ErrorCode::InvalidArgument, "partition level too deep");
  cell_length_ = 2.0 * bound / cell_count_;
}

double SpectralPartition::cell_of(double x) const {
  const double cell = std::floor((x + bound_ + kEdgeTolerance) / cell_length_);
  return std::clamp(cell, 0.0, cell_count_ - 1.0);
}

std::vector<std::pair<double, double>> SpectralPartition::intervals() const {
  if (cell_count_ > 16777216.0) fail(ErrorCode::InvalidArgument, "too many cells to list");
  const auto count = static_cast<Index>(cell_count_);
  std::vector<std::pair<double, double>> out;
  out.reserve(static_cast<std::size_t>(count));
  for (Index k = 0; k < count; ++k) {
    const double lo = -bound_ + static_cast<double>(k) * cell_length_;
    const double hi = k + 1 == count ? bound_ : -bound_ + static_cast<double>(k + 1) * cell_length_;
    out.emplace_back(lo, hi);
  }
  return out;
}

SpectralPartition dyadic_partition(double bound, Index level, double epsilon) {
  return SpectralPartition(bound, level, epsilon);
}

Index BergResult::final_rank() const {
  return std::accumulate(block_ranks.begin(), block_ranks.end(), Index{0});
}

Eigen::MatrixXcd BergResult::basis(Index n) const {
  if (n < 1 || n > steps()) fail(ErrorCode::InvalidArgument, "step index out of range");
  Index cols = 0;
  for (Index s = 0; s < n; ++s) cols += increments[static_cast<std::size_t>(s)].cols();
  Eigen::MatrixXcd out(dim, cols);
  Index at = 0;
  for (Index s = 0; s < n; ++s) {
    const auto& q = increments[static_cast<std::size_t>(s)];
    out.middleCols(at, q.cols()) = q;
    at += q.cols();
  }
  return out;
}

Window BergResult::projection(Index n) const {
  const Eigen::MatrixXcd u = basis(n);
  return Window::from_dense(u * u.adjoint());
}

std::vector<Window> BergResult::projections() const {
  std::vector<Window> out;
  out.reserve(increments.size());
  for (Index n = 1; n <= steps(); ++n) out.push_back(projection(n));
  return out;
}

ProjectionFamily BergResult::family() const {
  std::vector<Eigen::MatrixXcd> bases;
  bases.reserve(increments.size());
  for (Index n = 1; n <= steps(); ++n) bases.push_back(basis(n));
  return ProjectionFamily::explicit_bases(std::move(bases));
}

BergResult berg_sequence(const Window& a, std::span<const Index> basis_order, double epsilon) {
  return berg_sequence(dense_square(a), basis_order, epsilon);
}

BergResult berg_sequence(const Eigen::MatrixXcd& a, std::span<const Index> basis_order, double epsilon) {
  require_hermitian(a);
  if (!(epsilon > 0.0)) fail(ErrorCode::InvalidArgument, "epsilon must be positive");
  const Index dim = a.rows();
  const std::vector<Index> order = resolve_order(basis_order, dim);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> full(a, Eigen::EigenvaluesOnly);
  double bound = full.eigenvalues().cwiseAbs().maxCoeff();
  if (bound == 0.0) bound = 1.0;

  BergResult result;
  result.dim = dim;
  result.epsilon = epsilon;
  Eigen::MatrixXcd u(dim, 0);
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Identity(dim, dim);

  for (Index step = 1; step <= dim && u.cols() < dim; ++step) {
    // A_n = P_{n-1}^perp A P_{n-1}^perp in reduced coordinates.
    Eigen::MatrixXcd reduced = comp.adjoint() * a * comp;
    reduced = 0.5 * (reduced + reduced.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(reduced);
    if (eig.info() != Eigen::Success) fail(ErrorCode::NumericalFailure, "eigensolver did not converge");

    const Eigen::VectorXcd seed = comp.adjoint().col(order[static_cast<std::size_t>(step - 1)] - 1);
    const SpectralPartition partition(bound, step, epsilon);
    std::map<double, std::vector<Index>> groups;
    for (Index k = 0; k < eig.eigenvalues().size(); ++k) groups[partition.cell_of(eig.eigenvalues()(k))].push_back(k);

    std::vector<Eigen::VectorXcd> accepted;
    for (const auto& [cell, members] : groups) {
      Eigen::VectorXcd y = Eigen::VectorXcd::Zero(reduced.rows());
      for (Index k : members) {
        const auto v = eig.eigenvectors().col(k);
        y += v * v.dot(seed);
      }
      Eigen::VectorXcd x = comp * y;
      if (x.norm() <= kDropThreshold) continue;
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& q : accepted) x -= q * q.dot(x);
        if (u.cols() > 0) x -= u * (u.adjoint() * x);
      }
      const double norm = x.norm();
      if (norm <= kDropThreshold) continue;
      accepted.push_back(x / norm);
    }

    Eigen::MatrixXcd increment(dim, static_cast<Index>(accepted.size()));
    for (std::size_t c = 0; c < accepted.size(); ++c) increment.col(static_cast<Index>(c)) = accepted[c];
    result.block_ranks.push_back(increment.cols());
    if (increment.cols() == 0) result.zero_rank_steps.push_back(step);

    Eigen::MatrixXcd grown(dim, u.cols() + increment.cols());
    grown << u, increment;
    u = std::move(grown);
    result.increments.push_back(std::move(increment));
    comp = complement(u, dim);

    // ||[A, P]|| = ||(1 - P) A P|| for Hermitian A.
    const Eigen::MatrixXcd au = a * u;
    result.commutator_norms.push_back(spectral_norm(au - u * (u.adjoint() * au)));
  }
  if (u.cols() < dim) {
    fail(ErrorCode::RankStall, "construction stopped at rank " + std::to_string(u.cols()) + " of " + std::to_string(dim));
  }

  Eigen::MatrixXcd k = Eigen::MatrixXcd::Zero(dim, dim);
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(dim, dim);
  for (Index n = 1; n <= result.steps(); ++n) {
    const auto& q = result.increments[static_cast<std::size_t>(n - 1)];
    if (q.cols() == 0) continue;
    const Eigen::MatrixXcd pn = result.basis(n);
    const Eigen::MatrixXcd perp = id - pn * pn.adjoint();
    const Eigen::MatrixXcd qq = q * q.adjoint();
    k += qq * a * perp + perp * a * qq;
  }
  result.perturbation_norm = spectral_norm(k);
  return result;
}

SelfAdjointReduction normal_to_selfadjoint(const Window& normal, double epsilon) {
  if (!(epsilon > 0.0)) fail(ErrorCode::InvalidArgument, "epsilon must be positive");
  const Eigen::MatrixXcd m = normal.dense();
  const Index dim = m.rows();
  const double defect = (m * m.adjoint() - m.adjoint() * m).cwiseAbs().maxCoeff();
  if (defect >= kNormalTolerance) fail(ErrorCode::NotNormal, "commutator with the adjoint reaches " + std::to_string(defect));

  // For a normal matrix the Schur form is diagonal and the Schur vectors
  // are an orthonormal eigenbasis.
  const Eigen::ComplexSchur<Eigen::MatrixXcd> schur(m);
  const Eigen::MatrixXcd& z = schur.matrixU();
  const Eigen::VectorXcd lambda = schur.matrixT().diagonal();

  // Merge numerically equal eigenvalues; each cluster keeps its first value.
  std::vector<Index> cluster(static_cast<std::size_t>(dim), -1);
  std::vector<Complex> representative;
  for (Index i = 0; i < dim; ++i) {
    for (Index c = 0; c < static_cast<Index>(representative.size()); ++c) {
      if (std::abs(lambda(i) - representative[static_cast<std::size_t>(c)]) <= kClusterTolerance) {
        cluster[static_cast<std::size_t>(i)] = c;
        break;
      }
    }
    if (cluster[static_cast<std::size_t>(i)] < 0) {
      cluster[static_cast<std::size_t>(i)] = static_cast<Index>(representative.size());
      representative.push_back(lambda(i));
    }
  }

  SelfAdjointReduction out{Window(dim), {}, 0};
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(dim, dim);
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(dim, dim);
  double weight = 1.0;
  for (Index level = 1; level <= kMaxReductionLevels; ++level) {
    const double side = std::ldexp(epsilon, static_cast<int>(-level)) / std::sqrt(2.0);
    std::map<std::pair<double, double>, std::vector<Index>> cells;
    for (Index c = 0; c < static_cast<Index>(representative.size()); ++c) {
      const Complex v = representative[static_cast<std::size_t>(c)];
      cells[{std::floor(v.real() / side), std::floor(v.imag() / side)}].push_back(c);
    }
    bool separated = true;
    for (const auto& [key, members] : cells) {
      separated = separated && members.size() == 1;
      Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(dim, dim);
      for (Index i = 0; i < dim; ++i) {
        if (std::find(members.begin(), members.end(), cluster[static_cast<std::size_t>(i)]) != members.end()) {
          e += z.col(i) * z.col(i).adjoint();
        }
      }
      weight /= 3.0;
      sum += weight * (2.0 * e - id);
      out.spectral_projections.push_back(Window::from_dense(e));
    }
    out.levels = level;
    if (separated) break;
  }
  out.hermitian = Window::from_dense(0.5 * (sum + sum.adjoint()));
  return out;
}

std::vector<Eigen::MatrixXcd> spectral_ranges(const Window& a, const std::vector<double>& cuts) {
  const Eigen::MatrixXcd m = a.dense();
  require_hermitian(m);
  if (!std::is_sorted(cuts.begin(), cuts.end())) fail(ErrorCode::InvalidArgument, "cut points must be ascending");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(m);
  if (eig.info() != Eigen::Success) fail(ErrorCode::NumericalFailure, "eigensolver did not converge");
  std::vector<std::vector<Index>> members(cuts.size() + 1);
  for (Index k = 0; k < m.rows(); ++k) {
    const double x = eig.eigenvalues()(k);
    const auto slot = std::upper_bound(cuts.begin(), cuts.end(), x) - cuts.begin();
    members[static_cast<std::size_t>(slot)].push_back(k);
  }
  std::vector<Eigen::MatrixXcd> out;
  for (const auto& group : members) {
    if (group.empty()) continue;
    Eigen::MatrixXcd w(m.rows(), static_cast<Index>(group.size()));
    for (std::size_t c = 0; c < group.size(); ++c) w.col(static_cast<Index>(c)) = eig.eigenvectors().col(group[c]);
    out.push_back(std::move(w));
  }
  return out;
}

IntervalBerg berg_in_range(const Window& a, const Eigen::MatrixXcd& range_basis, double epsilon) {
  const Eigen::MatrixXcd m = a.dense();
  if (range_basis.rows() != m.rows() || range_basis.cols() < 1) {
    fail(ErrorCode::InvalidArgument, "range basis does not fit the window");
  }
  Eigen::MatrixXcd reduced = range_basis.adjoint() * m * range_basis;
  reduced = 0.5 * (reduced + reduced.adjoint()).eval();
  return {range_basis, berg_sequence(reduced, {}, epsilon)};
}

ProjectionFamily unbounded_combine(const std::vector<IntervalBerg>& parts) {
  if (parts.empty()) fail(ErrorCode::InvalidArgument, "nothing to combine");
  const Index dim = parts.front().range_basis.rows();
  for (std::size_t a = 0; a < parts.size(); ++a) {
    const auto& w = parts[a].range_basis;
    if (w.rows() != dim || w.cols() != parts[a].berg.dim) {
      fail(ErrorCode::InvalidArgument, "interval part does not match its range basis");
    }
    for (std::size_t b = 0; b < a; ++b) {
      const double overlap = (parts[b].range_basis.adjoint() * w).cwiseAbs().maxCoeff();
      if (overlap > kDropThreshold) {
        fail(ErrorCode::NonOrthogonalRanges, "ranges " + std::to_string(b + 1) + " and " + std::to_string(a + 1) +
                                                 " overlap by " + std::to_string(overlap));
      }
    }
  }
  // E_k collects the increments Q^(n)_m with n + m = k + 1 (all 1-based).
  Index last = 0;
  for (std::size_t n = 0; n < parts.size(); ++n) last = std::max(last, static_cast<Index>(n) + parts[n].berg.steps());
  std::vector<Eigen::MatrixXcd> bases;
  Eigen::MatrixXcd current(dim, 0);
  for (Index k = 1; k <= last; ++k) {
    for (std::size_t n = 0; n < parts.size(); ++n) {
      const Index m = k - static_cast<Index>(n);
      if (m < 1 || m > parts[n].berg.steps()) continue;
      const Eigen::MatrixXcd q = parts[n].range_basis * parts[n].berg.increments[static_cast<std::size_t>(m - 1)];
      Eigen::MatrixXcd grown(dim, current.cols() + q.cols());
      grown << current, q;
      current = std::move(grown);
    }
    bases.push_back(current);
  }
  return ProjectionFamily::explicit_bases(std::move(bases));
}

Window random_hermitian(Index dim, std::uint64_t seed) {
  if (dim < 1) fail(ErrorCode::InvalidArgument, "dimension must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  Eigen::MatrixXcd g(dim, dim);
  for (Index j = 0; j < dim; ++j) {
    for (Index i = 0; i < dim; ++i) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      g(i, j) = Complex(re, im);
    }
  }
  Eigen::MatrixXcd h = 0.5 * (g + g.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h, Eigen::EigenvaluesOnly);
  h /= eig.eigenvalues().cwiseAbs().maxCoeff();
  h = 0.5 * (h + h.adjoint()).eval();
  return Window::from_dense(h);
}

}  // namespace qdf
