#include "qdf/norms.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "linalg.hpp"
#include "qdf/error.hpp"

namespace qdf {

namespace {

Seminorms from_singular_values(std::vector<double> sv, double frobenius) {
  // Ascending summation keeps s1 reproducible and accurate.
  std::sort(sv.begin(), sv.end());
  Seminorms out;
  out.u = sv.empty() ? 0.0 : sv.back();
  out.s1 = std::accumulate(sv.begin(), sv.end(), 0.0);
  out.s2 = frobenius;
  return out;
}

double frobenius(const auto& entries) {
  std::vector<double> squares;
  squares.reserve(entries.size());
  for (const auto& e : entries) squares.push_back(std::norm(e.value));
  std::sort(squares.begin(), squares.end());
  return std::sqrt(std::accumulate(squares.begin(), squares.end(), 0.0));
}

double ratio(double value, Index rank, bool root) {
  if (rank == 0) return value == 0.0 ? 0.0 : HUGE_VAL;
  const double denom = root ? std::sqrt(static_cast<double>(rank)) : static_cast<double>(rank);
  return value / denom;
}

}  // namespace

Seminorms seminorms(const Window& w) {
  std::vector<linalg::Triplet> triplets;
  triplets.reserve(w.nonzeros());
  for (const auto& e : w.entries()) triplets.push_back({e.row, e.col, e.value});
  return from_singular_values(linalg::sparse_singular_values(triplets), frobenius(w.entries()));
}

Seminorms seminorms(const std::vector<CommutatorEntry>& entries) {
  // Big coordinates are relabelled densely; only the incidence pattern matters.
  std::map<BigIndex, Index> row_ids;
  std::map<BigIndex, Index> col_ids;
  for (const auto& e : entries) {
    row_ids.try_emplace(e.row, static_cast<Index>(row_ids.size()));
    col_ids.try_emplace(e.col, static_cast<Index>(col_ids.size()));
  }
  std::vector<linalg::Triplet> triplets;
  triplets.reserve(entries.size());
  for (const auto& e : entries) {
    if (e.value != Complex{}) triplets.push_back({row_ids.at(e.row), col_ids.at(e.col), e.value});
  }
  return from_singular_values(linalg::sparse_singular_values(triplets), frobenius(triplets));
}

double seminorm(const Window& w, SeminormMode mode) {
  const Seminorms s = seminorms(w);
  switch (mode) {
    case SeminormMode::u: return s.u;
    case SeminormMode::s1: return s.s1;
    case SeminormMode::s2: return s.s2;
  }
  return s.u;
}

NormReport norm_report(const OperatorSpec& spec, const ProjectionFamily& family, Index n) {
  const CapturedCommutator captured = capture_commutator(spec, family, n);
  const Seminorms s = seminorms(captured.entries);
  NormReport r;
  r.n = n;
  r.rank = captured.rank;
  r.u = s.u;
  r.s1 = s.s1;
  r.s2 = s.s2;
  r.ratio1 = ratio(s.s1, r.rank, false);
  r.ratio2 = ratio(s.s2, r.rank, true);
  return r;
}

std::vector<NormReport> report_sequence(const OperatorSpec& spec, const ProjectionFamily& family,
                                        std::span<const Index> ns) {
  for (std::size_t i = 1; i < ns.size(); ++i) {
    if (ns[i] <= ns[i - 1]) fail(ErrorCode::InvalidArgument, "sequence indices must be strictly increasing");
  }
  std::vector<NormReport> out;
  out.reserve(ns.size());
  for (Index n : ns) out.push_back(norm_report(spec, family, n));
  return out;
}

std::string_view verdict_name(VerdictKind kind) noexcept {
  switch (kind) {
    case VerdictKind::tends_to_zero: return "tends_to_zero";
    case VerdictKind::tends_to_positive: return "tends_to_positive";
    case VerdictKind::diverges: return "diverges";
    case VerdictKind::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

Verdict classify(std::span<const double> values, const ClassifyPolicy& policy) {
  if (values.size() < policy.min_samples) {
    fail(ErrorCode::TooFewSamples,
         "need at least " + std::to_string(policy.min_samples) + " samples, got " + std::to_string(values.size()));
  }
  for (double v : values) {
    if (std::isnan(v)) fail(ErrorCode::InvalidArgument, "ratio sequence contains NaN");
  }
  const auto tail_size = std::min(
      values.size() - 1,
      static_cast<std::size_t>(std::ceil(policy.tail_fraction * static_cast<double>(values.size()))));
  const auto head = values.first(values.size() - tail_size);
  const auto tail = values.last(tail_size);

  Verdict v;
  TailEvidence& ev = v.evidence;
  ev.tail_size = tail_size;
  ev.head_max = *std::max_element(head.begin(), head.end());
  ev.tail_min = *std::min_element(tail.begin(), tail.end());
  ev.tail_max = *std::max_element(tail.begin(), tail.end());
  ev.tail_mean = std::accumulate(tail.begin(), tail.end(), 0.0) / static_cast<double>(tail_size);
  ev.non_increasing = true;
  ev.non_decreasing = true;
  for (std::size_t i = 1; i < tail.size(); ++i) {
    if (tail[i] > tail[i - 1] * (1.0 + policy.slack) + 1e-15) ev.non_increasing = false;
    if (tail[i] < tail[i - 1]) ev.non_decreasing = false;
  }

  if (ev.tail_max < policy.zero_tol && ev.non_increasing) {
    v.kind = VerdictKind::tends_to_zero;
  } else if (ev.tail_min > 2.0 * ev.head_max && ev.non_decreasing) {
    v.kind = VerdictKind::diverges;
  } else if (ev.tail_mean > 0.0 && std::isfinite(ev.tail_mean) &&
             std::all_of(tail.begin(), tail.end(),
                         [&](double t) { return std::abs(t - ev.tail_mean) <= policy.rel_tol * ev.tail_mean; })) {
    v.kind = VerdictKind::tends_to_positive;
    v.limit = ev.tail_mean;
  }
  return v;
}

}  // namespace qdf
