#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qdf/op_core.hpp"

namespace qdf {

enum class SeminormMode { u, s1, s2 };

/// Operator norm, trace norm and Hilbert-Schmidt norm of one matrix.
struct Seminorms {
  double u = 0.0;
  double s1 = 0.0;
  double s2 = 0.0;
};

Seminorms seminorms(const Window& w);
Seminorms seminorms(const std::vector<CommutatorEntry>& entries);
double seminorm(const Window& w, SeminormMode mode);

struct NormReport {
  Index n = 0;
  Index rank = 0;
  double u = 0.0;
  double s1 = 0.0;
  double s2 = 0.0;
  double ratio1 = 0.0;  // s1 / rank
  double ratio2 = 0.0;  // s2 / sqrt(rank)
};

NormReport norm_report(const OperatorSpec& spec, const ProjectionFamily& family, Index n);
/// ns must be strictly increasing.
std::vector<NormReport> report_sequence(const OperatorSpec& spec, const ProjectionFamily& family,
                                        std::span<const Index> ns);

enum class VerdictKind { tends_to_zero, tends_to_positive, diverges, inconclusive };
std::string_view verdict_name(VerdictKind kind) noexcept;

/// The tail is the last ceil(tail_fraction * size) samples, the head the rest.
struct ClassifyPolicy {
  double zero_tol = 1e-2;
  double rel_tol = 0.05;
  double slack = 0.10;
  double tail_fraction = 0.25;
  std::size_t min_samples = 8;
};

struct TailEvidence {
  std::size_t tail_size = 0;
  double head_max = 0.0;
  double tail_min = 0.0;
  double tail_max = 0.0;
  double tail_mean = 0.0;
  bool non_increasing = false;  // within the policy slack
  bool non_decreasing = false;
};

struct Verdict {
  VerdictKind kind = VerdictKind::inconclusive;
  std::optional<double> limit;  // set for tends_to_positive
  TailEvidence evidence;
};

/// TooFewSamples below policy.min_samples.
Verdict classify(std::span<const double> values, const ClassifyPolicy& policy = {});

}  // namespace qdf
