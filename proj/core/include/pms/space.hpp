#pragma once

// Finite probabilistic metric spaces: validated construction, the embedding
// of classical metrics, strong neighborhoods, Cauchy and covering checks, and
// seeded generators.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pms/step_cdf.hpp"
#include "pms/triangle.hpp"

namespace pms {

/// Points with a symmetric matrix of Delta+ distances satisfying, under
/// `star`: D(p, q) = H_0 iff p = q, D(p, q) = D(q, p), and
/// star(D(p, q), D(q, r)) <= D(p, r). Only make_space and the generators
/// build instances, so every instance is valid.
class ProbMetricSpace {
 public:
  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const TriangleFunction& star() const noexcept { return star_; }

  const StepCdf& dist(std::size_t p, std::size_t q) const { return matrix_.at(p * size() + q); }
  /// Row-major n x n.
  std::span<const StepCdf> matrix() const noexcept { return matrix_; }

  /// Throws UnknownPoint.
  std::size_t index_of(std::string_view label) const;

 private:
  ProbMetricSpace(std::vector<std::string> labels, std::vector<StepCdf> matrix, TriangleFunction star)
      : labels_(std::move(labels)), matrix_(std::move(matrix)), star_(std::move(star)) {}

  friend ProbMetricSpace make_space(std::vector<std::string>, std::vector<StepCdf>, TriangleFunction, double);

  std::vector<std::string> labels_;
  std::vector<StepCdf> matrix_;
  TriangleFunction star_;
};

/// Per-axiom report ("identity", "symmetry", "triangle") over a candidate
/// matrix. Witnesses name the points and, where relevant, the offending t.
/// Throws DomainMismatch if the matrix is not n x n.
AxiomReport check_space_axioms(std::span<const std::string> labels, std::span<const StepCdf> matrix,
                               const TriangleFunction& star, double tol = kTolerance);

/// Validates and builds. Throws IdentityViolation, SymmetryViolation or
/// TriangleViolation carrying the witness; DomainMismatch on shape errors or
/// duplicate labels.
ProbMetricSpace make_space(std::vector<std::string> labels, std::vector<StepCdf> matrix, TriangleFunction star,
                           double tol = kTolerance);

/// D(p, q) = H_{d(p, q)} for a classical metric d (row-major n x n).
/// Throws NotAMetric, or StarNotAdditiveOnHeaviside if star(H_a, H_b) differs
/// from H_{a+b} for some pair of occurring distances.
ProbMetricSpace from_classical_metric(std::vector<std::string> labels, std::span<const double> d,
                                      TriangleFunction star);

/// N_x(t) = {y : D(x, y)(t) > 1 - t}, as sorted point indices.
/// Throws UnknownPoint, or ArgOutOfRange unless t > 0.
std::vector<std::size_t> strong_neighborhood(const ProbMetricSpace& space, std::size_t x, double t);

/// d_L(D(z_n, z_p), H_0) < tol for all n, p among the last `tail` entries.
bool is_cauchy(const ProbMetricSpace& space, std::span<const std::size_t> seq, double tol, std::size_t tail);

/// Greedy cover by strong t-neighborhoods: repeatedly takes the point whose
/// neighborhood covers the most uncovered points (lowest index on ties).
std::vector<std::size_t> covering_net(const ProbMetricSpace& space, double t);

/// Positions in `seq` of its most frequent point (lowest point index on
/// ties): a constant, hence convergent, subsequence.
std::vector<std::size_t> constant_subsequence(std::span<const std::size_t> seq);

enum class SpaceModel {
  /// Shortest-path metric of a random weighted connected graph, embedded
  /// through Heaviside distances.
  Metric,
  /// Random symmetric matrix closed under sup-relaxation toward the triangle
  /// axiom.
  Repair,
};

/// Deterministic in `seed`. Throws GenerationFailed when the repair model
/// cannot produce a valid space within its attempt budget.
ProbMetricSpace gen_space(std::uint64_t seed, std::size_t n, SpaceModel model, const TriangleFunction& star);

}  // namespace pms
