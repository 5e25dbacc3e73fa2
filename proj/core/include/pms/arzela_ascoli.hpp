#pragma once

// Desk-scale compactness for 1-Lipschitz maps on finite spaces. Total
// boundedness of (Delta+, d_L) is realized by quantization buckets, the
// diagonal argument by refining one point at a time, and the converse
// direction by clustering delta maps.

#include <cstddef>
#include <span>
#include <vector>

#include "pms/levy.hpp"
#include "pms/lipschitz.hpp"
#include "pms/space.hpp"
#include "pms/step_cdf.hpp"

namespace pms {

/// Indices of the largest bucket when `cdfs` are keyed by quantize(., eps/4)
/// (earliest bucket on ties). Members of one bucket are within eps/2 of their
/// common quantization, so every selected pair has d_L <= eps.
/// Throws ArgOutOfRange unless eps is in (0, 1] and the sequence is nonempty.
std::vector<std::size_t> select_cauchy_subsequence(std::span<const StepCdf> cdfs, double eps);

struct ExtractionReport {
  /// Strictly increasing indices into the input sequence.
  std::vector<std::size_t> selected;
  /// Cluster representative: the last selected map.
  LipschitzMap limit;
  /// Largest d_inf between two selected maps.
  double pairwise_dinf = 0.0;
  /// d_inf(maps[i], limit) for each selected i.
  std::vector<double> residuals;
  bool lipschitz_ok = false;
  double eps = 0.0;
  bool success = false;
};

/// Diagonal refinement: at each point in turn, keeps the largest
/// select_cauchy_subsequence bucket (scale eps/2) of the surviving maps.
/// Successful iff the pairwise d_inf among survivors is <= eps and the limit is
/// certified. Throws InsufficientSequence when a refinement step leaves fewer
/// than two maps out of a sequence of two or more, DomainMismatch when a map
/// does not match the space.
ExtractionReport extract_uniform_subsequence(const ProbMetricSpace& space, std::span<const LipschitzMap> maps,
                                             double eps, const LevyConfig& cfg = {});

/// d_inf(maps[i], limit) <= eps for every i in the second half of `selected`
/// (the last element included). Throws IndexOutOfRange.
bool verify_uniform_convergence(const ProbMetricSpace& space, std::span<const LipschitzMap> maps,
                                std::span<const std::size_t> selected, std::span<const StepCdf> limit, double eps,
                                const LevyConfig& cfg = {});

struct ConverseWitness {
  std::vector<std::size_t> selected;
  /// max d_L(D(x_i, x_j), H_0) over selected pairs.
  double worst = 0.0;
  bool cauchy_ok = false;
};

/// Runs the extraction on (delta_{x_n}) and checks that the selected points
/// cluster metrically: d_L(D(x_i, x_j), H_0) <= eps for all selected pairs.
/// Propagates InsufficientSequence; throws UnknownPoint.
ConverseWitness converse_compactness_witness(const ProbMetricSpace& space, std::span<const std::size_t> pts,
                                             double eps, const LevyConfig& cfg = {});

}  // namespace pms
