#pragma once

// Probabilistic 1-Lipschitz maps G -> Delta+ on finite spaces: certification,
// the sup-envelope extension, the delta embedding, k-rescaling of distances
// and the equicontinuity inequality.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "pms/levy.hpp"
#include "pms/random.hpp"
#include "pms/space.hpp"
#include "pms/step_cdf.hpp"
#include "pms/triangle.hpp"

namespace pms {

struct LipschitzWitness {
  std::size_t x = 0;
  std::size_t y = 0;
  double t = 0.0;
};

struct LipschitzCheck {
  bool ok = true;
  /// Ordered pair with star(D(x, y), f(y)) > f(x) at t.
  std::optional<LipschitzWitness> witness;

  explicit operator bool() const noexcept { return ok; }
};

/// Exhaustive check of star(D(x, y), f(y)) <= f(x) over all ordered pairs.
/// `f` is indexed by point. Throws DomainMismatch if its length differs from
/// the space size.
LipschitzCheck is_one_lipschitz(const ProbMetricSpace& space, std::span<const StepCdf> f, double tol = kTolerance);

/// A map that passed is_one_lipschitz on a space of size().
class LipschitzMap {
 public:
  /// Throws NotLipschitz with the witness pair, or DomainMismatch.
  static LipschitzMap certify(const ProbMetricSpace& space, std::vector<StepCdf> values);

  std::span<const StepCdf> values() const noexcept { return values_; }
  const StepCdf& operator[](std::size_t x) const { return values_.at(x); }
  std::size_t size() const noexcept { return values_.size(); }

 private:
  explicit LipschitzMap(std::vector<StepCdf> values) : values_(std::move(values)) {}

  std::vector<StepCdf> values_;
};

/// f~_A(x) = sup_{y in A} star(f(y), D(x, y)); `f` is aligned with `subset`.
/// The result is certified. On A it dominates f, and equals f exactly when f
/// is 1-Lipschitz on A. Throws EmptySubset, DomainMismatch or UnknownPoint.
LipschitzMap upper_envelope_extension(const ProbMetricSpace& space, std::span<const std::size_t> subset,
                                      std::span<const StepCdf> f);

/// delta_x : y -> D(y, x). Throws UnknownPoint.
LipschitzMap delta_embed(const ProbMetricSpace& space, std::size_t x);

/// D_k: t -> F(t / k) for k > 0, H_0 for k = 0. Throws NegativeScale.
StepCdf rescale_distance(const StepCdf& f, double k);

struct EquicontinuityBound {
  /// d_L(F_x, F_y).
  double lhs = 0.0;
  /// max(d_L(D * F_x, F_x), d_L(D * F_y, F_y)).
  double rhs = 0.0;
};

/// Both sides of the inequality d_L(f(x), f(y)) <= max of the two
/// perturbation distances. Requires star(D, F_y) <= F_x and
/// star(D, F_x) <= F_y, else PreconditionViolated.
EquicontinuityBound equicontinuity_bound(const StepCdf& dxy, const StepCdf& fx, const StepCdf& fy,
                                         const TriangleFunction& star, const LevyConfig& cfg = {});

/// Source of (D, F) pairs for estimate_modulus.
using PairSampler = std::function<std::pair<StepCdf, StepCdf>(Rng&)>;

struct ModulusEstimate {
  double eta = 0.0;
  /// Samples with d_L(D, H_0) < eta that supported the estimate.
  std::size_t samples = 0;
};

/// Empirical modulus of the perturbation F -> star(D, F): the largest
/// eta in {eps, eps/2, eps/4, ...} such that every drawn pair with
/// d_L(D, H_0) < eta had d_L(star(D, F), F) <= eps, with at least one such
/// pair observed. An estimate, not a certificate. Draws `budget` pairs from a
/// generator seeded with `seed`. Throws BudgetExhausted when no level passes.
ModulusEstimate estimate_modulus(const TriangleFunction& star, double eps, const PairSampler& sampler,
                                 std::size_t budget, std::uint64_t seed, const LevyConfig& cfg = {});

/// Seeded sequence of certified maps clustered around a few prototypes: each
/// is the envelope of a prototype's data on a subset, with breakpoints shifted
/// right by less than `jitter`.
std::vector<LipschitzMap> gen_lipschitz_maps(const ProbMetricSpace& space, std::size_t count, std::uint64_t seed,
                                             std::size_t prototypes = 4, double jitter = 1e-3);

}  // namespace pms
