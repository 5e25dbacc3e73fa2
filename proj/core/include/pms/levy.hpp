#pragma once

// The modified Levy distance d_L on Delta+, the uniform distance d_inf between
// maps into Delta+, and weak-convergence checks through d_L.

#include <cstddef>
#include <span>

#include "pms/step_cdf.hpp"

namespace pms {

struct LevyConfig {
  double bisection_tol = 1e-10;
  int max_iter = 60;

  /// Throws InvalidConfig unless bisection_tol is in (0, 1e-3] and max_iter
  /// is large enough to reach it.
  void validate() const;
};

/// A(F, G; h): G(t) <= F(t + h) + h for all t in (0, 1/h).
/// Throws ProbeOutOfRange unless 0 < h <= 1.
bool condition_a(const StepCdf& f, const StepCdf& g, double h);

/// Smallest h with both A(F, G; h) and A(G, F; h), by bisection on [0, 1].
/// The returned h always satisfies both conditions and exceeds the infimum by
/// at most cfg.bisection_tol. Exactly 0 iff F == G.
double levy_distance(const StepCdf& f, const StepCdf& g, const LevyConfig& cfg = {});

/// d_L(F, H_0) in closed form: inf{h in [0, 1] : F(h+) >= 1 - h}.
double levy_to_h0(const StepCdf& f);

/// max over `points` of d_L(f[x], g[x]). Throws DomainMismatch if a point is
/// outside either map.
double uniform_distance(std::span<const StepCdf> f, std::span<const StepCdf> g, std::span<const std::size_t> points,
                        const LevyConfig& cfg = {});

/// d_inf over every point of two maps of equal length.
double uniform_distance(std::span<const StepCdf> f, std::span<const StepCdf> g, const LevyConfig& cfg = {});

/// True iff d_L(F_n, F) < tol for the last `tail` members of the prefix.
/// Throws ArgOutOfRange if tail is 0 or longer than the sequence.
bool is_weak_limit(std::span<const StepCdf> seq, const StepCdf& limit, double tol, std::size_t tail,
                   const LevyConfig& cfg = {});

}  // namespace pms
