#pragma once

// Seeded, platform-independent random sources for generators and property
// suites. Distributions are computed from raw mt19937_64 output so results do
// not depend on the standard library implementation.

#include <cstddef>
#include <cstdint>
#include <random>

#include "pms/step_cdf.hpp"

namespace pms {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [0, n); n > 0.
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  bool bernoulli(double p) { return uniform() < p; }
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

struct CdfShape {
  std::size_t max_breaks = 5;
  double max_time = 3.0;
  /// Probability that the last value is 1 (no mass at infinity).
  double full_mass = 0.7;
  /// Probability that the first jump sits at t = 0.
  double jump_at_zero = 0.15;
  /// When positive, breakpoints and values are snapped to multiples of it.
  double lattice = 0.0;
};

/// Random member of Delta+ with 1..max_breaks jumps (never H_inf).
StepCdf random_step_cdf(Rng& rng, const CdfShape& shape = {});

}  // namespace pms
