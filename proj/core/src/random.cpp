#include "pms/random.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace pms {

StepCdf random_step_cdf(Rng& rng, const CdfShape& shape) {
  const std::size_t n = 1 + rng.index(std::max<std::size_t>(shape.max_breaks, 1));
  auto snap = [&](double x) { return shape.lattice > 0.0 ? std::round(x / shape.lattice) * shape.lattice : x; };

  std::vector<double> times(n);
  std::vector<double> values(n);
  for (auto& t : times) t = snap(rng.uniform(0.0, shape.max_time));
  for (auto& v : values) v = rng.uniform(0.05, 1.0);
  std::sort(times.begin(), times.end());
  std::sort(values.begin(), values.end());
  if (rng.bernoulli(shape.jump_at_zero)) times.front() = 0.0;
  if (rng.bernoulli(shape.full_mass)) values.back() = 1.0;

  std::vector<Breakpoint> points;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = std::clamp(snap(values[i]), shape.lattice > 0.0 ? shape.lattice : 1e-3, 1.0);
    points.push_back({times[i], v});
  }
  return StepCdf::from_points(points);
}

}  // namespace pms
