#pragma once

// Brute-force reference computations for the test suites. They only read the
// breakpoint list of a StepCdf and never call into the library's algorithms.

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <vector>

#include "pms/step_cdf.hpp"

namespace pms::oracle {

/// Linear scan evaluation of the left-continuous step function.
inline double eval(const StepCdf& f, double t) {
  double v = 0.0;
  for (const auto& b : f.breaks())
    if (b.t < t) v = b.v;
  return v;
}

/// Value just left of t, sampled densely.
inline double left_limit(const StepCdf& f, double t) { return eval(f, t - 1e-9); }

/// max_i F_i(t).
inline double grid_max(std::span<const StepCdf> family, double t) {
  double v = 0.0;
  for (const auto& f : family) v = std::max(v, eval(f, t));
  return v;
}

/// Probe points for A(F, G; h): where G has just jumped, where F(. + h) is
/// about to jump, the ends of (0, 1/h), and a coarse uniform grid.
inline std::vector<double> probe_points(const StepCdf& f, const StepCdf& g, double h) {
  const double end = 1.0 / h;
  std::vector<double> ts{1e-9, end - 1e-9};
  double reach = 1.0;
  for (const auto& b : g.breaks()) {
    ts.push_back(b.t + 1e-9);
    reach = std::max(reach, b.t);
  }
  for (const auto& a : f.breaks()) {
    ts.push_back(a.t - h - 1e-9);
    reach = std::max(reach, a.t);
  }
  const double span = std::min(end, reach + 2.0);
  for (int k = 1; k < 20; ++k) ts.push_back(span * k / 20.0);
  std::vector<double> inside;
  for (double t : ts)
    if (t > 0.0 && t < end) inside.push_back(t);
  return inside;
}

inline bool condition(const StepCdf& f, const StepCdf& g, double h) {
  for (double t : probe_points(f, g, h))
    if (eval(g, t) > eval(f, t + h) + h) return false;
  return true;
}

/// Smallest h on the grid {step, 2 step, ..., 1} where both probe conditions
/// hold. The true d_L lies in (result - step, result] up to the 1e-9 probes.
inline double levy(const StepCdf& f, const StepCdf& g, double step = 1e-4) {
  const int cells = static_cast<int>(std::lround(1.0 / step));
  for (int k = 1; k <= cells; ++k) {
    const double h = k * step;
    if (condition(f, g, h) && condition(g, f, h)) return h;
  }
  return 1.0;
}

/// max over s in {0, step, 2 step, ...} with s <= t of T(F(s), L(t - s)).
inline double conv(const std::function<double(double, double)>& tnorm, const StepCdf& f, const StepCdf& l, double t,
                   double step = 1e-3) {
  double best = 0.0;
  const int cells = static_cast<int>(std::ceil(t / step)) + 1;
  for (int k = 0; k <= cells; ++k) {
    const double s = k * step;
    best = std::max(best, tnorm(eval(f, s), eval(l, t - s)));
  }
  return best;
}

/// StepCdf with every breakpoint moved right by s.
inline StepCdf shift(const StepCdf& f, double s) {
  std::vector<Breakpoint> points(f.breaks().begin(), f.breaks().end());
  for (auto& b : points) b.t += s;
  return StepCdf::from_points(points);
}

}  // namespace pms::oracle
