#include "pms/levy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pms/error.hpp"

namespace pms {

void LevyConfig::validate() const {
  if (!(bisection_tol > 0.0) || bisection_tol > 1e-3) {
    throw Error(ErrorCode::InvalidConfig, "bisection_tol must lie in (0, 1e-3]");
  }
  if (max_iter < static_cast<int>(std::ceil(std::log2(1.0 / bisection_tol)))) {
    throw Error(ErrorCode::InvalidConfig, "max_iter too small for bisection_tol");
  }
}

bool condition_a(const StepCdf& f, const StepCdf& g, double h) {
  if (!(h > 0.0) || h > 1.0) throw Error(ErrorCode::ProbeOutOfRange, "h = " + std::to_string(h));
  return shifted_excess(g, f, h, 1.0 / h).value <= h;
}

double levy_distance(const StepCdf& f, const StepCdf& g, const LevyConfig& cfg) {
  cfg.validate();
  if (f == g) return 0.0;
  double lo = 0.0;
  double hi = 1.0;
  for (int iter = 0; iter < cfg.max_iter && hi - lo > cfg.bisection_tol; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (condition_a(f, g, mid) && condition_a(g, f, mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

double levy_to_h0(const StepCdf& f) {
  // On [left, right) the right limit F(h+) is a constant v, and v + h >= 1
  // first holds at max(left, 1 - v).
  double left = 0.0;
  double value = 0.0;
  for (const auto& b : f.breaks()) {
    if (b.t > left) {
      const double h = std::max(left, 1.0 - value);
      if (h < b.t) return std::min(h, 1.0);
    }
    left = b.t;
    value = b.v;
  }
  return std::min(std::max(left, 1.0 - value), 1.0);
}

double uniform_distance(std::span<const StepCdf> f, std::span<const StepCdf> g, std::span<const std::size_t> points,
                        const LevyConfig& cfg) {
  double worst = 0.0;
  for (std::size_t x : points) {
    if (x >= f.size() || x >= g.size()) {
      throw Error(ErrorCode::DomainMismatch, "point " + std::to_string(x) + " outside map domain");
    }
    worst = std::max(worst, levy_distance(f[x], g[x], cfg));
  }
  return worst;
}

double uniform_distance(std::span<const StepCdf> f, std::span<const StepCdf> g, const LevyConfig& cfg) {
  if (f.size() != g.size()) {
    throw Error(ErrorCode::DomainMismatch,
                "maps of sizes " + std::to_string(f.size()) + " and " + std::to_string(g.size()));
  }
  double worst = 0.0;
  for (std::size_t x = 0; x < f.size(); ++x) worst = std::max(worst, levy_distance(f[x], g[x], cfg));
  return worst;
}

bool is_weak_limit(std::span<const StepCdf> seq, const StepCdf& limit, double tol, std::size_t tail,
                   const LevyConfig& cfg) {
  if (tail == 0 || tail > seq.size()) {
    throw Error(ErrorCode::ArgOutOfRange, "tail " + std::to_string(tail) + " for length " + std::to_string(seq.size()));
  }
  return std::all_of(seq.end() - static_cast<std::ptrdiff_t>(tail), seq.end(),
                     [&](const StepCdf& fn) { return levy_distance(fn, limit, cfg) < tol; });
}

}  // namespace pms
