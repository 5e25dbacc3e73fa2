#include "pms/step_cdf.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pms/error.hpp"

namespace pms {
namespace {

std::string describe(const Breakpoint& b) {
  std::ostringstream os;
  os << "(" << b.t << ", " << b.v << ")";
  return os.str();
}

// Appends (t, v) to a canonical sequence under construction. Values that do
// not rise above the previous one are dropped; a breakpoint within tolerance
// of the previous one replaces it.
void push_canonical(std::vector<Breakpoint>& out, double t, double v) {
  if (v <= kTolerance) return;
  if (!out.empty()) {
    if (v <= out.back().v + kTolerance) return;
    if (t - out.back().t <= kTolerance) {
      out.back().v = v;
      return;
    }
  }
  out.push_back({t, v});
}

}  // namespace

StepCdf StepCdf::from_points(std::span<const Breakpoint> points) {
  std::vector<Breakpoint> sorted(points.begin(), points.end());
  for (auto& b : sorted) {
    if (!std::isfinite(b.t) || !std::isfinite(b.v)) throw Error(ErrorCode::NonFiniteInput, describe(b));
    if (b.t < 0.0) throw Error(ErrorCode::NegativeBreakpoint, describe(b));
    if (!(b.v > 0.0) || b.v > 1.0 + kTolerance) throw Error(ErrorCode::ValueOutOfRange, describe(b));
    b.v = std::min(b.v, 1.0);
  }
  std::sort(sorted.begin(), sorted.end(),
            [](const Breakpoint& a, const Breakpoint& b) { return a.t < b.t || (a.t == b.t && a.v < b.v); });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i].v < sorted[i - 1].v - kTolerance) {
      throw Error(ErrorCode::NonMonotoneValue, describe(sorted[i - 1]) + " then " + describe(sorted[i]));
    }
  }
  std::vector<Breakpoint> out;
  out.reserve(sorted.size());
  for (const auto& b : sorted) push_canonical(out, b.t, b.v);
  return StepCdf(std::move(out));
}

StepCdf StepCdf::from_interval_values(std::span<const double> cuts, std::span<const double> values) {
  std::vector<Breakpoint> out;
  double running = 0.0;
  const std::size_t n = std::min(cuts.size(), values.size());
  for (std::size_t k = 0; k < n; ++k) {
    running = std::max(running, std::clamp(values[k], 0.0, 1.0));
    push_canonical(out, std::max(cuts[k], 0.0), running);
  }
  return StepCdf(std::move(out));
}

StepCdf StepCdf::heaviside(double a) {
  if (std::isnan(a)) throw Error(ErrorCode::NonFiniteInput, "heaviside(nan)");
  if (a < 0.0) throw Error(ErrorCode::NegativeBreakpoint, "heaviside(" + std::to_string(a) + ")");
  if (a == kInfinity) return StepCdf();
  return StepCdf({Breakpoint{a, 1.0}});
}

double StepCdf::operator()(double t) const noexcept {
  if (t == kInfinity) return 1.0;
  auto it = std::partition_point(breaks_.begin(), breaks_.end(), [t](const Breakpoint& b) { return b.t < t; });
  return it == breaks_.begin() ? 0.0 : std::prev(it)->v;
}

double StepCdf::right_limit(double t) const noexcept {
  if (t == kInfinity) return 1.0;
  auto it = std::partition_point(breaks_.begin(), breaks_.end(), [t](const Breakpoint& b) { return b.t <= t; });
  return it == breaks_.begin() ? 0.0 : std::prev(it)->v;
}

bool operator==(const StepCdf& a, const StepCdf& b) noexcept {
  if (a.breaks_.size() != b.breaks_.size()) return false;
  for (std::size_t i = 0; i < a.breaks_.size(); ++i) {
    if (std::abs(a.breaks_[i].t - b.breaks_[i].t) > kTolerance) return false;
    if (std::abs(a.breaks_[i].v - b.breaks_[i].v) > kTolerance) return false;
  }
  return true;
}

ShiftedExcess shifted_excess(const StepCdf& f, const StepCdf& g, double shift, double horizon) {
  ShiftedExcess best;
  if (!(horizon > 0.0)) return best;

  std::vector<double> cuts;
  cuts.reserve(f.size() + g.size() + 1);
  auto keep = [&](double c) {
    if (c > 0.0 && c < horizon) cuts.push_back(c);
  };
  for (const auto& b : f.breaks()) keep(b.t);
  for (const auto& b : g.breaks()) keep(b.t - shift);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  auto probe = [&](double t) {
    const double gap = f(t) - g(t + shift);
    if (gap > best.value) best = {gap, t};
  };
  double left = 0.0;
  for (double c : cuts) {
    probe(0.5 * (left + c));
    left = c;
  }
  probe(horizon == kInfinity ? left + 1.0 : 0.5 * (left + horizon));
  return best;
}

std::optional<double> leq_violation(const StepCdf& f, const StepCdf& g, double tol) {
  const auto excess = shifted_excess(f, g, tol);
  if (excess.value > tol) return excess.at;
  return std::nullopt;
}

bool leq(const StepCdf& f, const StepCdf& g, double tol) { return !leq_violation(f, g, tol).has_value(); }

bool approx_equal(const StepCdf& f, const StepCdf& g, double tol) { return leq(f, g, tol) && leq(g, f, tol); }

StepCdf pointwise_sup(std::span<const StepCdf> family) {
  if (family.empty()) throw Error(ErrorCode::EmptyFamily, "pointwise_sup of an empty family");
  if (family.size() == 1) return family.front();

  std::vector<double> cuts;
  for (const auto& f : family)
    for (const auto& b : f.breaks()) cuts.push_back(b.t);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  // Value on (cuts[k], cuts[k+1]] is read at the right endpoint; every input
  // is left-continuous with breakpoints among the cuts.
  std::vector<double> values(cuts.size(), 0.0);
  for (std::size_t k = 0; k < cuts.size(); ++k) {
    for (const auto& f : family) {
      const double v = k + 1 < cuts.size() ? f(cuts[k + 1]) : f.final_value();
      values[k] = std::max(values[k], v);
    }
  }
  return StepCdf::from_interval_values(cuts, values);
}

StepCdf quantize(const StepCdf& f, double delta) {
  if (!(delta > 0.0) || delta > 1.0) throw Error(ErrorCode::InvalidDelta, std::to_string(delta));
  const auto last_cell = static_cast<std::int64_t>(std::floor(1.0 / (delta * delta) + 1e-9));

  std::vector<double> cuts;
  std::vector<double> values;
  for (const auto& b : f.breaks()) {
    // First grid point k*delta at or right of the breakpoint.
    auto k = static_cast<std::int64_t>(std::ceil(b.t / delta));
    if (k > 0 && static_cast<double>(k - 1) * delta >= b.t) --k;
    if (k > last_cell) break;
    const double level = std::min(std::floor(b.v / delta + 1e-9) * delta, b.v);
    const double cut = static_cast<double>(k) * delta;
    if (!cuts.empty() && cuts.back() == cut) {
      values.back() = level;
    } else {
      cuts.push_back(cut);
      values.push_back(level);
    }
  }
  return StepCdf::from_interval_values(cuts, values);
}

std::vector<std::int64_t> grid_key(const StepCdf& quantized, double delta) {
  std::vector<std::int64_t> key;
  key.reserve(2 * quantized.size());
  for (const auto& b : quantized.breaks()) {
    key.push_back(std::llround(b.t / delta));
    key.push_back(std::llround(b.v / delta));
  }
  return key;
}

}  // namespace pms
