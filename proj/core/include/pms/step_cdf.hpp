#pragma once

// Exact finite representation of distance distribution functions (the set
// Delta+): left-continuous, nondecreasing step functions with F(0) = 0 and an
// implicit value of 1 at +infinity.

#include <cstdint>
#include <initializer_list>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace pms {

/// Absolute tolerance for values and breakpoints during canonicalization and
/// in the default comparisons.
inline constexpr double kTolerance = 1e-12;
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// One jump of a step function: the function equals `v` just right of `t`.
struct Breakpoint {
  double t = 0.0;
  double v = 0.0;
};

/// Member of Delta+. The function is 0 on (-inf, t_1], v_i on (t_i, t_{i+1}]
/// and v_n on (t_n, +inf). The empty sequence is H_inf.
///
/// Invariants (enforced by every constructor): t_1 >= 0, t and v strictly
/// increasing, 0 < v <= 1. Instances are immutable.
class StepCdf {
 public:
  /// H_inf.
  StepCdf() = default;

  /// Canonicalizing constructor. Sorts, merges coincident breakpoints and
  /// redundant values. Throws NegativeBreakpoint, NonMonotoneValue,
  /// ValueOutOfRange or NonFiniteInput.
  static StepCdf from_points(std::span<const Breakpoint> points);
  static StepCdf from_points(std::initializer_list<Breakpoint> points) {
    return from_points(std::span<const Breakpoint>(points.begin(), points.size()));
  }

  /// Builds a step function from values on consecutive intervals:
  /// `values[k]` is the value on (cuts[k], cuts[k+1]] and the last value holds
  /// on (cuts.back(), +inf). Cuts must be sorted and nonnegative. Values are
  /// clamped to [0, 1] and made monotone with a running max, which absorbs
  /// rounding from arithmetic on the inputs.
  static StepCdf from_interval_values(std::span<const double> cuts, std::span<const double> values);

  /// H_a; a = +inf gives H_inf. Throws NegativeBreakpoint for a < 0.
  static StepCdf heaviside(double a);

  /// Left-continuous evaluation: v_i for the largest i with t_i < t, 0 if none,
  /// 1 at t = +inf.
  double operator()(double t) const noexcept;

  /// Right limit F(t+): v_i for the largest i with t_i <= t.
  double right_limit(double t) const noexcept;

  std::span<const Breakpoint> breaks() const noexcept { return breaks_; }
  std::size_t size() const noexcept { return breaks_.size(); }
  bool is_infinity() const noexcept { return breaks_.empty(); }

  /// Value on the last interval (t_n, +inf); 0 for H_inf.
  double final_value() const noexcept { return breaks_.empty() ? 0.0 : breaks_.back().v; }

  /// Canonical sequences agree within kTolerance.
  friend bool operator==(const StepCdf& a, const StepCdf& b) noexcept;

 private:
  explicit StepCdf(std::vector<Breakpoint> breaks) : breaks_(std::move(breaks)) {}

  std::vector<Breakpoint> breaks_;
};

inline StepCdf make_step_cdf(std::span<const Breakpoint> points) { return StepCdf::from_points(points); }
inline StepCdf heaviside(double a) { return StepCdf::heaviside(a); }
inline double evaluate(const StepCdf& f, double t) noexcept { return f(t); }

/// Largest value of F(t) - G(t + shift) over t in (0, horizon), with a point
/// where it is attained. Exact: both terms are constant between consecutive
/// breakpoints of F and shifted breakpoints of G, so one probe per gap decides.
struct ShiftedExcess {
  double value = -kInfinity;
  double at = 0.0;
};
ShiftedExcess shifted_excess(const StepCdf& f, const StepCdf& g, double shift, double horizon = kInfinity);

/// F <= G pointwise, up to `tol` both horizontally and vertically:
/// F(t) <= G(t + tol) + tol for all t. With tol = 0 the test is exact.
bool leq(const StepCdf& f, const StepCdf& g, double tol = kTolerance);

/// A point t where F(t) > G(t + tol) + tol, if any.
std::optional<double> leq_violation(const StepCdf& f, const StepCdf& g, double tol = kTolerance);

/// Mutual leq; tolerant equality used by axiom checks.
bool approx_equal(const StepCdf& f, const StepCdf& g, double tol = kTolerance);

/// Exact pointwise maximum. Throws EmptyFamily.
StepCdf pointwise_sup(std::span<const StepCdf> family);

/// Rounds F down onto the grid {k*delta} (breakpoints capped at 1/delta,
/// values floored to multiples of delta). The result G satisfies G <= F and
/// d_L(F, G) <= 2 * delta; the image is finite for fixed delta.
/// Throws InvalidDelta unless 0 < delta <= 1.
StepCdf quantize(const StepCdf& f, double delta);

/// Integer key of a quantized function: grid indices of its breakpoints and
/// values. Equal keys iff equal quantized functions.
std::vector<std::int64_t> grid_key(const StepCdf& quantized, double delta);

}  // namespace pms
