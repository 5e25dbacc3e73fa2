#pragma once

// t-norms, the sup-convolution triangle function they induce, and validators
// for the triangle-function axioms, sup-continuity and weak continuity.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pms/levy.hpp"
#include "pms/step_cdf.hpp"

namespace pms {

/// Outcome of one axiom check, with the first counterexample on failure.
struct AxiomResult {
  AxiomResult() = default;
  explicit AxiomResult(std::string name) : axiom(std::move(name)) {}

  std::string axiom;
  bool passed = true;
  std::size_t checked = 0;
  std::string witness;
};

struct AxiomReport {
  std::vector<AxiomResult> axioms;

  bool all_passed() const;
  /// nullptr if no axiom of that name was checked.
  const AxiomResult* find(std::string_view axiom) const;
};

/// Binary operation on [0, 1]: commutative, associative, monotone, with
/// T(x, 1) = x. The built-ins are left-continuous.
class TNorm {
 public:
  enum class Kind { Minimum, Product, Lukasiewicz, Custom };
  using Fn = std::function<double(double, double)>;

  static TNorm minimum();
  static TNorm product();
  static TNorm lukasiewicz();

  /// Accepts an arbitrary operation after a grid check of the axioms
  /// (step 1/64). Throws InvalidTNorm with the failing axiom. The operation
  /// must be stateless and left-continuous for sup_convolution to be exact.
  static TNorm custom(std::string name, Fn fn);

  /// "min", "prod" or "luka" (long names accepted). Throws InvalidTNorm.
  static TNorm by_name(std::string_view name);

  /// Throws ArgOutOfRange unless x, y are in [0, 1].
  double operator()(double x, double y) const;

  Kind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }

 private:
  TNorm(Kind kind, std::string name, Fn fn) : kind_(kind), name_(std::move(name)), fn_(std::move(fn)) {}

  Kind kind_;
  std::string name_;
  Fn fn_;
};

inline double tnorm_eval(const TNorm& t, double x, double y) { return t(x, y); }

/// Grid check of range, commutativity, associativity, monotonicity and the
/// boundary condition on {0, step, 2*step, ..., 1}.
AxiomReport check_tnorm_axioms(const TNorm::Fn& fn, double step = 1.0 / 64.0);

/// (F *_T L)(t) = sup_{s+u=t} T(F(s), L(u)).
///
/// Computed exactly as max_i T(v_i, L(t - a_i)) over the breakpoints (a_i, v_i)
/// of F, which is valid because T is monotone and left-continuous and L is
/// left-continuous. Breakpoints of the result lie in {a_i + b_j}.
StepCdf sup_convolution(const TNorm& t, const StepCdf& f, const StepCdf& l);

/// A binary operation on Delta+. Canonical instances are sup-convolutions;
/// arbitrary operations are accepted so that the validators can be exercised.
class TriangleFunction {
 public:
  using Fn = std::function<StepCdf(const StepCdf&, const StepCdf&)>;

  TriangleFunction(std::string name, Fn fn) : name_(std::move(name)), fn_(std::move(fn)) {}

  static TriangleFunction from_tnorm(TNorm t);

  StepCdf operator()(const StepCdf& f, const StepCdf& l) const { return fn_(f, l); }

  const std::string& name() const noexcept { return name_; }
  /// The generating t-norm when this is a sup-convolution.
  const std::optional<TNorm>& tnorm() const noexcept { return tnorm_; }

 private:
  std::string name_;
  Fn fn_;
  std::optional<TNorm> tnorm_;
};

struct CdfTriple {
  StepCdf f;
  StepCdf l;
  StepCdf k;
};

/// Checks closure, commutativity, associativity, neutral element H_0 and
/// monotonicity on the sample triples. Equalities are tested with
/// approx_equal at `tol`; monotonicity uses the pair (F, sup{F, L}).
AxiomReport check_triangle_axioms(const TriangleFunction& star, std::span<const CdfTriple> samples, double tol);

/// sup_i star(F_i, L) == star(sup_i F_i, L) within `tol`. Throws EmptyFamily.
bool check_sup_continuity(const TriangleFunction& star, std::span<const StepCdf> family, const StepCdf& l,
                          double tol);

struct ContinuityCheck {
  bool passed = true;
  /// Index in the sequences of the first tail member that failed.
  std::optional<std::size_t> witness;
  double worst = 0.0;
};

/// Weak continuity of star at (F, L): given F_n -> F and L_n -> L (checked
/// with is_weak_limit at `tol` on the last `tail` members, else
/// PreconditionViolated), tests d_L(star(F_n, L_n), star(F, L)) < 3 * tol on
/// the same tail.
ContinuityCheck check_weak_continuity(const TriangleFunction& star, std::span<const StepCdf> f_seq,
                                      std::span<const StepCdf> l_seq, const StepCdf& f, const StepCdf& l, double tol,
                                      std::size_t tail, const LevyConfig& cfg = {});

}  // namespace pms
