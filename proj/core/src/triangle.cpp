#include "pms/triangle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pms/error.hpp"

namespace pms {
namespace {

std::string show(const StepCdf& f) {
  std::ostringstream os;
  os << "[";
  bool first = true;
  for (const auto& b : f.breaks()) {
    os << (first ? "" : ",") << "(" << b.t << "," << b.v << ")";
    first = false;
  }
  os << "]";
  return os.str();
}

bool well_formed(const StepCdf& f) {
  double prev_t = -1.0;
  double prev_v = 0.0;
  for (const auto& b : f.breaks()) {
    if (!(b.t >= 0.0) || b.t <= prev_t || !(b.v > prev_v) || b.v > 1.0) return false;
    prev_t = b.t;
    prev_v = b.v;
  }
  return true;
}

}  // namespace

bool AxiomReport::all_passed() const {
  return std::all_of(axioms.begin(), axioms.end(), [](const AxiomResult& a) { return a.passed; });
}

const AxiomResult* AxiomReport::find(std::string_view axiom) const {
  for (const auto& a : axioms)
    if (a.axiom == axiom) return &a;
  return nullptr;
}

TNorm TNorm::minimum() {
  return TNorm(Kind::Minimum, "min", [](double x, double y) { return std::min(x, y); });
}

TNorm TNorm::product() {
  return TNorm(Kind::Product, "prod", [](double x, double y) { return x * y; });
}

TNorm TNorm::lukasiewicz() {
  // x - (1 - y) keeps T(x, 1) = x exact in floating point.
  return TNorm(Kind::Lukasiewicz, "luka", [](double x, double y) { return std::max(x - (1.0 - y), 0.0); });
}

TNorm TNorm::custom(std::string name, Fn fn) {
  const auto report = check_tnorm_axioms(fn);
  for (const auto& a : report.axioms) {
    if (!a.passed) throw Error(ErrorCode::InvalidTNorm, name + " fails " + a.axiom + ": " + a.witness);
  }
  return TNorm(Kind::Custom, std::move(name), std::move(fn));
}

TNorm TNorm::by_name(std::string_view name) {
  if (name == "min" || name == "minimum") return minimum();
  if (name == "prod" || name == "product") return product();
  if (name == "luka" || name == "lukasiewicz") return lukasiewicz();
  throw Error(ErrorCode::InvalidTNorm, "unknown t-norm '" + std::string(name) + "'");
}

double TNorm::operator()(double x, double y) const {
  if (!(x >= 0.0 && x <= 1.0) || !(y >= 0.0 && y <= 1.0)) {
    throw Error(ErrorCode::ArgOutOfRange, name_ + "(" + std::to_string(x) + ", " + std::to_string(y) + ")");
  }
  return fn_(x, y);
}

AxiomReport check_tnorm_axioms(const TNorm::Fn& fn, double step) {
  std::vector<double> grid;
  const auto cells = static_cast<int>(std::lround(1.0 / step));
  for (int i = 0; i <= cells; ++i) grid.push_back(std::min(1.0, i * step));

  AxiomResult range{"range"}, comm{"commutativity"}, assoc{"associativity"}, mono{"monotonicity"},
      boundary{"boundary"};
  auto fail = [](AxiomResult& r, const std::string& w) {
    if (r.passed) r.witness = w;
    r.passed = false;
  };
  auto args = [](double x, double y) {
    std::ostringstream os;
    os << "(" << x << ", " << y << ")";
    return os.str();
  };

  for (double x : grid) {
    ++boundary.checked;
    if (std::abs(fn(x, 1.0) - x) > kTolerance) fail(boundary, "T" + args(x, 1.0));
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const double y = grid[j];
      const double xy = fn(x, y);
      ++range.checked;
      if (!(xy >= 0.0 && xy <= 1.0)) fail(range, "T" + args(x, y));
      ++comm.checked;
      if (std::abs(xy - fn(y, x)) > kTolerance) fail(comm, "T" + args(x, y));
      if (j + 1 < grid.size()) {
        ++mono.checked;
        if (xy > fn(x, grid[j + 1]) + kTolerance) fail(mono, "T" + args(x, y) + " > T" + args(x, grid[j + 1]));
      }
      if (!(xy >= 0.0 && xy <= 1.0)) continue;
      for (double z : grid) {
        const double yz = fn(y, z);
        if (!(yz >= 0.0 && yz <= 1.0)) continue;
        ++assoc.checked;
        if (std::abs(fn(x, yz) - fn(xy, z)) > 1e-9) {
          std::ostringstream os;
          os << "x=" << x << " y=" << y << " z=" << z;
          fail(assoc, os.str());
        }
      }
    }
  }
  return AxiomReport{{range, comm, assoc, mono, boundary}};
}

StepCdf sup_convolution(const TNorm& t, const StepCdf& f, const StepCdf& l) {
  if (f.is_infinity() || l.is_infinity()) return StepCdf();

  std::vector<double> cuts;
  cuts.reserve(f.size() * l.size());
  for (const auto& a : f.breaks())
    for (const auto& b : l.breaks()) cuts.push_back(a.t + b.t);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  // Both factors are constant strictly between consecutive cuts, so one
  // interior probe per interval gives its exact value.
  std::vector<double> values(cuts.size(), 0.0);
  for (std::size_t k = 0; k < cuts.size(); ++k) {
    const double probe = k + 1 < cuts.size() ? 0.5 * (cuts[k] + cuts[k + 1]) : cuts[k] + 1.0;
    double best = 0.0;
    for (const auto& a : f.breaks()) {
      const double lv = l(probe - a.t);
      if (lv > 0.0) best = std::max(best, t(a.v, lv));
    }
    values[k] = best;
  }
  return StepCdf::from_interval_values(cuts, values);
}

TriangleFunction TriangleFunction::from_tnorm(TNorm t) {
  TriangleFunction star("sup-convolution[" + t.name() + "]",
                        [t](const StepCdf& f, const StepCdf& l) { return sup_convolution(t, f, l); });
  star.tnorm_ = std::move(t);
  return star;
}

AxiomReport check_triangle_axioms(const TriangleFunction& star, std::span<const CdfTriple> samples, double tol) {
  AxiomResult closure{"closure"}, comm{"commutativity"}, assoc{"associativity"}, neutral{"neutral"},
      mono{"monotonicity"};
  auto fail = [](AxiomResult& r, std::size_t index, const std::string& detail) {
    if (r.passed) r.witness = "sample " + std::to_string(index) + ": " + detail;
    r.passed = false;
  };
  const StepCdf h0 = StepCdf::heaviside(0.0);

  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& [f, l, k] = samples[i];

    const StepCdf fl = star(f, l);
    ++closure.checked;
    if (!well_formed(fl)) fail(closure, i, "F*L = " + show(fl));

    ++comm.checked;
    const StepCdf lf = star(l, f);
    if (!approx_equal(fl, lf, tol)) fail(comm, i, "F*L = " + show(fl) + ", L*F = " + show(lf));

    ++assoc.checked;
    const StepCdf left = star(fl, k);
    const StepCdf right = star(f, star(l, k));
    if (!approx_equal(left, right, tol)) fail(assoc, i, "(F*L)*K = " + show(left) + ", F*(L*K) = " + show(right));

    ++neutral.checked;
    const StepCdf fh = star(f, h0);
    if (!approx_equal(fh, f, tol)) fail(neutral, i, "F*H0 = " + show(fh) + ", F = " + show(f));

    ++mono.checked;
    const StepCdf upper = pointwise_sup(std::vector<StepCdf>{f, l});
    const StepCdf fk = star(f, k);
    const StepCdf uk = star(upper, k);
    if (auto t = leq_violation(fk, uk, tol)) {
      fail(mono, i, "F <= sup{F,L} but F*K > sup{F,L}*K at t=" + std::to_string(*t));
    }
  }
  return AxiomReport{{closure, comm, assoc, neutral, mono}};
}

bool check_sup_continuity(const TriangleFunction& star, std::span<const StepCdf> family, const StepCdf& l,
                          double tol) {
  if (family.empty()) throw Error(ErrorCode::EmptyFamily, "sup-continuity needs a nonempty family");
  std::vector<StepCdf> images;
  images.reserve(family.size());
  for (const auto& f : family) images.push_back(star(f, l));
  return approx_equal(pointwise_sup(images), star(pointwise_sup(family), l), tol);
}

ContinuityCheck check_weak_continuity(const TriangleFunction& star, std::span<const StepCdf> f_seq,
                                      std::span<const StepCdf> l_seq, const StepCdf& f, const StepCdf& l, double tol,
                                      std::size_t tail, const LevyConfig& cfg) {
  if (f_seq.size() != l_seq.size()) throw Error(ErrorCode::DomainMismatch, "sequences of different length");
  if (!is_weak_limit(f_seq, f, tol, tail, cfg) || !is_weak_limit(l_seq, l, tol, tail, cfg)) {
    throw Error(ErrorCode::PreconditionViolated, "input sequences do not converge at the given tolerance");
  }
  const StepCdf target = star(f, l);
  ContinuityCheck result;
  for (std::size_t n = f_seq.size() - tail; n < f_seq.size(); ++n) {
    const double d = levy_distance(star(f_seq[n], l_seq[n]), target, cfg);
    result.worst = std::max(result.worst, d);
    if (d >= 3.0 * tol && result.passed) {
      result.passed = false;
      result.witness = n;
    }
  }
  return result;
}

}  // namespace pms
