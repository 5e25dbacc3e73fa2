#include "pms/space.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "pms/error.hpp"
#include "pms/levy.hpp"
#include "pms/random.hpp"

namespace pms {
namespace {

std::string label_or_index(std::span<const std::string> labels, std::size_t i) {
  return i < labels.size() ? labels[i] : std::to_string(i);
}

ErrorCode code_for(const std::string& axiom) {
  if (axiom == "identity") return ErrorCode::IdentityViolation;
  if (axiom == "symmetry") return ErrorCode::SymmetryViolation;
  return ErrorCode::TriangleViolation;
}

std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
  return labels;
}

ProbMetricSpace gen_metric_space(Rng& rng, std::size_t n, const TriangleFunction& star) {
  // Dyadic weights keep every path length exact, so the shortest-path matrix
  // satisfies the triangle inequality without rounding slack.
  constexpr double kUnit = 1.0 / 64.0;
  const double none = kInfinity;
  std::vector<double> d(n * n, none);
  for (std::size_t i = 0; i < n; ++i) d[i * n + i] = 0.0;
  auto weight = [&] { return static_cast<double>(4 + rng.index(125)) * kUnit; };
  auto link = [&](std::size_t i, std::size_t j) {
    const double w = weight();
    d[i * n + j] = std::min(d[i * n + j], w);
    d[j * n + i] = d[i * n + j];
  };
  for (std::size_t i = 1; i < n; ++i) link(i, rng.index(i));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (rng.bernoulli(0.3)) link(i, j);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i * n + j] = std::min(d[i * n + j], d[i * n + k] + d[k * n + j]);
  return from_classical_metric(default_labels(n), d, star);
}

bool relax_to_triangle(std::vector<StepCdf>& m, std::size_t n, const TriangleFunction& star) {
  const std::size_t cap = n * n * n * 10;
  for (std::size_t sweep = 0; sweep < cap; ++sweep) {
    bool changed = false;
    for (std::size_t q = 0; q < n; ++q) {
      for (std::size_t p = 0; p < n; ++p) {
        if (p == q) continue;
        for (std::size_t r = p + 1; r < n; ++r) {
          if (r == q) continue;
          const StepCdf through = star(m[p * n + q], m[q * n + r]);
          if (leq(through, m[p * n + r])) continue;
          m[p * n + r] = pointwise_sup(std::vector<StepCdf>{m[p * n + r], through});
          m[r * n + p] = m[p * n + r];
          changed = true;
        }
      }
    }
    if (!changed) return true;
  }
  return false;
}

ProbMetricSpace gen_repair_space(Rng& rng, std::size_t n, const TriangleFunction& star) {
  const StepCdf h0 = StepCdf::heaviside(0.0);
  constexpr int kAttempts = 10;
  std::string last_failure = "no attempt made";
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    std::vector<StepCdf> m(n * n, h0);
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        StepCdf f = random_step_cdf(rng);
        while (approx_equal(f, h0)) f = random_step_cdf(rng);
        m[p * n + q] = f;
        m[q * n + p] = f;
      }
    }
    if (!relax_to_triangle(m, n, star)) {
      last_failure = "relaxation did not reach a fixpoint";
      continue;
    }
    bool degenerate = false;
    for (std::size_t p = 0; p < n && !degenerate; ++p)
      for (std::size_t q = 0; q < n && !degenerate; ++q)
        degenerate = p != q && approx_equal(m[p * n + q], h0);
    if (degenerate) {
      last_failure = "off-diagonal distance collapsed to H_0";
      continue;
    }
    try {
      return make_space(default_labels(n), std::move(m), star);
    } catch (const Error& e) {
      last_failure = e.what();
    }
  }
  throw Error(ErrorCode::GenerationFailed, last_failure);
}

}  // namespace

std::size_t ProbMetricSpace::index_of(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw Error(ErrorCode::UnknownPoint, std::string(label));
  return static_cast<std::size_t>(it - labels_.begin());
}

AxiomReport check_space_axioms(std::span<const std::string> labels, std::span<const StepCdf> matrix,
                               const TriangleFunction& star, double tol) {
  const std::size_t n = labels.size();
  if (matrix.size() != n * n) {
    throw Error(ErrorCode::DomainMismatch,
                "matrix has " + std::to_string(matrix.size()) + " entries for " + std::to_string(n) + " points");
  }
  const StepCdf h0 = StepCdf::heaviside(0.0);
  AxiomResult identity{"identity"}, symmetry{"symmetry"}, triangle{"triangle"};
  auto at = [&](std::size_t p, std::size_t q) -> const StepCdf& { return matrix[p * n + q]; };
  auto name = [&](std::size_t i) { return label_or_index(labels, i); };

  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      ++identity.checked;
      const bool is_h0 = approx_equal(at(p, q), h0, tol);
      if (identity.passed && (p == q) != is_h0) {
        identity.passed = false;
        identity.witness = p == q ? "D(" + name(p) + "," + name(p) + ") != H_0"
                                  : "D(" + name(p) + "," + name(q) + ") = H_0 for distinct points";
      }
      if (q > p) {
        ++symmetry.checked;
        if (symmetry.passed && !approx_equal(at(p, q), at(q, p), tol)) {
          symmetry.passed = false;
          symmetry.witness = "D(" + name(p) + "," + name(q) + ") != D(" + name(q) + "," + name(p) + ")";
        }
      }
    }
  }
  for (std::size_t p = 0; p < n && triangle.passed; ++p) {
    for (std::size_t q = 0; q < n && triangle.passed; ++q) {
      for (std::size_t r = 0; r < n && triangle.passed; ++r) {
        ++triangle.checked;
        if (auto t = leq_violation(star(at(p, q), at(q, r)), at(p, r), tol)) {
          std::ostringstream os;
          os << "D(" << name(p) << "," << name(q) << ")*D(" << name(q) << "," << name(r) << ") > D(" << name(p)
             << "," << name(r) << ") at t=" << *t;
          triangle.passed = false;
          triangle.witness = os.str();
        }
      }
    }
  }
  return AxiomReport{{identity, symmetry, triangle}};
}

ProbMetricSpace make_space(std::vector<std::string> labels, std::vector<StepCdf> matrix, TriangleFunction star,
                           double tol) {
  std::set<std::string> unique(labels.begin(), labels.end());
  if (unique.size() != labels.size()) throw Error(ErrorCode::DomainMismatch, "duplicate point labels");
  const auto report = check_space_axioms(labels, matrix, star, tol);
  for (const auto& axiom : report.axioms) {
    if (!axiom.passed) throw Error(code_for(axiom.axiom), axiom.witness);
  }
  return ProbMetricSpace(std::move(labels), std::move(matrix), std::move(star));
}

ProbMetricSpace from_classical_metric(std::vector<std::string> labels, std::span<const double> d,
                                      TriangleFunction star) {
  const std::size_t n = labels.size();
  if (d.size() != n * n) throw Error(ErrorCode::DomainMismatch, "distance matrix is not n x n");
  auto at = [&](std::size_t p, std::size_t q) { return d[p * n + q]; };
  std::set<double> occurring;
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      const double v = at(p, q);
      if (!std::isfinite(v) || v < 0.0) throw Error(ErrorCode::NotAMetric, "d(" + labels[p] + "," + labels[q] + ")");
      if ((p == q) != (v == 0.0)) throw Error(ErrorCode::NotAMetric, "identity fails at " + labels[p] + "," + labels[q]);
      if (v != at(q, p)) throw Error(ErrorCode::NotAMetric, "asymmetric at " + labels[p] + "," + labels[q]);
      occurring.insert(v);
    }
  }
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      for (std::size_t r = 0; r < n; ++r)
        if (at(p, r) > at(p, q) + at(q, r) + kTolerance * (1.0 + at(p, r))) {
          throw Error(ErrorCode::NotAMetric, "triangle fails at " + labels[p] + "," + labels[q] + "," + labels[r]);
        }
  for (double a : occurring) {
    for (double b : occurring) {
      if (b < a) continue;
      if (!approx_equal(star(StepCdf::heaviside(a), StepCdf::heaviside(b)), StepCdf::heaviside(a + b))) {
        std::ostringstream os;
        os << "H_" << a << " * H_" << b << " != H_" << a + b;
        throw Error(ErrorCode::StarNotAdditiveOnHeaviside, os.str());
      }
    }
  }
  std::vector<StepCdf> matrix;
  matrix.reserve(n * n);
  for (double v : d) matrix.push_back(StepCdf::heaviside(v));
  return make_space(std::move(labels), std::move(matrix), std::move(star));
}

std::vector<std::size_t> strong_neighborhood(const ProbMetricSpace& space, std::size_t x, double t) {
  if (x >= space.size()) throw Error(ErrorCode::UnknownPoint, "index " + std::to_string(x));
  if (!(t > 0.0)) throw Error(ErrorCode::ArgOutOfRange, "neighborhood radius must be positive");
  std::vector<std::size_t> members;
  for (std::size_t y = 0; y < space.size(); ++y)
    if (space.dist(x, y)(t) > 1.0 - t) members.push_back(y);
  return members;
}

bool is_cauchy(const ProbMetricSpace& space, std::span<const std::size_t> seq, double tol, std::size_t tail) {
  if (tail == 0 || tail > seq.size()) throw Error(ErrorCode::ArgOutOfRange, "tail out of range");
  const auto last = seq.subspan(seq.size() - tail);
  for (std::size_t i : last) {
    for (std::size_t j : last) {
      if (i >= space.size() || j >= space.size()) throw Error(ErrorCode::UnknownPoint, "index out of range");
      if (!(levy_to_h0(space.dist(i, j)) < tol)) return false;
    }
  }
  return true;
}

std::vector<std::size_t> covering_net(const ProbMetricSpace& space, double t) {
  const std::size_t n = space.size();
  std::vector<std::vector<std::size_t>> hoods;
  for (std::size_t x = 0; x < n; ++x) hoods.push_back(strong_neighborhood(space, x, t));
  std::vector<bool> covered(n, false);
  std::size_t remaining = n;
  std::vector<std::size_t> net;
  while (remaining > 0) {
    std::size_t best = 0;
    std::size_t best_gain = 0;
    for (std::size_t x = 0; x < n; ++x) {
      const auto gain = static_cast<std::size_t>(
          std::count_if(hoods[x].begin(), hoods[x].end(), [&](std::size_t y) { return !covered[y]; }));
      if (gain > best_gain) {
        best = x;
        best_gain = gain;
      }
    }
    net.push_back(best);
    for (std::size_t y : hoods[best]) {
      if (!covered[y]) {
        covered[y] = true;
        --remaining;
      }
    }
  }
  std::sort(net.begin(), net.end());
  return net;
}

std::vector<std::size_t> constant_subsequence(std::span<const std::size_t> seq) {
  std::map<std::size_t, std::size_t> counts;
  for (std::size_t x : seq) ++counts[x];
  std::size_t mode = 0;
  std::size_t best = 0;
  for (const auto& [point, count] : counts) {
    if (count > best) {
      mode = point;
      best = count;
    }
  }
  std::vector<std::size_t> positions;
  for (std::size_t i = 0; i < seq.size(); ++i)
    if (seq[i] == mode) positions.push_back(i);
  return positions;
}

ProbMetricSpace gen_space(std::uint64_t seed, std::size_t n, SpaceModel model, const TriangleFunction& star) {
  if (n == 0) throw Error(ErrorCode::ArgOutOfRange, "a space needs at least one point");
  Rng rng(seed);
  return model == SpaceModel::Metric ? gen_metric_space(rng, n, star) : gen_repair_space(rng, n, star);
}

}  // namespace pms
