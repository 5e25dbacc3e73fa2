#include "pms/lipschitz.hpp"

#include <algorithm>
#include <string>

#include "pms/error.hpp"

namespace pms {
namespace {

StepCdf shifted_right(const StepCdf& f, double s) {
  std::vector<Breakpoint> points(f.breaks().begin(), f.breaks().end());
  for (auto& b : points) b.t += s;
  return StepCdf::from_points(points);
}

}  // namespace

LipschitzCheck is_one_lipschitz(const ProbMetricSpace& space, std::span<const StepCdf> f, double tol) {
  if (f.size() != space.size()) {
    throw Error(ErrorCode::DomainMismatch,
                "map has " + std::to_string(f.size()) + " values for " + std::to_string(space.size()) + " points");
  }
  const auto& star = space.star();
  for (std::size_t x = 0; x < f.size(); ++x) {
    for (std::size_t y = 0; y < f.size(); ++y) {
      if (x == y) continue;
      if (auto t = leq_violation(star(space.dist(x, y), f[y]), f[x], tol)) {
        return LipschitzCheck{false, LipschitzWitness{x, y, *t}};
      }
    }
  }
  return {};
}

LipschitzMap LipschitzMap::certify(const ProbMetricSpace& space, std::vector<StepCdf> values) {
  const auto check = is_one_lipschitz(space, values);
  if (!check) {
    const auto& w = *check.witness;
    throw Error(ErrorCode::NotLipschitz, "D(" + space.labels()[w.x] + "," + space.labels()[w.y] + ")*f(" +
                                             space.labels()[w.y] + ") > f(" + space.labels()[w.x] +
                                             ") at t=" + std::to_string(w.t));
  }
  return LipschitzMap(std::move(values));
}

LipschitzMap upper_envelope_extension(const ProbMetricSpace& space, std::span<const std::size_t> subset,
                                      std::span<const StepCdf> f) {
  if (subset.empty()) throw Error(ErrorCode::EmptySubset, "envelope over an empty subset");
  if (subset.size() != f.size()) throw Error(ErrorCode::DomainMismatch, "subset and values differ in length");
  for (std::size_t y : subset)
    if (y >= space.size()) throw Error(ErrorCode::UnknownPoint, "index " + std::to_string(y));

  std::vector<StepCdf> values;
  values.reserve(space.size());
  std::vector<StepCdf> terms(subset.size());
  for (std::size_t x = 0; x < space.size(); ++x) {
    for (std::size_t i = 0; i < subset.size(); ++i) terms[i] = space.star()(f[i], space.dist(x, subset[i]));
    values.push_back(pointwise_sup(terms));
  }
  return LipschitzMap::certify(space, std::move(values));
}

LipschitzMap delta_embed(const ProbMetricSpace& space, std::size_t x) {
  if (x >= space.size()) throw Error(ErrorCode::UnknownPoint, "index " + std::to_string(x));
  std::vector<StepCdf> values;
  values.reserve(space.size());
  for (std::size_t y = 0; y < space.size(); ++y) values.push_back(space.dist(y, x));
  return LipschitzMap::certify(space, std::move(values));
}

StepCdf rescale_distance(const StepCdf& f, double k) {
  if (!(k >= 0.0)) throw Error(ErrorCode::NegativeScale, std::to_string(k));
  if (k == 0.0) return StepCdf::heaviside(0.0);
  std::vector<Breakpoint> points(f.breaks().begin(), f.breaks().end());
  for (auto& b : points) b.t *= k;
  return StepCdf::from_points(points);
}

EquicontinuityBound equicontinuity_bound(const StepCdf& dxy, const StepCdf& fx, const StepCdf& fy,
                                         const TriangleFunction& star, const LevyConfig& cfg) {
  const StepCdf moved_x = star(dxy, fx);
  const StepCdf moved_y = star(dxy, fy);
  if (!leq(moved_y, fx) || !leq(moved_x, fy)) {
    throw Error(ErrorCode::PreconditionViolated, "values are not Lipschitz-related through D");
  }
  return {levy_distance(fx, fy, cfg),
          std::max(levy_distance(moved_x, fx, cfg), levy_distance(moved_y, fy, cfg))};
}

ModulusEstimate estimate_modulus(const TriangleFunction& star, double eps, const PairSampler& sampler,
                                 std::size_t budget, std::uint64_t seed, const LevyConfig& cfg) {
  if (!(eps > 0.0) || eps > 1.0) throw Error(ErrorCode::ArgOutOfRange, "eps must lie in (0, 1]");
  if (budget == 0) throw Error(ErrorCode::ArgOutOfRange, "budget must be positive");

  struct Sample {
    double radius;
    double moved;
  };
  Rng rng(seed);
  std::vector<Sample> samples;
  samples.reserve(budget);
  for (std::size_t i = 0; i < budget; ++i) {
    const auto [d, f] = sampler(rng);
    samples.push_back({levy_to_h0(d), levy_distance(star(d, f), f, cfg)});
  }

  constexpr int kLevels = 40;
  double eta = eps;
  for (int level = 0; level < kLevels; ++level, eta *= 0.5) {
    std::size_t support = 0;
    bool holds = true;
    for (const auto& s : samples) {
      if (s.radius >= eta) continue;
      ++support;
      holds = holds && s.moved <= eps;
    }
    if (support > 0 && holds) return {eta, support};
  }
  throw Error(ErrorCode::BudgetExhausted, "no grid value of eta was supported by the samples");
}

std::vector<LipschitzMap> gen_lipschitz_maps(const ProbMetricSpace& space, std::size_t count, std::uint64_t seed,
                                             std::size_t prototypes, double jitter) {
  if (prototypes == 0) throw Error(ErrorCode::ArgOutOfRange, "need at least one prototype");
  Rng rng(seed);
  struct Prototype {
    std::vector<std::size_t> subset;
    std::vector<StepCdf> data;
  };
  std::vector<Prototype> protos;
  for (std::size_t p = 0; p < prototypes; ++p) {
    Prototype proto;
    for (std::size_t x = 0; x < space.size(); ++x)
      if (rng.bernoulli(0.5)) proto.subset.push_back(x);
    if (proto.subset.empty()) proto.subset.push_back(rng.index(space.size()));
    for (std::size_t i = 0; i < proto.subset.size(); ++i) proto.data.push_back(random_step_cdf(rng));
    protos.push_back(std::move(proto));
  }

  std::vector<LipschitzMap> maps;
  maps.reserve(count);
  for (std::size_t n = 0; n < count; ++n) {
    const auto& proto = protos[rng.index(protos.size())];
    const double shift = rng.uniform(0.0, jitter);
    std::vector<StepCdf> data;
    for (const auto& f : proto.data) data.push_back(shifted_right(f, shift));
    maps.push_back(upper_envelope_extension(space, proto.subset, data));
  }
  return maps;
}

}  // namespace pms
