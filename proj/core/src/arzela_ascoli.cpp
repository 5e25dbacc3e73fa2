#include "pms/arzela_ascoli.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "pms/error.hpp"

namespace pms {

std::vector<std::size_t> select_cauchy_subsequence(std::span<const StepCdf> cdfs, double eps) {
  if (!(eps > 0.0) || eps > 1.0) throw Error(ErrorCode::ArgOutOfRange, "eps must lie in (0, 1]");
  if (cdfs.empty()) throw Error(ErrorCode::ArgOutOfRange, "empty sequence");

  const double delta = eps / 4.0;
  std::map<std::vector<std::int64_t>, std::vector<std::size_t>> buckets;
  for (std::size_t i = 0; i < cdfs.size(); ++i) buckets[grid_key(quantize(cdfs[i], delta), delta)].push_back(i);

  const std::vector<std::size_t>* best = nullptr;
  for (const auto& [key, members] : buckets) {
    if (best == nullptr || members.size() > best->size() ||
        (members.size() == best->size() && members.front() < best->front())) {
      best = &members;
    }
  }
  return *best;
}

ExtractionReport extract_uniform_subsequence(const ProbMetricSpace& space, std::span<const LipschitzMap> maps,
                                             double eps, const LevyConfig& cfg) {
  if (!(eps > 0.0) || eps > 1.0) throw Error(ErrorCode::ArgOutOfRange, "eps must lie in (0, 1]");
  if (maps.empty()) throw Error(ErrorCode::InsufficientSequence, "no maps");
  for (const auto& m : maps) {
    if (m.size() != space.size()) throw Error(ErrorCode::DomainMismatch, "map does not match the space");
  }

  std::vector<std::size_t> survivors(maps.size());
  for (std::size_t i = 0; i < maps.size(); ++i) survivors[i] = i;

  std::vector<StepCdf> column;
  for (std::size_t x = 0; x < space.size(); ++x) {
    column.clear();
    for (std::size_t i : survivors) column.push_back(maps[i][x]);
    std::vector<std::size_t> next;
    for (std::size_t k : select_cauchy_subsequence(column, eps / 2.0)) next.push_back(survivors[k]);
    if (maps.size() >= 2 && next.size() < 2) {
      throw Error(ErrorCode::InsufficientSequence, "refinement left " + std::to_string(next.size()) +
                                                       " map(s) at point " + space.labels()[x] +
                                                       "; supply a longer sequence");
    }
    survivors = std::move(next);
  }

  const LipschitzMap& limit = maps[survivors.back()];
  ExtractionReport report{.selected = survivors, .limit = limit, .residuals = {}, .eps = eps};
  for (std::size_t a = 0; a < survivors.size(); ++a) {
    for (std::size_t b = a + 1; b < survivors.size(); ++b) {
      report.pairwise_dinf = std::max(
          report.pairwise_dinf, uniform_distance(maps[survivors[a]].values(), maps[survivors[b]].values(), cfg));
    }
    report.residuals.push_back(uniform_distance(maps[survivors[a]].values(), limit.values(), cfg));
  }
  report.lipschitz_ok = is_one_lipschitz(space, limit.values()).ok;
  report.success = report.pairwise_dinf <= eps && report.lipschitz_ok;
  return report;
}

bool verify_uniform_convergence(const ProbMetricSpace& space, std::span<const LipschitzMap> maps,
                                std::span<const std::size_t> selected, std::span<const StepCdf> limit, double eps,
                                const LevyConfig& cfg) {
  if (limit.size() != space.size()) throw Error(ErrorCode::DomainMismatch, "limit does not match the space");
  for (std::size_t i : selected) {
    if (i >= maps.size()) throw Error(ErrorCode::IndexOutOfRange, "selected index " + std::to_string(i));
  }
  for (std::size_t k = selected.size() / 2; k < selected.size(); ++k) {
    if (uniform_distance(maps[selected[k]].values(), limit, cfg) > eps) return false;
  }
  return true;
}

ConverseWitness converse_compactness_witness(const ProbMetricSpace& space, std::span<const std::size_t> pts,
                                             double eps, const LevyConfig& cfg) {
  std::vector<LipschitzMap> deltas;
  deltas.reserve(pts.size());
  for (std::size_t x : pts) deltas.push_back(delta_embed(space, x));

  ConverseWitness witness;
  witness.selected = extract_uniform_subsequence(space, deltas, eps, cfg).selected;
  for (std::size_t i : witness.selected)
    for (std::size_t j : witness.selected)
      witness.worst = std::max(witness.worst, levy_to_h0(space.dist(pts[i], pts[j])));
  witness.cauchy_ok = witness.worst <= eps;
  return witness;
}

}  // namespace pms
