#include "packtrack/metrics.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <unordered_set>
#include <vector>

namespace packtrack {

namespace {

std::set<std::vector<int>> id_sets(std::span<const Track> tracks) {
  std::set<std::vector<int>> out;
  for (const Track& t : tracks) {
    std::vector<int> ids(t.detections.begin(), t.detections.end());
    std::sort(ids.begin(), ids.end());
    out.insert(std::move(ids));
  }
  return out;
}

std::unordered_set<std::uint64_t> pair_set(std::span<const Track> tracks) {
  std::unordered_set<std::uint64_t> out;
  for (const Track& t : tracks) {
    std::vector<int> ids(t.detections.begin(), t.detections.end());
    std::sort(ids.begin(), ids.end());
    for (std::size_t i = 0; i < ids.size(); ++i)
      for (std::size_t j = i + 1; j < ids.size(); ++j)
        out.insert((static_cast<std::uint64_t>(ids[i]) << 32) |
                   static_cast<std::uint32_t>(ids[j]));
  }
  return out;
}

}  // namespace

MetricsReport compute_metrics(std::span<const Track> solution,
                              std::span<const Track> truth) {
  MetricsReport rep;
  const auto sol_sets = id_sets(solution);
  const auto gt_sets = id_sets(truth);
  for (const auto& s : sol_sets)
    if (gt_sets.count(s)) ++rep.exact_matches;
  rep.missed = static_cast<int>(gt_sets.size()) - rep.exact_matches;
  rep.spurious = static_cast<int>(sol_sets.size()) - rep.exact_matches;

  const auto sp = pair_set(solution);
  const auto tp = pair_set(truth);
  std::size_t inter = 0;
  for (std::uint64_t k : sp)
    if (tp.count(k)) ++inter;
  const std::size_t uni = sp.size() + tp.size() - inter;
  rep.jaccard = uni == 0 ? 1.0 : static_cast<double>(inter) / uni;
  return rep;
}

}  // namespace packtrack
