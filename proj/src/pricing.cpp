#include "packtrack/pricing.hpp"

#include <algorithm>
#include <cassert>
#include <limits>

namespace packtrack {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// One DP cell. A fresh track may start here only when every leading slot is
// padding (the start value is theta0; padded slots carry zero lambda), so a
// backpointer chain always spells out the full padded-window decomposition
// of its track.
inline void relax_cell(const Instance& inst, std::span<const double> lambda,
                       std::span<const char> allowed, int s, double* ell,
                       int* backpointer) {
  if (!allowed.empty() && !allowed[s]) {
    ell[s] = kInf;
    backpointer[s] = kUnreachable;
    return;
  }
  const Subtrack& st = inst.graph.subtracks[s];
  double best = kInf;
  int bp = kUnreachable;
  bool start_ok = true;
  for (std::size_t k = 0; k + 1 < st.slots.size(); ++k)
    if (st.slots[k] != kNoObs) {
      start_ok = false;
      break;
    }
  if (start_ok) {
    best = inst.theta0;
    bp = kStartMark;
  }
  for (int pred : inst.graph.predecessors[s]) {
    if (ell[pred] < best) {
      best = ell[pred];
      bp = pred;
    }
  }
  if (bp == kUnreachable) {
    ell[s] = kInf;
    backpointer[s] = kUnreachable;
    return;
  }
  ell[s] = (st.cost + lambda[st.last_detection()]) + best;
  backpointer[s] = bp;
}

}  // namespace

CostToGo cost_to_go_serial(const Instance& instance,
                           std::span<const double> lambda,
                           std::span<const char> allowed) {
  const int n = static_cast<int>(instance.graph.size());
  CostToGo ctg;
  ctg.ell.assign(n, kInf);
  ctg.backpointer.assign(n, kUnreachable);
  for (const auto& [begin, end] : instance.graph.layers)
    for (int s = begin; s < end; ++s)
      relax_cell(instance, lambda, allowed, s, ctg.ell.data(),
                 ctg.backpointer.data());
  return ctg;
}

CostToGo cost_to_go_parallel(const Instance& instance,
                             std::span<const double> lambda,
                             std::span<const char> allowed) {
  const int n = static_cast<int>(instance.graph.size());
  CostToGo ctg;
  ctg.ell.assign(n, kInf);
  ctg.backpointer.assign(n, kUnreachable);
  double* ell = ctg.ell.data();
  int* bp = ctg.backpointer.data();
  // all predecessors of a layer live in strictly earlier layers, so each
  // layer is a clean parallel sweep
  for (const auto& [begin, end] : instance.graph.layers) {
#pragma omp parallel for schedule(static) if (end - begin >= 64)
    for (int s = begin; s < end; ++s)
      relax_cell(instance, lambda, allowed, s, ell, bp);
  }
  return ctg;
}

CostToGo compute_cost_to_go(const Instance& instance,
                            std::span<const double> lambda,
                            std::span<const char> allowed) {
  if (instance.graph.size() >= 4096)
    return cost_to_go_parallel(instance, lambda, allowed);
  return cost_to_go_serial(instance, lambda, allowed);
}

std::vector<int> reconstruct_track(const Instance& instance,
                                   const CostToGo& ctg, int terminal) {
  std::vector<int> chain;
  int s = terminal;
  while (true) {
    assert(ctg.backpointer[s] != kUnreachable);
    chain.push_back(s);
    if (ctg.backpointer[s] == kStartMark) break;
    s = ctg.backpointer[s];
  }
  std::reverse(chain.begin(), chain.end());
  std::vector<int> detections;
  for (int slot : instance.graph.subtracks[chain.front()].slots)
    if (slot != kNoObs) detections.push_back(slot);
  for (std::size_t i = 1; i < chain.size(); ++i)
    detections.push_back(instance.graph.subtracks[chain[i]].last_detection());
  return detections;
}

std::vector<Track> violated_columns(const Instance& instance,
                                    const CostToGo& ctg, double epsilon) {
  std::vector<int> terminals;
  for (int s = 0; s < static_cast<int>(ctg.ell.size()); ++s)
    if (ctg.ell[s] < -epsilon) terminals.push_back(s);
  std::stable_sort(terminals.begin(), terminals.end(),
                   [&](int a, int b) { return ctg.ell[a] < ctg.ell[b]; });
  std::vector<Track> out;
  out.reserve(terminals.size());
  for (int s : terminals) {
    Track t;
    t.detections = reconstruct_track(instance, ctg, s);
    // chain-order accumulation: theta0, then each window front to back
    double acc = instance.theta0;
    std::vector<int> chain;
    for (int cur = s; cur != kStartMark; cur = ctg.backpointer[cur])
      chain.push_back(cur);
    for (auto it = chain.rbegin(); it != chain.rend(); ++it)
      acc += instance.graph.subtracks[*it].cost;
    t.cost = acc;
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<Track> column_lambda(const Instance& instance,
                                 std::span<const double> lambda,
                                 double epsilon) {
  const CostToGo ctg = compute_cost_to_go(instance, lambda);
  return violated_columns(instance, ctg, epsilon);
}

}  // namespace packtrack
