#include "packtrack/oracle.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace packtrack {
namespace oracle {

namespace {

// successor lists derived from the predecessor structure
std::vector<std::vector<int>> successors(const SubtrackGraph& g) {
  std::vector<std::vector<int>> succ(g.size());
  for (std::size_t s = 0; s < g.size(); ++s)
    for (int pred : g.predecessors[s]) succ[pred].push_back(static_cast<int>(s));
  return succ;
}

bool fully_padded_start(const Subtrack& s) {
  for (std::size_t k = 0; k + 1 < s.slots.size(); ++k)
    if (s.slots[k] != kNoObs) return false;
  return true;
}

}  // namespace

std::vector<Track> enumerate_tracks(const Instance& instance) {
  const SubtrackGraph& g = instance.graph;
  const auto succ = successors(g);

  std::vector<Track> tracks;
  // A track is a chain of windows beginning at a fully padded subtrack; walk
  // every such chain, emitting a track at each node. Costs accumulate
  // forward (theta0, then window by window) so they match track_cost
  // without tolerance.
  struct Frame {
    int subtrack;
    double acc;
    std::size_t next = 0;
  };
  for (std::size_t s0 = 0; s0 < g.size(); ++s0) {
    if (!fully_padded_start(g.subtracks[s0])) continue;
    std::vector<Frame> stack;
    std::vector<int> detections;
    for (int slot : g.subtracks[s0].slots)
      if (slot != kNoObs) detections.push_back(slot);
    stack.push_back(
        {static_cast<int>(s0), instance.theta0 + g.subtracks[s0].cost});
    tracks.push_back({detections, stack.back().acc});
    if (tracks.size() > kMaxEnumeratedTracks)
      throw std::runtime_error("track enumeration guard exceeded");
    while (!stack.empty()) {
      Frame& top = stack.back();
      if (top.next < succ[top.subtrack].size()) {
        const int nxt = succ[top.subtrack][top.next++];
        const double acc = top.acc + g.subtracks[nxt].cost;
        detections.push_back(g.subtracks[nxt].last_detection());
        stack.push_back({nxt, acc});
        tracks.push_back({detections, acc});
        if (tracks.size() > kMaxEnumeratedTracks)
          throw std::runtime_error("track enumeration guard exceeded");
      } else {
        if (stack.size() > 1) detections.pop_back();
        stack.pop_back();
      }
    }
  }
  return tracks;
}

MwspResult exact_mwsp(const Instance& instance) {
  std::vector<Track> all = enumerate_tracks(instance);
  // nonnegative-cost tracks never improve a packing
  std::vector<Track> neg;
  for (Track& t : all)
    if (t.cost < 0.0) neg.push_back(std::move(t));
  std::sort(neg.begin(), neg.end(), [](const Track& a, const Track& b) {
    if (a.cost != b.cost) return a.cost < b.cost;
    return a.detections < b.detections;
  });
  const int n = static_cast<int>(neg.size());

  // suffix sums of the (all-negative) costs bound what is still attainable
  std::vector<double> attainable(n + 1, 0.0);
  for (int i = n - 1; i >= 0; --i) attainable[i] = attainable[i + 1] + neg[i].cost;

  std::vector<char> used(instance.detections.size(), 0);
  std::vector<int> chosen, best_choice;
  double best = 0.0;  // the empty selection is always feasible

  auto conflicts = [&](const Track& t) {
    for (int d : t.detections)
      if (used[d]) return true;
    return false;
  };

  std::function<void(int, double)> dfs = [&](int i, double acc) {
    if (acc < best) {
      best = acc;
      best_choice = chosen;
    }
    if (i == n || acc + attainable[i] >= best) return;
    // include neg[i] if disjoint
    if (!conflicts(neg[i])) {
      for (int d : neg[i].detections) used[d] = 1;
      chosen.push_back(i);
      dfs(i + 1, acc + neg[i].cost);
      chosen.pop_back();
      for (int d : neg[i].detections) used[d] = 0;
    }
    dfs(i + 1, acc);
  };
  dfs(0, 0.0);

  MwspResult res;
  res.value = best;
  for (int i : best_choice) res.tracks.push_back(neg[i]);
  return res;
}

MinSlackResult exact_min_slack(const Instance& instance,
                               std::span<const double> lambda,
                               std::span<const double> lambda_rows,
                               std::span<const Triplet> rows) {
  MinSlackResult res;
  res.slack = std::numeric_limits<double>::infinity();
  for (const Track& t : enumerate_tracks(instance)) {
    const double slack = column_slack(t, lambda, lambda_rows, rows);
    if (!res.exists || slack < res.slack) {
      res.exists = true;
      res.slack = slack;
      res.track = t;
    }
  }
  return res;
}

}  // namespace oracle
}  // namespace packtrack
