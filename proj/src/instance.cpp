#include "packtrack/instance.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace packtrack {

void validate_detections(const std::vector<Detection>& detections) {
  for (std::size_t i = 0; i < detections.size(); ++i) {
    const Detection& d = detections[i];
    if (d.id != static_cast<int>(i))
      throw std::invalid_argument("detection ids must be dense from 0, got " +
                                  std::to_string(d.id) + " at index " +
                                  std::to_string(i));
    if (d.frame < 0)
      throw std::invalid_argument("detection " + std::to_string(d.id) +
                                  " has negative frame");
    if (!std::isfinite(d.pos[0]) || !std::isfinite(d.pos[1]))
      throw std::invalid_argument("detection " + std::to_string(d.id) +
                                  " has non-finite coordinates");
  }
}

void validate_subtrack(const std::vector<Detection>& detections, int window,
                       const Subtrack& s) {
  if (static_cast<int>(s.slots.size()) != window)
    throw std::invalid_argument("subtrack has wrong slot count");
  bool seen_real = false;
  int prev_frame = -1;
  for (int slot : s.slots) {
    if (slot == kNoObs) {
      if (seen_real)
        throw std::invalid_argument("subtrack padding must be a prefix");
      continue;
    }
    if (slot < 0 || slot >= static_cast<int>(detections.size()))
      throw std::invalid_argument("subtrack references unknown detection " +
                                  std::to_string(slot));
    const int f = detections[slot].frame;
    if (seen_real && f <= prev_frame)
      throw std::invalid_argument(
          "subtrack detections must be strictly increasing in frame");
    prev_frame = f;
    seen_real = true;
  }
  if (s.slots.empty() || s.slots.back() == kNoObs)
    throw std::invalid_argument("subtrack must end with a real detection");
}

SubtrackGraph assemble_subtrack_graph(const std::vector<Detection>& detections,
                                      int window,
                                      std::vector<Subtrack> subtracks) {
  if (window < 1) throw std::invalid_argument("window (K) must be >= 1");
  validate_detections(detections);
  for (const Subtrack& s : subtracks) validate_subtrack(detections, window, s);

  auto last_frame = [&](const Subtrack& s) {
    return detections[s.last_detection()].frame;
  };
  std::sort(subtracks.begin(), subtracks.end(),
            [&](const Subtrack& a, const Subtrack& b) {
              const int fa = last_frame(a), fb = last_frame(b);
              if (fa != fb) return fa < fb;
              return a.slots < b.slots;
            });
  for (std::size_t i = 0; i + 1 < subtracks.size(); ++i)
    if (subtracks[i].slots == subtracks[i + 1].slots)
      throw std::invalid_argument("duplicate subtrack");

  SubtrackGraph g;
  g.window = window;
  g.subtracks = std::move(subtracks);
  const int n = static_cast<int>(g.subtracks.size());
  for (int i = 0; i < n; ++i) g.subtracks[i].id = i;

  g.terminal_index.assign(detections.size(), {});
  for (int i = 0; i < n; ++i)
    g.terminal_index[g.subtracks[i].last_detection()].push_back(i);

  g.layers.clear();
  for (int i = 0; i < n;) {
    int j = i;
    const int f = last_frame(g.subtracks[i]);
    while (j < n && last_frame(g.subtracks[j]) == f) ++j;
    g.layers.emplace_back(i, j);
    i = j;
  }

  g.predecessors.assign(n, {});
  if (window >= 2) {
    // shifted-slot match: pred slots [1..K-1] must equal succ slots [0..K-2]
    std::map<std::vector<int>, std::vector<int>> by_tail;
    for (int i = 0; i < n; ++i) {
      const auto& slots = g.subtracks[i].slots;
      by_tail[std::vector<int>(slots.begin() + 1, slots.end())].push_back(i);
    }
    for (int i = 0; i < n; ++i) {
      const auto& slots = g.subtracks[i].slots;
      auto it = by_tail.find(std::vector<int>(slots.begin(), slots.end() - 1));
      if (it != by_tail.end()) g.predecessors[i] = it->second;
    }
  } else {
    // K = 1: the slot-match condition is vacuous, so any subtrack in a
    // strictly earlier frame may precede (single-slot costs carry no
    // transition structure).
    for (int i = 0; i < n; ++i) {
      const int f = last_frame(g.subtracks[i]);
      for (int j = 0; j < n && last_frame(g.subtracks[j]) < f; ++j)
        g.predecessors[i].push_back(j);
    }
  }
  return g;
}

SubtrackGraph build_subtrack_graph(const std::vector<Detection>& detections,
                                   int window, int neighbors, int max_skip,
                                   const SubtrackCostFn& cost) {
  if (detections.empty())
    throw std::invalid_argument("need at least one detection");
  if (window < 1) throw std::invalid_argument("window (K) must be >= 1");
  if (neighbors < 1) throw std::invalid_argument("neighbors must be >= 1");
  if (max_skip < 1) throw std::invalid_argument("max_skip must be >= 1");
  validate_detections(detections);

  int max_frame = 0;
  for (const Detection& d : detections) max_frame = std::max(max_frame, d.frame);
  std::vector<std::vector<int>> by_frame(max_frame + 1);
  for (const Detection& d : detections) by_frame[d.frame].push_back(d.id);

  // out-edges: the `neighbors` nearest detections in each reachable frame
  std::vector<std::vector<int>> out(detections.size());
  for (const Detection& d : detections) {
    for (int skip = 1; skip <= max_skip; ++skip) {
      const int f = d.frame + skip;
      if (f > max_frame) break;
      std::vector<std::pair<double, int>> ranked;
      for (int cand : by_frame[f]) {
        const double dx = detections[cand].pos[0] - d.pos[0];
        const double dy = detections[cand].pos[1] - d.pos[1];
        ranked.emplace_back(dx * dx + dy * dy, cand);
      }
      const std::size_t keep = std::min<std::size_t>(neighbors, ranked.size());
      std::partial_sort(ranked.begin(), ranked.begin() + keep, ranked.end());
      for (std::size_t i = 0; i < keep; ++i) out[d.id].push_back(ranked[i].second);
    }
    std::sort(out[d.id].begin(), out[d.id].end());
  }

  // all directed paths of 1..window nodes
  std::vector<std::vector<int>> paths;
  std::vector<std::vector<int>> frontier;
  for (const Detection& d : detections) frontier.push_back({d.id});
  for (int len = 1; len <= window; ++len) {
    for (const auto& p : frontier) paths.push_back(p);
    if (len == window) break;
    std::vector<std::vector<int>> next;
    for (const auto& p : frontier) {
      for (int succ : out[p.back()]) {
        auto q = p;
        q.push_back(succ);
        next.push_back(std::move(q));
      }
    }
    frontier = std::move(next);
  }

  std::vector<Subtrack> subtracks;
  subtracks.reserve(paths.size());
  for (const auto& p : paths) {
    Subtrack s;
    s.slots.assign(window - p.size(), kNoObs);
    s.slots.insert(s.slots.end(), p.begin(), p.end());
    s.cost = cost ? cost(std::span<const int>(s.slots)) : 0.0;
    subtracks.push_back(std::move(s));
  }
  return assemble_subtrack_graph(detections, window, std::move(subtracks));
}

Instance make_instance(std::vector<Detection> detections, int window,
                       double theta0, std::vector<Subtrack> subtracks) {
  Instance inst;
  inst.graph = assemble_subtrack_graph(detections, window, std::move(subtracks));
  inst.detections = std::move(detections);
  inst.theta0 = theta0;
  inst.window = window;
  return inst;
}

std::vector<std::vector<int>> padded_windows(std::span<const int> track,
                                             int window) {
  std::vector<std::vector<int>> windows;
  windows.reserve(track.size());
  for (std::size_t i = 0; i < track.size(); ++i) {
    std::vector<int> w;
    const std::size_t first = i + 1 >= static_cast<std::size_t>(window)
                                  ? i + 1 - window
                                  : 0;
    w.assign(window - (i - first + 1), kNoObs);
    for (std::size_t k = first; k <= i; ++k) w.push_back(track[k]);
    windows.push_back(std::move(w));
  }
  return windows;
}

int find_subtrack(const SubtrackGraph& graph, std::span<const int> slots) {
  const int last = slots.back();
  if (last < 0 || last >= static_cast<int>(graph.terminal_index.size()))
    return -1;
  for (int id : graph.terminal_index[last]) {
    const auto& cand = graph.subtracks[id].slots;
    if (std::equal(cand.begin(), cand.end(), slots.begin(), slots.end()))
      return id;
  }
  return -1;
}

double track_cost(std::span<const int> track, const Instance& instance) {
  if (track.empty()) throw std::invalid_argument("empty track");
  for (std::size_t i = 0; i + 1 < track.size(); ++i) {
    if (instance.detections[track[i]].frame >=
        instance.detections[track[i + 1]].frame)
      throw std::invalid_argument(
          "track detections must be strictly increasing in frame");
  }
  double acc = instance.theta0;
  for (const auto& w : padded_windows(track, instance.window)) {
    const int id = find_subtrack(instance.graph, w);
    if (id < 0)
      throw std::runtime_error("track window is not a subtrack of the graph");
    acc += instance.graph.subtracks[id].cost;
  }
  return acc;
}

}  // namespace packtrack
