#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace packtrack {

// Slot value marking a padded "no observation" entry in a subtrack window.
// Padded slots carry an implicit zero dual value.
inline constexpr int kNoObs = -1;

struct Detection {
  int id = 0;
  int frame = 0;
  std::array<double, 2> pos{0.0, 0.0};
  std::optional<double> confidence;
};

// A window of up to `window` detections, left-padded with kNoObs. Real slots
// are strictly increasing in frame and the last slot is always real.
struct Subtrack {
  int id = 0;
  std::vector<int> slots;
  double cost = 0.0;

  int last_detection() const { return slots.back(); }
  int real_count() const {
    int n = 0;
    for (int s : slots)
      if (s != kNoObs) ++n;
    return n;
  }
};

// Subtrack DAG. Subtracks are stored in topological order: sorted by the
// frame of their last detection, ties broken by slot vector; ids are dense
// indices into `subtracks`.
struct SubtrackGraph {
  int window = 1;  // K
  std::vector<Subtrack> subtracks;
  // predecessors[s]: ids of subtracks that may directly precede s
  // (sliding-window slot match, sentinel matches sentinel), ascending.
  std::vector<std::vector<int>> predecessors;
  // terminal_index[d]: ids of subtracks whose last slot is detection d.
  std::vector<std::vector<int>> terminal_index;
  // [begin, end) runs of equal last-detection frame, in frame order.
  std::vector<std::pair<int, int>> layers;

  std::size_t size() const { return subtracks.size(); }
};

// A full track: detection ids strictly increasing in frame, plus its cost
// (instancing cost + the cost of every padded window).
struct Track {
  std::vector<int> detections;
  double cost = 0.0;
};

struct Instance {
  std::vector<Detection> detections;
  SubtrackGraph graph;
  double theta0 = 0.0;
  int window = 1;  // K

  int num_detections() const { return static_cast<int>(detections.size()); }
};

using SubtrackCostFn = std::function<double(std::span<const int> slots)>;

// Throws std::invalid_argument unless ids are dense from 0, frames are
// non-negative and coordinates finite.
void validate_detections(const std::vector<Detection>& detections);

// Throws std::invalid_argument unless the subtrack has `window` slots with
// padding only as a prefix, a real last slot, valid detection ids and
// strictly increasing frames.
void validate_subtrack(const std::vector<Detection>& detections, int window,
                       const Subtrack& subtrack);

// Builds the geometric subtrack DAG: detection d links to its `neighbors`
// spatially nearest detections in each of the next `max_skip` frames
// (distance ties broken by smaller id); subtracks are all directed paths of
// 1..window nodes in that digraph, shorter ones left-padded. `cost` is
// evaluated once per subtrack on its padded slot vector.
SubtrackGraph build_subtrack_graph(const std::vector<Detection>& detections,
                                   int window, int neighbors, int max_skip,
                                   const SubtrackCostFn& cost);

// Assembles a graph from an explicit subtrack list (used by file loading and
// hand-built fixtures): validates slots, sorts canonically, assigns ids and
// derives predecessors, terminal index and frame layers.
SubtrackGraph assemble_subtrack_graph(const std::vector<Detection>& detections,
                                      int window,
                                      std::vector<Subtrack> subtracks);

Instance make_instance(std::vector<Detection> detections, int window,
                       double theta0, std::vector<Subtrack> subtracks);

// The padded windows of a detection sequence, earliest first; one window per
// detection, each ending at that detection.
std::vector<std::vector<int>> padded_windows(std::span<const int> track,
                                             int window);

// Id of the subtrack with exactly these padded slots, or -1.
int find_subtrack(const SubtrackGraph& graph, std::span<const int> slots);

// Cost of a track: theta0 plus the cost of each of its padded windows,
// accumulated in window order. Throws std::runtime_error if some window is
// not a subtrack of the graph.
double track_cost(std::span<const int> track, const Instance& instance);

}  // namespace packtrack
