#pragma once

#include <cstdint>
#include <vector>

#include "packtrack/instance.hpp"

namespace packtrack {

// Synthetic scene: constant-velocity targets in a rectangular arena with
// optional missed detections, clutter, births and deaths. The seed fully
// determines the output.
struct GeneratorConfig {
  std::uint64_t seed = 1;
  int n_targets = 5;
  int n_frames = 20;
  double arena_width = 400.0;
  double arena_height = 400.0;
  double motion_noise = 0.5;      // per-frame trajectory jitter (std-dev)
  double miss_prob = 0.0;         // per-frame detection miss probability
  double clutter_rate = 0.0;      // expected false positives per frame
  double birth_prob = 0.0;        // per-frame probability of a new target
  double death_prob = 0.0;        // per-frame per-target death probability
  // subtrack graph parameters
  int window = 3;   // K
  int neighbors = 3;
  int max_skip = 1;
  double theta0 = 2.0;
};

// Constant-velocity deviation penalty used as the subtrack cost: each window
// earns a fixed reward for its terminal detection and pays for long steps,
// direction/speed changes and skipped frames.
struct CostParams {
  double reward = 1.0;
  double step_weight = 0.5;
  double accel_weight = 1.0;
  double step_scale = 20.0;    // pixels per frame considered "normal"
  double skip_penalty = 0.25;  // per skipped frame inside a window
};

struct Generated {
  Instance instance;
  std::vector<Track> ground_truth;  // detection ids per true target
};

// Cost function over padded slot vectors for the given detections.
SubtrackCostFn motion_cost_fn(const std::vector<Detection>& detections,
                              const CostParams& params);

Generated generate(const GeneratorConfig& config, const CostParams& params = {});

}  // namespace packtrack
