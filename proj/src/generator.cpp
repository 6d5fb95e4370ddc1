#include "packtrack/generator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "packtrack/rng.hpp"

namespace packtrack {

SubtrackCostFn motion_cost_fn(const std::vector<Detection>& detections,
                              const CostParams& params) {
  return [&detections, params](std::span<const int> slots) {
    std::vector<int> real;
    for (int s : slots)
      if (s != kNoObs) real.push_back(s);
    double cost = -params.reward;
    const double scale = params.step_scale;
    // step length and implied-velocity change, normalized per frame
    std::array<double, 2> prev_v{0.0, 0.0};
    bool have_v = false;
    for (std::size_t i = 0; i + 1 < real.size(); ++i) {
      const Detection& a = detections[real[i]];
      const Detection& b = detections[real[i + 1]];
      const double df = b.frame - a.frame;
      const double vx = (b.pos[0] - a.pos[0]) / df;
      const double vy = (b.pos[1] - a.pos[1]) / df;
      const double step2 = (vx * vx + vy * vy) / (scale * scale);
      cost += params.step_weight * step2;
      cost += params.skip_penalty * (df - 1.0);
      if (have_v) {
        const double ax = vx - prev_v[0];
        const double ay = vy - prev_v[1];
        cost += params.accel_weight * (ax * ax + ay * ay) / (scale * scale);
      }
      prev_v = {vx, vy};
      have_v = true;
    }
    return cost;
  };
}

Generated generate(const GeneratorConfig& config, const CostParams& params) {
  if (config.n_targets <= 0 && config.clutter_rate <= 0.0)
    throw std::invalid_argument("degenerate scene: no targets and no clutter");
  if (config.n_frames < 1) throw std::invalid_argument("need frames >= 1");
  for (double p : {config.miss_prob, config.birth_prob, config.death_prob})
    if (p < 0.0 || p > 1.0)
      throw std::invalid_argument("probabilities must lie in [0,1]");

  Rng rng_init(config.seed, 0);
  Rng rng_motion(config.seed, 1);
  Rng rng_miss(config.seed, 2);
  Rng rng_clutter(config.seed, 3);
  Rng rng_life(config.seed, 4);

  struct Target {
    std::array<double, 2> pos{}, vel{};
    bool alive = true;
    bool is_clutter = false;
    std::vector<std::pair<int, std::array<double, 2>>> observed;  // frame, pos
  };

  const double w = config.arena_width, h = config.arena_height;
  auto spawn = [&](Rng& rng) {
    Target t;
    t.pos = {rng.uniform(0.1 * w, 0.9 * w), rng.uniform(0.1 * h, 0.9 * h)};
    const double speed = params.step_scale * rng.uniform(0.15, 0.45);
    const double angle = rng.uniform(0.0, 6.283185307179586);
    t.vel = {speed * std::cos(angle), speed * std::sin(angle)};
    return t;
  };

  std::vector<Target> targets;
  for (int i = 0; i < config.n_targets; ++i) targets.push_back(spawn(rng_init));

  for (int f = 0; f < config.n_frames; ++f) {
    if (f > 0) {
      if (config.birth_prob > 0.0 && rng_life.bernoulli(config.birth_prob))
        targets.push_back(spawn(rng_init));
      for (Target& t : targets) {
        if (!t.alive) continue;
        if (config.death_prob > 0.0 && rng_life.bernoulli(config.death_prob)) {
          t.alive = false;
          continue;
        }
        t.pos[0] += t.vel[0] + rng_motion.normal(0.0, config.motion_noise);
        t.pos[1] += t.vel[1] + rng_motion.normal(0.0, config.motion_noise);
        // reflect at the walls
        for (int k = 0; k < 2; ++k) {
          const double lim = k == 0 ? w : h;
          if (t.pos[k] < 0.0) {
            t.pos[k] = -t.pos[k];
            t.vel[k] = -t.vel[k];
          } else if (t.pos[k] > lim) {
            t.pos[k] = 2.0 * lim - t.pos[k];
            t.vel[k] = -t.vel[k];
          }
        }
      }
    }
    for (Target& t : targets) {
      if (!t.alive) continue;
      if (config.miss_prob > 0.0 && rng_miss.bernoulli(config.miss_prob))
        continue;
      t.observed.emplace_back(f, t.pos);
    }
    const int n_clutter = config.clutter_rate > 0.0
                              ? rng_clutter.poisson(config.clutter_rate)
                              : 0;
    for (int i = 0; i < n_clutter; ++i) {
      // clutter rides along as a one-observation pseudo target so every
      // detection goes through the same id assignment below
      Target c;
      c.alive = false;
      c.is_clutter = true;
      c.observed.emplace_back(
          f, std::array<double, 2>{rng_clutter.uniform(0.0, w),
                                   rng_clutter.uniform(0.0, h)});
      targets.push_back(std::move(c));
    }
  }

  // detections ordered by (frame, x, y), ids dense in that order
  struct Obs {
    int frame;
    std::array<double, 2> pos;
    int target;  // -1 clutter
  };
  std::vector<Obs> observations;
  for (std::size_t i = 0; i < targets.size(); ++i)
    for (const auto& [f, p] : targets[i].observed)
      observations.push_back(
          {f, p, targets[i].is_clutter ? -1 : static_cast<int>(i)});
  std::sort(observations.begin(), observations.end(),
            [](const Obs& a, const Obs& b) {
              if (a.frame != b.frame) return a.frame < b.frame;
              if (a.pos[0] != b.pos[0]) return a.pos[0] < b.pos[0];
              return a.pos[1] < b.pos[1];
            });

  std::vector<Detection> detections;
  std::vector<std::vector<int>> truth_ids(targets.size());
  for (std::size_t i = 0; i < observations.size(); ++i) {
    Detection d;
    d.id = static_cast<int>(i);
    d.frame = observations[i].frame;
    d.pos = observations[i].pos;
    detections.push_back(d);
    if (observations[i].target >= 0)
      truth_ids[observations[i].target].push_back(d.id);
  }
  if (detections.empty())
    throw std::invalid_argument("scene produced no detections");

  Generated out;
  out.instance.graph =
      build_subtrack_graph(detections, config.window, config.neighbors,
                           config.max_skip, motion_cost_fn(detections, params));
  out.instance.detections = std::move(detections);
  out.instance.theta0 = config.theta0;
  out.instance.window = config.window;

  for (auto& ids : truth_ids) {
    if (ids.empty()) continue;
    Track t;
    t.detections = std::move(ids);
    t.cost = 0.0;
    out.ground_truth.push_back(std::move(t));
  }
  return out;
}

}  // namespace packtrack
