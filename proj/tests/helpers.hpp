#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "packtrack/generator.hpp"
#include "packtrack/instance.hpp"
#include "packtrack/master_lp.hpp"
#include "packtrack/rng.hpp"

namespace testutil {

using namespace packtrack;

inline Detection det(int id, int frame, double x, double y) {
  Detection d;
  d.id = id;
  d.frame = frame;
  d.pos = {x, y};
  return d;
}

// Two detections a(frame 0), b(frame 1); K = 2, theta0 = 10, window costs
// (-,a) = -3, (-,b) = 0, (a,b) = -9. Tracks: {a} = 7, {b} = 10, {a,b} = -2.
inline Instance chain_instance() {
  std::vector<Detection> dets{det(0, 0, 0, 0), det(1, 1, 1, 0)};
  SubtrackCostFn cost = [](std::span<const int> slots) {
    if (slots[0] == kNoObs && slots[1] == 0) return -3.0;
    if (slots[0] == kNoObs && slots[1] == 1) return 0.0;
    return -9.0;  // (a,b)
  };
  Instance inst;
  inst.graph = build_subtrack_graph(dets, 2, 1, 1, cost);
  inst.detections = dets;
  inst.theta0 = 10.0;
  inst.window = 2;
  return inst;
}

// Fourteen detections over five frames carrying exactly four negative
// tracks that pairwise overlap on the triplet {0, 2, 13}:
//   t_a = {0,2,5,9,13}  cost -5   (covers all three)
//   t_b = {1,2,6,10,13} cost -4   (covers 2, 13)
//   t_c = {0,3,7,11,13} cost -4   (covers 0, 13)
//   t_d = {0,2,4,8,12}  cost -4   (covers 0, 2)
// Every proper chain prefix costs at least +4, so the packing LP relaxes to
// -6 on half-weights of t_b, t_c, t_d while the true optimum picks t_a at -5.
struct QuadConflict {
  Instance instance;
  std::vector<Track> tracks;  // t_a..t_d with costs
  Triplet triplet;            // {0, 2, 13}
};

inline QuadConflict quad_conflict_instance() {
  std::vector<Detection> dets;
  // frames: 0: {0,1}; 1: {2,3}; 2: {4,5,6,7}; 3: {8,9,10,11}; 4: {12,13}
  const int frames[14] = {0, 0, 1, 1, 2, 2, 2, 2, 3, 3, 3, 3, 4, 4};
  for (int i = 0; i < 14; ++i)
    dets.push_back(det(i, frames[i], static_cast<double>(i), 0.0));

  const std::vector<std::vector<int>> flows = {
      {0, 2, 5, 9, 13},   // t_a
      {1, 2, 6, 10, 13},  // t_b
      {0, 3, 7, 11, 13},  // t_c
      {0, 2, 4, 8, 12},   // t_d
  };
  const double tails[4] = {-9.0, -8.0, -8.0, -8.0};

  std::map<std::vector<int>, double> window_cost;
  for (int i = 0; i < 14; ++i) window_cost[{kNoObs, kNoObs, i}] = 3.0;
  for (std::size_t f = 0; f < flows.size(); ++f) {
    const auto& p = flows[f];
    window_cost[{kNoObs, p[0], p[1]}] = 0.0;
    for (std::size_t i = 0; i + 2 < p.size(); ++i) {
      const std::vector<int> w{p[i], p[i + 1], p[i + 2]};
      const bool tail = i + 3 == p.size();
      window_cost[w] = tail ? tails[f] : 0.0;
    }
  }

  std::vector<Subtrack> subtracks;
  for (const auto& [slots, c] : window_cost) {
    Subtrack s;
    s.slots = slots;
    s.cost = c;
    subtracks.push_back(std::move(s));
  }

  QuadConflict q;
  q.instance = make_instance(dets, 3, 1.0, std::move(subtracks));
  for (std::size_t f = 0; f < flows.size(); ++f) {
    Track t;
    t.detections = flows[f];
    t.cost = track_cost(t.detections, q.instance);
    q.tracks.push_back(std::move(t));
  }
  q.triplet = Triplet::of(0, 2, 13);
  return q;
}

// Random small instance: <= max_dets detections over <= max_frames frames,
// geometric graph with pseudo-random subtrack costs in [-3, 2].
inline Instance random_instance(std::uint64_t seed, int max_dets = 15,
                                int max_frames = 5, int window = 0) {
  Rng rng(seed, 17);
  const int n_frames = 2 + rng.uniform_int(max_frames - 1);
  const int n_dets = std::max(2, 2 + rng.uniform_int(max_dets - 1));
  std::vector<Detection> dets;
  for (int i = 0; i < n_dets; ++i) {
    const int frame = i < 2 ? i % n_frames : rng.uniform_int(n_frames);
    dets.push_back(det(i, frame, rng.uniform(0.0, 100.0), rng.uniform(0.0, 100.0)));
  }
  std::sort(dets.begin(), dets.end(), [](const Detection& a, const Detection& b) {
    if (a.frame != b.frame) return a.frame < b.frame;
    return a.id < b.id;
  });
  for (int i = 0; i < n_dets; ++i) dets[i].id = i;

  const int K = window ? window : 2 + rng.uniform_int(2);
  const int nn = 1 + rng.uniform_int(3);
  const int max_skip = 1 + rng.uniform_int(2);
  const std::uint64_t cost_seed = rng.next_u64();
  SubtrackCostFn cost = [cost_seed](std::span<const int> slots) {
    std::uint64_t h = cost_seed;
    for (int s : slots) h = Rng::mix(h ^ static_cast<std::uint64_t>(s + 2));
    return -3.0 + 5.0 * (static_cast<double>(h >> 11) * 0x1.0p-53);
  };

  Instance inst;
  inst.graph = build_subtrack_graph(dets, K, nn, max_skip, cost);
  inst.detections = dets;
  inst.theta0 = Rng(seed, 23).uniform(0.0, 2.0);
  inst.window = K;
  return inst;
}

inline std::vector<double> random_lambda(std::uint64_t seed, int n,
                                         double hi = 3.0) {
  Rng rng(seed, 31);
  std::vector<double> lambda(n);
  for (double& l : lambda) l = rng.uniform(0.0, hi);
  return lambda;
}

// --- independent references -------------------------------------------------

// Exact MWSP by subset DP over detection bitmasks (independent of the
// library's DFS oracle).
inline double bitmask_mwsp(const std::vector<Track>& tracks, int num_dets) {
  if (num_dets > 24) throw std::runtime_error("bitmask oracle limit");
  struct Entry {
    std::uint32_t mask;
    double cost;
  };
  std::vector<std::vector<Entry>> by_low(num_dets);
  for (const Track& t : tracks) {
    if (t.cost >= 0.0) continue;
    std::uint32_t m = 0;
    for (int d : t.detections) m |= 1u << d;
    int low = 0;
    while (!((m >> low) & 1u)) ++low;
    by_low[low].push_back({m, t.cost});
  }
  const std::size_t full = std::size_t{1} << num_dets;
  std::vector<double> f(full, 0.0);
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    int low = 0;
    while (!((mask >> low) & 1u)) ++low;
    double best = f[mask & (mask - 1)];  // leave the lowest detection unused
    for (const Entry& e : by_low[low])
      if ((e.mask & mask) == e.mask) best = std::min(best, e.cost + f[mask & ~e.mask]);
    f[mask] = best;
  }
  return f[full - 1];
}

// Minimum of cost'x over {x >= 0, Ax <= 1} by brute-force vertex
// enumeration; A has 0/1 entries given per column as detection index sets
// plus optional triplet rows. Feasible region is bounded (every column
// covers a detection), so the optimum sits on a vertex.
inline double vertex_lp_optimum(const std::vector<double>& costs,
                                const std::vector<std::vector<int>>& col_dets,
                                int num_dets,
                                const std::vector<Triplet>& rows = {}) {
  const int n = static_cast<int>(costs.size());
  if (n == 0) return 0.0;
  std::vector<std::vector<double>> A;  // constraint normals, rhs 1
  for (int d = 0; d < num_dets; ++d) {
    std::vector<double> row(n, 0.0);
    bool used = false;
    for (int j = 0; j < n; ++j)
      if (std::count(col_dets[j].begin(), col_dets[j].end(), d)) {
        row[j] = 1.0;
        used = true;
      }
    if (used) A.push_back(std::move(row));
  }
  for (const Triplet& c : rows) {
    std::vector<double> row(n, 0.0);
    for (int j = 0; j < n; ++j) {
      int hits = 0;
      for (int d : c.dets)
        if (std::count(col_dets[j].begin(), col_dets[j].end(), d)) ++hits;
      if (hits >= 2) row[j] = 1.0;
    }
    A.push_back(std::move(row));
  }
  const int m = static_cast<int>(A.size());

  // active-set enumeration: choose n constraints among the m rows and the n
  // bounds x_j = 0, solve, keep feasible points
  std::vector<int> pick(n);
  double best = 0.0;  // x = 0 is always a vertex
  std::vector<double> x(n), M;
  std::function<void(int, int)> rec = [&](int from, int k) {
    if (k == n) {
      // assemble and solve the square system
      M.assign(static_cast<std::size_t>(n) * (n + 1), 0.0);
      for (int r = 0; r < n; ++r) {
        const int c = pick[r];
        if (c < m) {
          for (int j = 0; j < n; ++j) M[r * (n + 1) + j] = A[c][j];
          M[r * (n + 1) + n] = 1.0;
        } else {
          M[r * (n + 1) + (c - m)] = 1.0;
        }
      }
      // gaussian elimination with partial pivoting
      for (int col = 0; col < n; ++col) {
        int piv = -1;
        double mag = 1e-9;
        for (int r = col; r < n; ++r)
          if (std::fabs(M[r * (n + 1) + col]) > mag) {
            mag = std::fabs(M[r * (n + 1) + col]);
            piv = r;
          }
        if (piv < 0) return;  // singular selection
        for (int j = 0; j <= n; ++j)
          std::swap(M[col * (n + 1) + j], M[piv * (n + 1) + j]);
        const double p = M[col * (n + 1) + col];
        for (int r = 0; r < n; ++r) {
          if (r == col) continue;
          const double f = M[r * (n + 1) + col] / p;
          if (f == 0.0) continue;
          for (int j = col; j <= n; ++j) M[r * (n + 1) + j] -= f * M[col * (n + 1) + j];
        }
      }
      for (int j = 0; j < n; ++j) x[j] = M[j * (n + 1) + n] / M[j * (n + 1) + j];
      for (int j = 0; j < n; ++j)
        if (x[j] < -1e-7) return;
      for (const auto& row : A) {
        double lhs = 0.0;
        for (int j = 0; j < n; ++j) lhs += row[j] * x[j];
        if (lhs > 1.0 + 1e-7) return;
      }
      double obj = 0.0;
      for (int j = 0; j < n; ++j) obj += costs[j] * x[j];
      best = std::min(best, obj);
      return;
    }
    for (int c = from; c < m + n; ++c) {
      pick[k] = c;
      rec(c + 1, k + 1);
    }
  };
  rec(0, 0);
  return best;
}

}  // namespace testutil
