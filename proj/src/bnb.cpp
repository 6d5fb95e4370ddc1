#include "packtrack/bnb.hpp"

#include <algorithm>
#include <map>
#include <queue>

namespace packtrack {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool contains(const std::vector<int>& sorted, int x) {
  return std::binary_search(sorted.begin(), sorted.end(), x);
}

// 1 iff at least two of the triplet's detections are forced in.
int included_pairs(const Triplet& c, const std::vector<int>& include) {
  int hits = 0;
  for (int d : c.dets)
    if (contains(include, d)) ++hits;
  return hits;
}

// Subtrack mask for a node: drop subtracks touching an excluded detection or
// a detection sharing a frame with (but different from) an included one. The
// frame tightening never removes a track that honors the include set, so the
// DP still lower-bounds the node.
std::vector<char> node_mask(const Instance& inst, const Branch& b) {
  if (b.include.empty() && b.exclude.empty()) return {};
  std::vector<char> det_ok(inst.detections.size(), 1);
  for (int d : b.exclude) det_ok[d] = 0;
  for (int d : b.include) {
    const int f = inst.detections[d].frame;
    for (const Detection& other : inst.detections)
      if (other.frame == f && other.id != d) det_ok[other.id] = 0;
  }
  std::vector<char> ok(inst.graph.size(), 1);
  for (std::size_t s = 0; s < inst.graph.size(); ++s)
    for (int slot : inst.graph.subtracks[s].slots)
      if (slot != kNoObs && !det_ok[slot]) {
        ok[s] = 0;
        break;
      }
  return ok;
}

}  // namespace

CostToGo branch_bounds(const Instance& instance, std::span<const double> lambda,
                       std::span<const double> lambda_rows,
                       std::span<const Triplet> rows, Branch& branch) {
  const std::vector<char> mask = node_mask(instance, branch);
  CostToGo ctg = compute_cost_to_go(instance, lambda, mask);

  int best_s = -1;
  double dp_min = kInf;
  for (std::size_t s = 0; s < ctg.ell.size(); ++s)
    if (ctg.ell[s] < dp_min) {
      dp_min = ctg.ell[s];
      best_s = static_cast<int>(s);
    }

  double committed = 0.0;  // row duals already forced by the include set
  for (std::size_t c = 0; c < rows.size(); ++c)
    if (included_pairs(rows[c], branch.include) >= 2)
      committed += lambda_rows[c];

  if (best_s < 0) {
    branch.infeasible = true;
    branch.vlb = kInf;
    branch.vub = kInf;
    branch.best_track = {};
    return ctg;
  }

  branch.infeasible = false;
  branch.best_track.detections = reconstruct_track(instance, ctg, best_s);
  branch.best_track.cost =
      track_cost(branch.best_track.detections, instance);
  branch.vlb = dp_min + committed;

  std::vector<int> sorted(branch.best_track.detections);
  std::sort(sorted.begin(), sorted.end());
  double undecided = 0.0;
  for (std::size_t c = 0; c < rows.size(); ++c)
    if (included_pairs(rows[c], branch.include) < 2 &&
        triplet_covers(rows[c], sorted))
      undecided += lambda_rows[c];
  branch.vub = branch.vlb + undecided;
  return ctg;
}

int select_branch_triplet(const Branch& branch,
                          std::span<const double> lambda_rows,
                          std::span<const Triplet> rows) {
  if (branch.infeasible) return -1;
  std::vector<int> sorted(branch.best_track.detections);
  std::sort(sorted.begin(), sorted.end());
  int best = -1;
  double best_val = 0.0;
  for (std::size_t c = 0; c < rows.size(); ++c) {
    if (included_pairs(rows[c], branch.include) >= 2) continue;
    if (!triplet_covers(rows[c], sorted)) continue;
    if (lambda_rows[c] > best_val) {
      best_val = lambda_rows[c];
      best = static_cast<int>(c);
    }
  }
  return best;
}

std::vector<Branch> split_branch(const Branch& branch, const Triplet& c) {
  std::vector<Branch> children;
  for (int assign = 0; assign < 8; ++assign) {
    Branch child;
    child.include = branch.include;
    child.exclude = branch.exclude;
    bool ok = true;
    for (int k = 0; k < 3; ++k) {
      const int d = c.dets[k];
      const bool inc = (assign >> k) & 1;
      if (inc) {
        if (contains(child.exclude, d)) {
          ok = false;
          break;
        }
        if (!contains(child.include, d)) child.include.push_back(d);
      } else {
        if (contains(child.include, d)) {
          ok = false;
          break;
        }
        if (!contains(child.exclude, d)) child.exclude.push_back(d);
      }
    }
    if (!ok) continue;
    std::sort(child.include.begin(), child.include.end());
    std::sort(child.exclude.begin(), child.exclude.end());
    children.push_back(std::move(child));
  }
  return children;
}

BnbResult column_lambda_lambda_rows(const Instance& instance,
                                    std::span<const double> lambda,
                                    std::span<const double> lambda_rows,
                                    std::span<const Triplet> rows,
                                    const BnbOptions& options) {
  BnbResult result;
  double incumbent = kInf;        // best true slack of any track seen
  double discarded_min = kInf;    // lowest vlb among discarded branches
  std::map<std::vector<int>, double> harvested;  // detections -> slack

  auto harvest = [&](const CostToGo& ctg) {
    for (std::size_t s = 0; s < ctg.ell.size(); ++s) {
      if (!(ctg.ell[s] < -options.epsilon)) continue;
      Track t;
      t.detections = reconstruct_track(instance, ctg, static_cast<int>(s));
      t.cost = track_cost(t.detections, instance);
      const double slack = column_slack(t, lambda, lambda_rows, rows);
      incumbent = std::min(incumbent, slack);
      if (slack < -options.epsilon) harvested.emplace(t.detections, slack);
    }
  };

  auto cmp = [](const Branch& a, const Branch& b) {
    if (a.vlb != b.vlb) return a.vlb > b.vlb;  // min-heap on vlb
    return a.order > b.order;
  };
  std::priority_queue<Branch, std::vector<Branch>, decltype(cmp)> open(cmp);

  int order = 0;
  Branch root;
  root.order = order++;
  result.root = branch_bounds(instance, lambda, lambda_rows, rows, root);
  result.nodes = 1;
  harvest(result.root);
  if (!root.infeasible)
    incumbent = std::min(
        incumbent, column_slack(root.best_track, lambda, lambda_rows, rows));

  const double cutoff = options.prune_cutoff;
  if (!root.infeasible) {
    if (root.vlb >= std::min(cutoff, incumbent))
      discarded_min = std::min(discarded_min, root.vlb);
    else
      open.push(std::move(root));
  }

  while (!open.empty()) {
    Branch node = open.top();
    open.pop();
    const double threshold = std::min(cutoff, incumbent);
    if (node.vlb >= threshold) {
      // everything left is at least as costly
      discarded_min = std::min(discarded_min, node.vlb);
      break;
    }
    const int cstar = select_branch_triplet(node, lambda_rows, rows);
    if (cstar < 0) {
      // terminating node: its DP minimizer's slack equals vlb, so the
      // incumbent is the proven optimum
      break;
    }
    if (result.nodes + 8 > options.node_budget) {
      result.budget_exceeded = true;
      discarded_min = std::min(discarded_min, node.vlb);
      while (!open.empty()) {
        discarded_min = std::min(discarded_min, open.top().vlb);
        open.pop();
      }
      break;
    }
    for (Branch& child : split_branch(node, rows[cstar])) {
      child.order = order++;
      const CostToGo ctg =
          branch_bounds(instance, lambda, lambda_rows, rows, child);
      ++result.nodes;
      if (child.infeasible) continue;
      harvest(ctg);
      incumbent = std::min(
          incumbent, column_slack(child.best_track, lambda, lambda_rows, rows));
      if (child.vlb >= std::min(cutoff, incumbent))
        discarded_min = std::min(discarded_min, child.vlb);
      else
        open.push(std::move(child));
    }
  }

  result.vstar = std::min(incumbent, discarded_min);
  // exact when nothing cheaper than the incumbent was ever discarded
  result.proven = !result.budget_exceeded && discarded_min >= incumbent;

  result.tracks.reserve(harvested.size());
  for (const auto& [dets, slack] : harvested) {
    Track t;
    t.detections = dets;
    t.cost = track_cost(dets, instance);
    result.tracks.push_back(std::move(t));
  }
  std::stable_sort(result.tracks.begin(), result.tracks.end(),
                   [&](const Track& a, const Track& b) {
                     return column_slack(a, lambda, lambda_rows, rows) <
                            column_slack(b, lambda, lambda_rows, rows);
                   });
  return result;
}

}  // namespace packtrack
