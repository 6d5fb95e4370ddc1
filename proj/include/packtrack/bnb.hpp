#pragma once

#include <limits>
#include <span>
#include <vector>

#include "packtrack/instance.hpp"
#include "packtrack/master_lp.hpp"
#include "packtrack/pricing.hpp"

namespace packtrack {

// A branch-and-bound node: detections forced onto the track and detections
// forbidden from it.
struct Branch {
  std::vector<int> include;  // sorted ascending
  std::vector<int> exclude;  // sorted ascending
  double vlb = 0.0;          // lower bound on the slack over the node's tracks
  double vub = 0.0;          // upper bound via the node's DP minimizer
  Track best_track;          // DP minimizer (ignoring row duals)
  bool infeasible = false;   // DP found no track at all
  int order = 0;             // creation sequence, ties in the queue
};

// Evaluates a node: masked DP over tracks avoiding `exclude` (tightened by
// dropping subtracks that clash in frame with an `include` detection), plus
// the row duals already decided by `include`. Fills vlb, vub, best_track.
// Returns the masked cost-to-go for column harvesting.
CostToGo branch_bounds(const Instance& instance, std::span<const double> lambda,
                       std::span<const double> lambda_rows,
                       std::span<const Triplet> rows, Branch& branch);

// The active row with the largest dual that the node's DP minimizer covers
// but whose inclusion is not yet decided; -1 when that maximum is zero
// (the node is terminating).
int select_branch_triplet(const Branch& branch,
                          std::span<const double> lambda_rows,
                          std::span<const Triplet> rows);

// The eight children enumerating every include/exclude assignment of the
// triplet's three detections; children contradicting the parent are dropped.
std::vector<Branch> split_branch(const Branch& branch, const Triplet& c);

struct BnbOptions {
  double epsilon = kViolationEps;  // column violation threshold
  // nodes with vlb >= min(prune_cutoff, incumbent) are discarded; the
  // default +inf proves the exact minimum slack, the solver passes -epsilon
  // since only violated columns matter there
  double prune_cutoff = std::numeric_limits<double>::infinity();
  int node_budget = 10000;
};

struct BnbResult {
  std::vector<Track> tracks;  // violated columns, most violated first
  double vstar = 0.0;         // proven minimum slack, or a lower bound on it
  bool proven = false;        // vstar is the exact minimum
  bool budget_exceeded = false;
  int nodes = 0;
  CostToGo root;  // unmasked DP of the root node, reused for anytime bounds
};

// Pricing under triplet duals: best-first search bounded by the masked DP.
// Every track reconstructed during the search whose true slack is below
// -epsilon is returned. The returned track list is empty iff the proven
// minimum slack is >= -epsilon (or the search was cut by prune_cutoff /
// node_budget before proving a violation exists).
BnbResult column_lambda_lambda_rows(const Instance& instance,
                                    std::span<const double> lambda,
                                    std::span<const double> lambda_rows,
                                    std::span<const Triplet> rows,
                                    const BnbOptions& options = {});

}  // namespace packtrack
