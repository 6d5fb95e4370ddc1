#pragma once

#include <span>
#include <vector>

#include "packtrack/instance.hpp"
#include "packtrack/master_lp.hpp"

namespace packtrack {
namespace oracle {

// Brute-force references used by tests, the acceptance suite and the oracle
// CLI subcommand. Deliberately simple; guarded against explosion.

inline constexpr std::size_t kMaxEnumeratedTracks = 100000;

// Every track of the instance (every chain in the subtrack DAG, i.e. every
// path in the detection digraph), each with its recomputed cost. Throws
// std::runtime_error past kMaxEnumeratedTracks.
std::vector<Track> enumerate_tracks(const Instance& instance);

struct MwspResult {
  std::vector<Track> tracks;
  double value = 0.0;
};

// Exact minimum-cost disjoint track selection by depth-first search over the
// negative-cost tracks with an admissible remaining-sum prune.
MwspResult exact_mwsp(const Instance& instance);

struct MinSlackResult {
  Track track;
  double slack = 0.0;
  bool exists = false;
};

// Argmin of the reduced cost over all enumerated tracks.
MinSlackResult exact_min_slack(const Instance& instance,
                               std::span<const double> lambda,
                               std::span<const double> lambda_rows,
                               std::span<const Triplet> rows);

}  // namespace oracle
}  // namespace packtrack
