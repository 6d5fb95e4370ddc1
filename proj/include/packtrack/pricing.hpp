#pragma once

#include <span>
#include <vector>

#include "packtrack/instance.hpp"
#include "packtrack/master_lp.hpp"

namespace packtrack {

// Backpointer values beside a predecessor subtrack id.
inline constexpr int kStartMark = -1;    // track begins at this subtrack
inline constexpr int kUnreachable = -2;  // no track terminates here

// Dynamic-programming cost-to-go over the subtrack DAG: ell[s] is the
// reduced cost (under the detection duals) of the cheapest track whose last
// window is subtrack s; +inf where no track can terminate.
struct CostToGo {
  std::vector<double> ell;
  std::vector<int> backpointer;
};

// Serial reference kernel. `allowed`, when non-empty, masks subtracks out of
// the DP (used by branch-and-bound pricing). A track may only begin at a
// subtrack whose leading window slots are all padding, which keeps every
// backpointer chain's cost identical to the track's recomputed cost.
CostToGo cost_to_go_serial(const Instance& instance,
                           std::span<const double> lambda,
                           std::span<const char> allowed = {});

// OpenMP kernel: identical recursion, parallel across the subtracks of each
// frame layer. Results are bitwise identical to the serial kernel.
CostToGo cost_to_go_parallel(const Instance& instance,
                             std::span<const double> lambda,
                             std::span<const char> allowed = {});

// Dispatches to the parallel kernel for large graphs.
CostToGo compute_cost_to_go(const Instance& instance,
                            std::span<const double> lambda,
                            std::span<const char> allowed = {});

// Detection sequence of the cheapest track terminating at `terminal`,
// rebuilt from backpointers. Precondition: ell[terminal] is finite.
std::vector<int> reconstruct_track(const Instance& instance,
                                   const CostToGo& ctg, int terminal);

// All tracks whose cost-to-go is below -epsilon, most violated first
// (ties by terminal subtrack id). Each track's cost is the chain sum, which
// matches track_cost exactly. Empty iff min ell >= -epsilon.
std::vector<Track> violated_columns(const Instance& instance,
                                    const CostToGo& ctg,
                                    double epsilon = kViolationEps);

// Pricing for the triplet-free master: runs the DP and extracts every
// violated column, including the global minimizer.
std::vector<Track> column_lambda(const Instance& instance,
                                 std::span<const double> lambda,
                                 double epsilon = kViolationEps);

}  // namespace packtrack
