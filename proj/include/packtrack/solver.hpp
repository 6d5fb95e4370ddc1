#pragma once

#include <optional>
#include <string>
#include <vector>

#include "packtrack/instance.hpp"
#include "packtrack/master_lp.hpp"

namespace packtrack {

enum class SolveMode {
  kColumnsOnly,     // column generation against the plain packing relaxation
  kColumnsAndRows,  // column generation plus triplet row generation
};

struct SolverConfig {
  SolveMode mode = SolveMode::kColumnsAndRows;
  double epsilon = kViolationEps;  // violation threshold, > 0
  int max_outer_iters = 1000;
  int bnb_node_budget = 10000;
  int row_batch = 1;  // rows added per separation round
  std::optional<double> time_limit;  // seconds
  // 0 adds every violated column; otherwise only the most violated ones,
  // which keeps the master small on large instances
  int max_new_columns = 0;
};

enum class TraceEvent { kColumnsAdded, kRowAdded, kConverged };

const char* to_string(TraceEvent e);

struct TraceRecord {
  int iter = 0;
  double elapsed = 0.0;  // seconds since solve start
  double lb = 0.0;       // anytime lower bound of this iteration
  double ub = 0.0;       // best upper bound so far
  int n_columns = 0;
  int n_rows = 0;
  TraceEvent event = TraceEvent::kColumnsAdded;
};

enum class StopReason { kConverged, kIterLimit, kTimeLimit, kNodeBudget };

struct SolveResult {
  std::vector<Track> tracks;  // best rounded selection
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  std::vector<TraceRecord> trace;
  bool converged = false;
  StopReason stop = StopReason::kConverged;
  int iterations = 0;
};

SolveResult solve(const Instance& instance, const SolverConfig& config = {});

}  // namespace packtrack
