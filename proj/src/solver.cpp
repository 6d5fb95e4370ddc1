#include "packtrack/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "packtrack/bnb.hpp"
#include "packtrack/bounds.hpp"
#include "packtrack/pricing.hpp"
#include "packtrack/rounding.hpp"
#include "packtrack/triplets.hpp"

namespace packtrack {

const char* to_string(TraceEvent e) {
  switch (e) {
    case TraceEvent::kColumnsAdded:
      return "columns_added";
    case TraceEvent::kRowAdded:
      return "row_added";
    case TraceEvent::kConverged:
      return "converged";
  }
  return "?";
}

SolveResult solve(const Instance& instance, const SolverConfig& config) {
  if (config.epsilon <= 0.0)
    throw std::invalid_argument("epsilon must be positive");
  if (config.max_outer_iters < 1 || config.bnb_node_budget < 1 ||
      config.row_batch < 1)
    throw std::invalid_argument("budgets must be >= 1");

  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  };

  RestrictedMaster master(instance.num_detections());
  SolveResult result;
  result.upper_bound = std::numeric_limits<double>::infinity();
  double best_anytime_lb = -std::numeric_limits<double>::infinity();

  for (int iter = 1; iter <= config.max_outer_iters; ++iter) {
    result.iterations = iter;
    if (config.time_limit && elapsed() > *config.time_limit) {
      result.stop = StopReason::kTimeLimit;
      break;
    }

    const RestrictedMaster::Solution sol = master.solve();

    const RoundingResult rounded =
        round_fractional(sol.gamma, master.columns());
    if (rounded.upper_bound < result.upper_bound) {
      result.upper_bound = rounded.upper_bound;
      result.tracks.clear();
      for (int p : rounded.selected) result.tracks.push_back(master.columns()[p]);
    }

    // pricing + anytime lower bound (both reuse one DP per iteration)
    std::vector<Track> new_columns;
    double iter_lb;
    bool pricing_proven = true;
    if (config.mode == SolveMode::kColumnsOnly) {
      const CostToGo ctg = compute_cost_to_go(instance, sol.lambda);
      iter_lb = anytime_lb(instance, sol.lambda, ctg);
      new_columns = violated_columns(instance, ctg, config.epsilon);
    } else {
      BnbOptions opts;
      opts.epsilon = config.epsilon;
      opts.prune_cutoff = -config.epsilon;  // only violated columns matter
      opts.node_budget = config.bnb_node_budget;
      const BnbResult pr = column_lambda_lambda_rows(
          instance, sol.lambda, sol.lambda_rows, master.rows(), opts);
      iter_lb = anytime_lb_rows(instance, sol.lambda, sol.lambda_rows, pr.root,
                                pr.vstar);
      new_columns = pr.tracks;
      pricing_proven = !pr.budget_exceeded;
    }
    best_anytime_lb = std::max(best_anytime_lb, iter_lb);

    TraceRecord rec;
    rec.iter = iter;
    rec.elapsed = elapsed();
    rec.lb = iter_lb;
    rec.ub = result.upper_bound;
    rec.n_rows = static_cast<int>(master.rows().size());

    if (!new_columns.empty()) {
      if (config.max_new_columns > 0 &&
          static_cast<int>(new_columns.size()) > config.max_new_columns)
        new_columns.resize(config.max_new_columns);
      // a violated column is never a duplicate of an active one (active
      // columns have reduced cost above -epsilon at the master optimum)
      if (master.add_columns(new_columns) > 0) {
        rec.event = TraceEvent::kColumnsAdded;
        rec.n_columns = static_cast<int>(master.columns().size());
        result.trace.push_back(rec);
        continue;
      }
    }

    if (!pricing_proven) {
      // out of nodes with no violated column in hand: bounds stay valid but
      // convergence cannot be certified
      rec.event = TraceEvent::kColumnsAdded;
      rec.n_columns = static_cast<int>(master.columns().size());
      result.trace.push_back(rec);
      result.stop = StopReason::kNodeBudget;
      break;
    }

    if (config.mode == SolveMode::kColumnsAndRows) {
      const auto violated = most_violated_rows(
          sol.gamma, master.columns(), instance.num_detections(),
          config.row_batch, config.epsilon);
      if (!violated.empty()) {
        for (const RowSearchResult& r : violated) master.add_row(r.triplet);
        rec.event = TraceEvent::kRowAdded;
        rec.n_columns = static_cast<int>(master.columns().size());
        rec.n_rows = static_cast<int>(master.rows().size());
        result.trace.push_back(rec);
        continue;
      }
    }

    // no violated column, no violated row: the relaxation is solved
    result.converged = true;
    result.stop = StopReason::kConverged;
    result.lower_bound = sol.objective;
    rec.event = TraceEvent::kConverged;
    rec.n_columns = static_cast<int>(master.columns().size());
    result.trace.push_back(rec);
    break;
  }

  if (!result.converged) {
    if (result.stop == StopReason::kConverged) result.stop = StopReason::kIterLimit;
    result.lower_bound = best_anytime_lb;
  }
  if (!std::isfinite(result.upper_bound)) result.upper_bound = 0.0;
  return result;
}

}  // namespace packtrack
