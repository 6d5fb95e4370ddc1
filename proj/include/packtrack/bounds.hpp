#pragma once

#include <span>

#include "packtrack/instance.hpp"
#include "packtrack/pricing.hpp"

namespace packtrack {

// Anytime lower bound on the optimal integral tracking for the plain packing
// relaxation: minus the dual mass plus, per detection, the (capped at zero)
// cheapest reduced cost of a track terminating there. Valid for any
// nonnegative duals; equals the LP value once pricing finds no violation.
double anytime_lb(const Instance& instance, std::span<const double> lambda,
                  const CostToGo& ctg);

// Same bound under active triplet rows: each per-detection term may also be
// clipped from below by `vstar`, a valid lower bound on the global minimum
// slack (proven minimum at convergence, otherwise the best open node bound).
double anytime_lb_rows(const Instance& instance, std::span<const double> lambda,
                       std::span<const double> lambda_rows, const CostToGo& ctg,
                       double vstar);

}  // namespace packtrack
