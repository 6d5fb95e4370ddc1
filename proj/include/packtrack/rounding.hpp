#pragma once

#include <span>
#include <vector>

#include "packtrack/instance.hpp"

namespace packtrack {

struct RoundingResult {
  std::vector<double> gamma;  // integral 0/1
  double upper_bound = 0.0;   // cost of the rounded selection
  std::vector<int> selected;  // column indices set to 1
};

// Greedy rounding of a fractional packing: repeatedly pick the positive
// column minimizing cost*gamma minus the fractional cost of the columns it
// conflicts with, lock it to 1 and zero its conflicters. Already-integral
// input comes back unchanged. The result always satisfies the packing
// constraints and its value upper-bounds the LP optimum.
RoundingResult round_fractional(std::span<const double> gamma,
                                std::span<const Track> columns);

}  // namespace packtrack
