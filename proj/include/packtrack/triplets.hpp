#pragma once

#include <span>
#include <vector>

#include "packtrack/instance.hpp"
#include "packtrack/master_lp.hpp"

namespace packtrack {

struct RowSearchResult {
  Triplet triplet{};
  double violation = 0.0;
  bool found = false;
};

// Most violated triplet row for a fractional solution. Candidates are the
// triples whose three pairs each co-occur in some positive column (any
// triple violating the row inequality has this property); the winner is the
// candidate with the largest covering mass if it exceeds 1 + epsilon, ties
// broken by lexicographically smallest id triple.
RowSearchResult most_violated_row_serial(std::span<const double> gamma,
                                         std::span<const Track> columns,
                                         int num_detections,
                                         double epsilon = kViolationEps);

// OpenMP kernel: candidate scan partitioned across threads with a
// deterministic (violation, ids) reduce; same result as the serial kernel.
RowSearchResult most_violated_row_parallel(std::span<const double> gamma,
                                           std::span<const Track> columns,
                                           int num_detections,
                                           double epsilon = kViolationEps);

RowSearchResult most_violated_row(std::span<const double> gamma,
                                  std::span<const Track> columns,
                                  int num_detections,
                                  double epsilon = kViolationEps);

// The k most violated rows (violation descending, then ids); used when the
// row batch size is raised above the default of one per iteration.
std::vector<RowSearchResult> most_violated_rows(std::span<const double> gamma,
                                                std::span<const Track> columns,
                                                int num_detections, int k,
                                                double epsilon = kViolationEps);

}  // namespace packtrack
