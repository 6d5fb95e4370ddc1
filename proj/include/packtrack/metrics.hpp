#pragma once

#include <span>

#include "packtrack/instance.hpp"

namespace packtrack {

struct MetricsReport {
  int exact_matches = 0;  // solution tracks identical to a truth track
  int missed = 0;         // truth tracks with no exact match
  int spurious = 0;       // solution tracks with no exact match
  // Jaccard over same-track detection pairs: |pairs(sol) & pairs(truth)| /
  // |pairs(sol) | pairs(truth)|; 1.0 when both pair sets are empty.
  double jaccard = 0.0;
};

MetricsReport compute_metrics(std::span<const Track> solution,
                              std::span<const Track> truth);

}  // namespace packtrack
