#include "packtrack/bounds.hpp"

#include <algorithm>
#include <limits>

namespace packtrack {

namespace {

double min_terminal_ell(const Instance& instance, const CostToGo& ctg, int d) {
  double m = std::numeric_limits<double>::infinity();
  for (int s : instance.graph.terminal_index[d]) m = std::min(m, ctg.ell[s]);
  return m;
}

}  // namespace

double anytime_lb(const Instance& instance, std::span<const double> lambda,
                  const CostToGo& ctg) {
  double lb = 0.0;
  for (double l : lambda) lb -= l;
  for (int d = 0; d < instance.num_detections(); ++d)
    lb += std::min(0.0, min_terminal_ell(instance, ctg, d));
  return lb;
}

double anytime_lb_rows(const Instance& instance, std::span<const double> lambda,
                       std::span<const double> lambda_rows, const CostToGo& ctg,
                       double vstar) {
  double lb = 0.0;
  for (double l : lambda) lb -= l;
  for (double l : lambda_rows) lb -= l;
  for (int d = 0; d < instance.num_detections(); ++d)
    lb += std::min(0.0, std::max(vstar, min_terminal_ell(instance, ctg, d)));
  return lb;
}

}  // namespace packtrack
