#include "packtrack/rounding.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace packtrack {

namespace {
constexpr double kIntTol = 1e-9;

bool fractional(double g) { return g > kIntTol && g < 1.0 - kIntTol; }
}  // namespace

RoundingResult round_fractional(std::span<const double> gamma,
                                std::span<const Track> columns) {
  if (gamma.size() != columns.size())
    throw std::invalid_argument("gamma/columns size mismatch");
  const int n = static_cast<int>(columns.size());

  RoundingResult res;
  res.gamma.assign(gamma.begin(), gamma.end());

  // conflict lists among the initially positive columns
  std::unordered_map<int, std::vector<int>> cols_of_det;
  std::vector<int> active;
  for (int p = 0; p < n; ++p) {
    if (res.gamma[p] <= kIntTol) {
      res.gamma[p] = 0.0;
      continue;
    }
    active.push_back(p);
    for (int d : columns[p].detections) cols_of_det[d].push_back(p);
  }
  std::vector<std::vector<int>> conflicts(n);
  for (int p : active) {
    std::vector<int>& c = conflicts[p];
    for (int d : columns[p].detections)
      for (int q : cols_of_det[d])
        if (q != p) c.push_back(q);
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
  }

  std::vector<char> locked(n, 0);
  auto any_fractional = [&] {
    for (int p : active)
      if (fractional(res.gamma[p])) return true;
    return false;
  };

  while (any_fractional()) {
    int best = -1;
    double best_score = std::numeric_limits<double>::infinity();
    for (int p : active) {
      if (locked[p] || res.gamma[p] <= kIntTol) continue;
      double score = columns[p].cost * res.gamma[p];
      for (int q : conflicts[p]) score -= res.gamma[q] * columns[q].cost;
      if (score < best_score) {  // ties keep the smallest column index
        best_score = score;
        best = p;
      }
    }
    if (best < 0) break;  // every remaining positive entry is already locked
    for (int q : conflicts[best]) res.gamma[q] = 0.0;
    res.gamma[best] = 1.0;
    locked[best] = 1;
  }

  double value = 0.0;
  for (int p = 0; p < n; ++p) {
    if (res.gamma[p] > 0.5) {
      res.gamma[p] = 1.0;
      res.selected.push_back(p);
      value += columns[p].cost;
    } else {
      res.gamma[p] = 0.0;
    }
  }
  res.upper_bound = value;
  return res;
}

}  // namespace packtrack
