#include "packtrack/triplets.hpp"

#include <algorithm>
#include <cstdint>
#include <unordered_set>

namespace packtrack {

namespace {

struct Candidates {
  std::vector<int> active;                    // columns with gamma > eps
  std::vector<std::vector<int>> sorted_dets;  // per active column
  std::vector<std::array<int, 3>> triples;    // a < b < c
};

// Triples whose three pairs each co-occur in a positive column.
Candidates collect_candidates(std::span<const double> gamma,
                              std::span<const Track> columns,
                              int num_detections, double epsilon) {
  Candidates cand;
  std::unordered_set<std::uint64_t> pair_set;
  std::vector<std::vector<int>> partner(num_detections);
  auto key = [](int a, int b) {
    return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
  };
  for (std::size_t p = 0; p < columns.size(); ++p) {
    if (gamma[p] <= epsilon) continue;
    cand.active.push_back(static_cast<int>(p));
    std::vector<int> dets(columns[p].detections.begin(),
                          columns[p].detections.end());
    std::sort(dets.begin(), dets.end());
    for (std::size_t i = 0; i < dets.size(); ++i)
      for (std::size_t j = i + 1; j < dets.size(); ++j)
        if (pair_set.insert(key(dets[i], dets[j])).second) {
          partner[dets[i]].push_back(dets[j]);
          partner[dets[j]].push_back(dets[i]);
        }
    cand.sorted_dets.push_back(std::move(dets));
  }
  for (auto& v : partner) std::sort(v.begin(), v.end());

  for (int a = 0; a < num_detections; ++a) {
    for (int b : partner[a]) {
      if (b <= a) continue;
      // common partners above b close the triangle
      const auto& pa = partner[a];
      const auto& pb = partner[b];
      std::size_t i = 0, j = 0;
      while (i < pa.size() && j < pb.size()) {
        if (pa[i] < pb[j])
          ++i;
        else if (pb[j] < pa[i])
          ++j;
        else {
          if (pa[i] > b) cand.triples.push_back({a, b, pa[i]});
          ++i;
          ++j;
        }
      }
    }
  }
  return cand;
}

double violation_of(const Candidates& cand, std::span<const double> gamma,
                    const std::array<int, 3>& t) {
  double v = 0.0;
  for (std::size_t k = 0; k < cand.active.size(); ++k) {
    const auto& dets = cand.sorted_dets[k];
    int hits = 0;
    for (int d : t)
      if (std::binary_search(dets.begin(), dets.end(), d)) ++hits;
    if (hits >= 2) v += gamma[cand.active[k]];
  }
  return v;
}

bool better(double va, const std::array<int, 3>& ta, double vb,
            const std::array<int, 3>& tb) {
  if (va != vb) return va > vb;
  return ta < tb;
}

}  // namespace

RowSearchResult most_violated_row_serial(std::span<const double> gamma,
                                         std::span<const Track> columns,
                                         int num_detections, double epsilon) {
  const Candidates cand =
      collect_candidates(gamma, columns, num_detections, epsilon);
  RowSearchResult res;
  bool have = false;
  std::array<int, 3> best_t{};
  double best_v = 0.0;
  for (const auto& t : cand.triples) {
    const double v = violation_of(cand, gamma, t);
    if (!have || better(v, t, best_v, best_t)) {
      have = true;
      best_v = v;
      best_t = t;
    }
  }
  if (have && best_v > 1.0 + epsilon) {
    res.found = true;
    res.violation = best_v;
    res.triplet.dets = best_t;
  }
  return res;
}

RowSearchResult most_violated_row_parallel(std::span<const double> gamma,
                                           std::span<const Track> columns,
                                           int num_detections, double epsilon) {
  const Candidates cand =
      collect_candidates(gamma, columns, num_detections, epsilon);
  const int n = static_cast<int>(cand.triples.size());
  bool have = false;
  std::array<int, 3> best_t{};
  double best_v = 0.0;
#pragma omp parallel if (n >= 64)
  {
    bool lhave = false;
    std::array<int, 3> lt{};
    double lv = 0.0;
#pragma omp for schedule(static) nowait
    for (int i = 0; i < n; ++i) {
      const auto& t = cand.triples[i];
      const double v = violation_of(cand, gamma, t);
      if (!lhave || better(v, t, lv, lt)) {
        lhave = true;
        lv = v;
        lt = t;
      }
    }
#pragma omp critical
    {
      // (violation, ids) is a total order, so the merge result does not
      // depend on thread arrival order
      if (lhave && (!have || better(lv, lt, best_v, best_t))) {
        have = true;
        best_v = lv;
        best_t = lt;
      }
    }
  }
  RowSearchResult res;
  if (have && best_v > 1.0 + epsilon) {
    res.found = true;
    res.violation = best_v;
    res.triplet.dets = best_t;
  }
  return res;
}

RowSearchResult most_violated_row(std::span<const double> gamma,
                                  std::span<const Track> columns,
                                  int num_detections, double epsilon) {
  return most_violated_row_parallel(gamma, columns, num_detections, epsilon);
}

std::vector<RowSearchResult> most_violated_rows(std::span<const double> gamma,
                                                std::span<const Track> columns,
                                                int num_detections, int k,
                                                double epsilon) {
  const Candidates cand =
      collect_candidates(gamma, columns, num_detections, epsilon);
  std::vector<std::pair<double, std::array<int, 3>>> scored;
  for (const auto& t : cand.triples) {
    const double v = violation_of(cand, gamma, t);
    if (v > 1.0 + epsilon) scored.emplace_back(v, t);
  }
  std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    return better(a.first, a.second, b.first, b.second);
  });
  if (static_cast<int>(scored.size()) > k) scored.resize(k);
  std::vector<RowSearchResult> out;
  for (const auto& [v, t] : scored) {
    RowSearchResult r;
    r.found = true;
    r.violation = v;
    r.triplet.dets = t;
    out.push_back(r);
  }
  return out;
}

}  // namespace packtrack
