#include "packtrack/master_lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace packtrack {

namespace {
constexpr double kPivotTol = 1e-11;
constexpr double kReducedCostTol = 1e-9;
}  // namespace

Triplet Triplet::of(int a, int b, int c) {
  Triplet t;
  t.dets = {a, b, c};
  std::sort(t.dets.begin(), t.dets.end());
  if (t.dets[0] == t.dets[1] || t.dets[1] == t.dets[2] || t.dets[0] < 0)
    throw std::invalid_argument("triplet needs three distinct detections");
  return t;
}

bool triplet_covers(const Triplet& c, std::span<const int> track_detections) {
  int hits = 0;
  for (int d : c.dets)
    if (std::binary_search(track_detections.begin(), track_detections.end(), d))
      ++hits;
  return hits >= 2;
}

double column_slack(const Track& track, std::span<const double> lambda,
                    std::span<const double> lambda_rows,
                    std::span<const Triplet> rows) {
  double slack = track.cost;
  for (int d : track.detections) slack += lambda[d];
  if (!rows.empty()) {
    std::vector<int> sorted(track.detections.begin(), track.detections.end());
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t c = 0; c < rows.size(); ++c)
      if (triplet_covers(rows[c], sorted)) slack += lambda_rows[c];
  }
  return slack;
}

RestrictedMaster::RestrictedMaster(int num_detections)
    : num_detections_(num_detections), det_row_(num_detections, -1) {
  if (num_detections < 0) throw std::invalid_argument("negative universe");
}

int RestrictedMaster::detection_row(int det) {
  int& r = det_row_[det];
  if (r < 0) {
    r = static_cast<int>(row_defs_.size());
    row_defs_.emplace_back(0, det);
    if (basis_valid_) {
      // the new constraint touches no basic column (none covers this
      // detection yet), so the basis extends block-diagonally
      const int m = static_cast<int>(row_defs_.size());
      std::vector<double> grown(static_cast<std::size_t>(m) * m, 0.0);
      for (int i = 0; i + 1 < m; ++i)
        for (int j = 0; j + 1 < m; ++j)
          grown[static_cast<std::size_t>(i) * m + j] =
              binv_[static_cast<std::size_t>(i) * (m - 1) + j];
      grown[static_cast<std::size_t>(m - 1) * m + (m - 1)] = 1.0;
      binv_ = std::move(grown);
      xb_.push_back(1.0);
      basis_.push_back(~(m - 1));
    }
  }
  return r;
}

int RestrictedMaster::add_columns(std::span<const Track> tracks) {
  int added = 0;
  for (const Track& t : tracks) {
    if (t.detections.empty())
      throw std::invalid_argument("column with no detections");
    std::vector<int> key(t.detections.begin(), t.detections.end());
    std::sort(key.begin(), key.end());
    for (int d : key)
      if (d < 0 || d >= num_detections_)
        throw std::invalid_argument("column references unknown detection");
    if (!dedup_.emplace(key, static_cast<int>(columns_.size())).second)
      continue;

    std::vector<int> support;
    for (int d : key) support.push_back(detection_row(d));
    for (std::size_t r = 0; r < row_defs_.size(); ++r)
      if (row_defs_[r].first == 1 &&
          triplet_covers(rows_[row_defs_[r].second], key))
        support.push_back(static_cast<int>(r));
    std::sort(support.begin(), support.end());

    columns_.push_back(t);
    col_support_.push_back(std::move(support));
    ++added;
  }
  return added;
}

void RestrictedMaster::add_row(const Triplet& c) {
  for (const Triplet& existing : rows_)
    if (existing == c) throw std::invalid_argument("duplicate triplet row");
  const int row = static_cast<int>(row_defs_.size());
  row_defs_.emplace_back(1, static_cast<int>(rows_.size()));
  rows_.push_back(c);
  for (std::size_t j = 0; j < columns_.size(); ++j) {
    std::vector<int> key(columns_[j].detections.begin(),
                         columns_[j].detections.end());
    std::sort(key.begin(), key.end());
    if (triplet_covers(c, key)) col_support_[j].push_back(row);
  }
  // the fresh row is typically violated by the current basic solution
  basis_valid_ = false;
}

void RestrictedMaster::reset_basis() {
  const int m = static_cast<int>(row_defs_.size());
  basis_.resize(m);
  for (int i = 0; i < m; ++i) basis_[i] = ~i;
  binv_.assign(static_cast<std::size_t>(m) * m, 0.0);
  for (int i = 0; i < m; ++i) binv_[static_cast<std::size_t>(i) * m + i] = 1.0;
  xb_.assign(m, 1.0);
  basis_valid_ = true;
}

RestrictedMaster::Solution RestrictedMaster::solve() {
  const int m = static_cast<int>(row_defs_.size());
  const int n = static_cast<int>(columns_.size());
  if (!basis_valid_) reset_basis();

  // refresh basic values against accumulated round-off: xb = Binv * 1
  for (int i = 0; i < m; ++i) {
    double s = 0.0;
    const double* row = binv_.data() + static_cast<std::size_t>(i) * m;
    for (int j = 0; j < m; ++j) s += row[j];
    xb_[i] = s;
  }

  std::vector<char> col_basic(n, 0), slack_basic(m, 0);
  for (int i = 0; i < m; ++i) {
    if (basis_[i] >= 0)
      col_basic[basis_[i]] = 1;
    else
      slack_basic[~basis_[i]] = 1;
  }

  const long pivot_limit = 2000 + 200L * (m + n);
  const long bland_after = 2L * (m + n);
  long degenerate_streak = 0;
  int pivots = 0;
  std::vector<double> y(m), d(m);

  while (true) {
    // simplex multipliers y = c_B' Binv (slack costs are zero)
    std::fill(y.begin(), y.end(), 0.0);
    for (int k = 0; k < m; ++k) {
      if (basis_[k] < 0) continue;
      const double ck = columns_[basis_[k]].cost;
      if (ck == 0.0) continue;
      const double* row = binv_.data() + static_cast<std::size_t>(k) * m;
      for (int i = 0; i < m; ++i) y[i] += ck * row[i];
    }

    // entering variable: Dantzig, falling back to Bland when degenerate
    const bool bland = degenerate_streak > bland_after;
    int enter = -1;          // 0..n-1 column, n..n+m-1 slack of row (id-n)
    double best = -kReducedCostTol;
    for (int j = 0; j < n; ++j) {
      if (col_basic[j]) continue;
      double cbar = columns_[j].cost;
      for (int r : col_support_[j]) cbar -= y[r];
      if (cbar < best) {
        best = cbar;
        enter = j;
        if (bland) break;
      }
    }
    if (!(bland && enter >= 0)) {
      for (int r = 0; r < m; ++r) {
        if (slack_basic[r]) continue;
        const double cbar = -y[r];
        if (cbar < best) {
          best = cbar;
          enter = n + r;
          if (bland) break;
        }
      }
    }
    if (enter < 0) break;  // optimal

    // direction d = Binv * a_enter
    if (enter < n) {
      std::fill(d.begin(), d.end(), 0.0);
      for (int k = 0; k < m; ++k) {
        const double* row = binv_.data() + static_cast<std::size_t>(k) * m;
        double s = 0.0;
        for (int r : col_support_[enter]) s += row[r];
        d[k] = s;
      }
    } else {
      const int r = enter - n;
      for (int k = 0; k < m; ++k)
        d[k] = binv_[static_cast<std::size_t>(k) * m + r];
    }

    // ratio test
    int leave = -1;
    double ratio = std::numeric_limits<double>::infinity();
    for (int k = 0; k < m; ++k) {
      if (d[k] <= kPivotTol) continue;
      const double rk = xb_[k] / d[k];
      bool better = rk < ratio - kPivotTol;
      if (!better && rk < ratio + kPivotTol && leave >= 0) {
        // tie: Bland prefers the smallest leaving variable id, otherwise
        // keep the smallest row for determinism
        if (bland) {
          const auto id = [&](int row) {
            return basis_[row] >= 0 ? basis_[row] : n + ~basis_[row];
          };
          better = id(k) < id(leave);
        }
      }
      if (better || leave < 0) {
        leave = k;
        ratio = rk;
      }
    }
    if (leave < 0)
      throw std::runtime_error(
          "restricted master: no pivot row (numerical failure), m=" +
          std::to_string(m) + " n=" + std::to_string(n));

    degenerate_streak = ratio <= kPivotTol ? degenerate_streak + 1 : 0;

    // pivot: update Binv and xb
    const double piv = d[leave];
    double* prow = binv_.data() + static_cast<std::size_t>(leave) * m;
    for (int j = 0; j < m; ++j) prow[j] /= piv;
    const double t = xb_[leave] / piv;
#pragma omp parallel for schedule(static) if (m >= 256)
    for (int k = 0; k < m; ++k) {
      if (k == leave || d[k] == 0.0) continue;
      double* row = binv_.data() + static_cast<std::size_t>(k) * m;
      const double f = d[k];
      for (int j = 0; j < m; ++j) row[j] -= f * prow[j];
    }
    for (int k = 0; k < m; ++k) {
      if (k == leave) continue;
      xb_[k] -= d[k] * t;
      if (xb_[k] < 0.0 && xb_[k] > -kFeasTol) xb_[k] = 0.0;
    }
    xb_[leave] = t;

    if (basis_[leave] >= 0)
      col_basic[basis_[leave]] = 0;
    else
      slack_basic[~basis_[leave]] = 0;
    if (enter < n) {
      basis_[leave] = enter;
      col_basic[enter] = 1;
    } else {
      basis_[leave] = ~(enter - n);
      slack_basic[enter - n] = 1;
    }

    if (++pivots > pivot_limit)
      throw std::runtime_error(
          "restricted master: pivot limit exceeded (m=" + std::to_string(m) +
          " n=" + std::to_string(n) + " pivots=" + std::to_string(pivots) +
          ")");
  }

  // final multipliers for the duals
  std::fill(y.begin(), y.end(), 0.0);
  for (int k = 0; k < m; ++k) {
    if (basis_[k] < 0) continue;
    const double ck = columns_[basis_[k]].cost;
    if (ck == 0.0) continue;
    const double* row = binv_.data() + static_cast<std::size_t>(k) * m;
    for (int i = 0; i < m; ++i) y[i] += ck * row[i];
  }

  Solution sol;
  sol.pivots = pivots;
  sol.gamma.assign(n, 0.0);
  for (int k = 0; k < m; ++k)
    if (basis_[k] >= 0)
      sol.gamma[basis_[k]] = std::clamp(xb_[k], 0.0, 1.0);
  sol.lambda.assign(num_detections_, 0.0);
  sol.lambda_rows.assign(rows_.size(), 0.0);
  for (int r = 0; r < m; ++r) {
    const double dual = std::max(0.0, -y[r]);
    if (row_defs_[r].first == 0)
      sol.lambda[row_defs_[r].second] = dual;
    else
      sol.lambda_rows[row_defs_[r].second] = dual;
  }
  double obj = 0.0;
  for (int j = 0; j < n; ++j) obj += columns_[j].cost * sol.gamma[j];
  sol.objective = obj;
  return sol;
}

}  // namespace packtrack
