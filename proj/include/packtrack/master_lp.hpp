#pragma once

#include <array>
#include <map>
#include <span>
#include <vector>

#include "packtrack/instance.hpp"

namespace packtrack {

// Feasibility / duality tolerance shared solver-wide.
inline constexpr double kFeasTol = 1e-9;
// Violation threshold for pricing and row separation.
inline constexpr double kViolationEps = 1e-8;

// Three distinct detections, stored sorted ascending.
struct Triplet {
  std::array<int, 3> dets{};

  static Triplet of(int a, int b, int c);
  bool operator==(const Triplet& o) const { return dets == o.dets; }
  bool operator<(const Triplet& o) const { return dets < o.dets; }
};

// 1 iff the track visits at least two of the triplet's detections.
// `track_detections` must be sorted ascending.
bool triplet_covers(const Triplet& c, std::span<const int> track_detections);

// Reduced cost of a column: cost + sum of duals over its detections + sum of
// row duals over the active triplet rows it covers.
double column_slack(const Track& track, std::span<const double> lambda,
                    std::span<const double> lambda_rows,
                    std::span<const Triplet> rows);

// Restricted master LP over the active columns and triplet rows:
//
//   min cost' gamma   s.t.  (per detection) sum of covering gamma <= 1
//                           (per active row) sum of covering gamma <= 1
//                           gamma >= 0
//
// Solved by primal simplex with an all-slack starting basis and an explicit
// dense basis inverse. Adding columns keeps the basis warm; adding a row
// invalidates it (the new row is violated by construction) and the next
// solve restarts cold.
class RestrictedMaster {
 public:
  explicit RestrictedMaster(int num_detections);

  // Deduplicated insertion (by detection set); returns the number actually
  // added. Row incidence against all active triplet rows is computed here.
  int add_columns(std::span<const Track> tracks);

  // Throws std::invalid_argument if the row is already active.
  void add_row(const Triplet& c);

  struct Solution {
    std::vector<double> gamma;        // over columns, in [0,1]
    std::vector<double> lambda;       // over all detections, >= 0
    std::vector<double> lambda_rows;  // over active rows, >= 0
    double objective = 0.0;
    int pivots = 0;
  };

  // Throws std::runtime_error on pivot-limit exceedance (cycling or
  // numerical failure; dimensions reported in the message).
  Solution solve();

  const std::vector<Track>& columns() const { return columns_; }
  const std::vector<Triplet>& rows() const { return rows_; }
  int num_detections() const { return num_detections_; }

 private:
  int detection_row(int det);  // creates the row on first use
  void reset_basis();

  int num_detections_ = 0;
  std::vector<Track> columns_;
  std::vector<std::vector<int>> col_support_;  // row indices per column
  std::map<std::vector<int>, int> dedup_;

  std::vector<Triplet> rows_;

  // row r <-> either detection row (kind 0, ref = detection id) or triplet
  // row (kind 1, ref = index into rows_)
  std::vector<std::pair<int, int>> row_defs_;
  std::vector<int> det_row_;  // detection id -> row index or -1

  // simplex state
  std::vector<int> basis_;       // var per row: >=0 column index, <0 slack ~(row)
  std::vector<double> binv_;     // m x m row-major
  std::vector<double> xb_;       // basic values
  bool basis_valid_ = false;
};

}  // namespace packtrack
