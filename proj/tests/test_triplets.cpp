#include <doctest.h>

#include <array>

#include "helpers.hpp"
#include "packtrack/triplets.hpp"

using namespace packtrack;

namespace {

Track mk(std::vector<int> dets, double cost) {
  Track t;
  t.detections = std::move(dets);
  t.cost = cost;
  return t;
}

// exhaustive separation over every triple of detections
RowSearchResult exhaustive_row(std::span<const double> gamma,
                               std::span<const Track> columns, int num_dets,
                               double epsilon) {
  RowSearchResult best;
  for (int a = 0; a < num_dets; ++a)
    for (int b = a + 1; b < num_dets; ++b)
      for (int c = b + 1; c < num_dets; ++c) {
        double v = 0.0;
        for (std::size_t p = 0; p < columns.size(); ++p) {
          if (gamma[p] <= epsilon) continue;
          int hits = 0;
          for (int d : columns[p].detections)
            if (d == a || d == b || d == c) ++hits;
          if (hits >= 2) v += gamma[p];
        }
        const std::array<int, 3> t{a, b, c};
        if (v > best.violation ||
            (v == best.violation && best.found && t < best.triplet.dets)) {
          best.violation = v;
          best.triplet.dets = t;
          best.found = true;
        }
      }
  if (best.violation <= 1.0 + epsilon) best.found = false;
  return best;
}

}  // namespace

TEST_CASE("half-weight triple separates its triplet") {
  const std::vector<Track> cols{mk({0, 1}, -4), mk({0, 2}, -4), mk({1, 2}, -4),
                                mk({0, 1, 2}, -5)};
  const std::vector<double> gamma{0.5, 0.5, 0.5, 0.0};
  const RowSearchResult r = most_violated_row_serial(gamma, cols, 3);
  REQUIRE(r.found);
  CHECK(r.triplet.dets == std::array<int, 3>{0, 1, 2});
  CHECK(r.violation == doctest::Approx(1.5));
}

TEST_CASE("integral solutions have no violated triplet") {
  const std::vector<Track> cols{mk({0, 1}, -4), mk({2, 3, 4}, -5)};
  const std::vector<double> gamma{1.0, 1.0};
  CHECK(!most_violated_row_serial(gamma, cols, 5).found);
}

TEST_CASE("separation matches exhaustive triple scan") {
  Rng rng(4000, 9);
  for (int round = 0; round < 60; ++round) {
    const int num_dets = 5 + rng.uniform_int(5);
    std::vector<Track> cols;
    std::vector<double> gamma;
    const int num_cols = 3 + rng.uniform_int(7);
    for (int j = 0; j < num_cols; ++j) {
      std::vector<int> dets;
      for (int d = 0; d < num_dets; ++d)
        if (rng.bernoulli(0.4)) dets.push_back(d);
      if (static_cast<int>(dets.size()) < 2) continue;
      cols.push_back(mk(dets, -1.0));
      gamma.push_back(rng.uniform(0.0, 0.9));
    }
    const RowSearchResult got =
        most_violated_row_serial(gamma, cols, num_dets);
    const RowSearchResult want =
        exhaustive_row(gamma, cols, num_dets, kViolationEps);
    REQUIRE(got.found == want.found);
    if (got.found) {
      CHECK(got.violation == doctest::Approx(want.violation).epsilon(1e-12));
      CHECK(got.triplet.dets == want.triplet.dets);
    }
  }
}

TEST_CASE("top-k rows come sorted by violation") {
  Rng rng(5000, 9);
  std::vector<Track> cols;
  std::vector<double> gamma;
  for (int j = 0; j < 9; ++j) {
    std::vector<int> dets;
    for (int d = 0; d < 8; ++d)
      if (rng.bernoulli(0.5)) dets.push_back(d);
    if (static_cast<int>(dets.size()) < 2) continue;
    cols.push_back(mk(dets, -1.0));
    gamma.push_back(rng.uniform(0.2, 0.8));
  }
  const auto rows = most_violated_rows(gamma, cols, 8, 3);
  for (std::size_t i = 1; i < rows.size(); ++i)
    CHECK(rows[i - 1].violation >= rows[i].violation);
  if (!rows.empty()) {
    const RowSearchResult top = most_violated_row_serial(gamma, cols, 8);
    CHECK(rows[0].triplet.dets == top.triplet.dets);
  }
}
