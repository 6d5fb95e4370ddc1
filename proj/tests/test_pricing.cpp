#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"
#include "packtrack/oracle.hpp"
#include "packtrack/pricing.hpp"

using namespace packtrack;

TEST_CASE("chain cost-to-go values") {
  const Instance inst = testutil::chain_instance();
  std::vector<double> lambda(2, 0.0);
  const CostToGo ctg = cost_to_go_serial(inst, lambda);
  const int pa = find_subtrack(inst.graph, std::vector<int>{kNoObs, 0});
  const int ab = find_subtrack(inst.graph, std::vector<int>{0, 1});
  CHECK(ctg.ell[pa] == doctest::Approx(7.0));
  CHECK(ctg.ell[ab] == doctest::Approx(-2.0));
  CHECK(ctg.backpointer[pa] == kStartMark);
  CHECK(ctg.backpointer[ab] == pa);

  const auto columns = violated_columns(inst, ctg);
  REQUIRE(columns.size() == 1);
  CHECK(columns[0].detections == std::vector<int>{0, 1});
  CHECK(columns[0].cost == doctest::Approx(-2.0));
}

TEST_CASE("all-zero costs give all-zero cost-to-go") {
  std::vector<Detection> dets{testutil::det(0, 0, 0, 0),
                              testutil::det(1, 1, 1, 0),
                              testutil::det(2, 2, 2, 0)};
  Instance inst;
  inst.graph =
      build_subtrack_graph(dets, 2, 2, 1, [](std::span<const int>) { return 0.0; });
  inst.detections = dets;
  inst.theta0 = 0.0;
  inst.window = 2;
  std::vector<double> lambda(3, 0.0);
  const CostToGo ctg = cost_to_go_serial(inst, lambda);
  for (double e : ctg.ell) CHECK(e == 0.0);
  CHECK(column_lambda(inst, lambda).empty());
}

TEST_CASE("pricing matches exhaustive slack enumeration") {
  int checked = 0;
  for (std::uint64_t seed = 100; checked < 100; ++seed) {
    const Instance inst = testutil::random_instance(seed, 15, 5);
    const auto lambda =
        testutil::random_lambda(seed * 3 + 1, inst.num_detections());
    const CostToGo ctg = cost_to_go_serial(inst, lambda);
    const auto best = oracle::exact_min_slack(inst, lambda, {}, {});
    REQUIRE(best.exists);
    const double dp_min = *std::min_element(ctg.ell.begin(), ctg.ell.end());
    CHECK(dp_min == doctest::Approx(best.slack).epsilon(1e-12));
    ++checked;
  }
}

TEST_CASE("chain-sum cost equals recomputed track cost exactly") {
  for (std::uint64_t seed = 300; seed < 310; ++seed) {
    const Instance inst = testutil::random_instance(seed, 12, 4);
    const auto lambda =
        testutil::random_lambda(seed + 5, inst.num_detections(), 1.0);
    const CostToGo ctg = cost_to_go_serial(inst, lambda);
    for (const Track& t : violated_columns(inst, ctg, 1e-12)) {
      // bitwise: both sides accumulate theta0 then window costs in order
      CHECK(t.cost == track_cost(t.detections, inst));
    }
  }
}

TEST_CASE("returned slack agrees with ell") {
  const Instance inst = testutil::random_instance(400, 14, 5);
  const auto lambda = testutil::random_lambda(401, inst.num_detections());
  const CostToGo ctg = cost_to_go_serial(inst, lambda);
  const auto columns = violated_columns(inst, ctg, kViolationEps);
  // most violated first, and every slack matches its terminal ell
  double prev = -1e300;
  for (const Track& t : columns) {
    double slack = t.cost;
    for (int d : t.detections) slack += lambda[d];
    CHECK(slack <= -kViolationEps + 1e-9);
    CHECK(slack >= prev - 1e-9);
    prev = slack;
    bool found = false;
    for (int s : inst.graph.terminal_index[t.detections.back()])
      if (std::abs(ctg.ell[s] - slack) <= 1e-9) found = true;
    CHECK(found);
  }
}

TEST_CASE("large duals silence pricing") {
  const Instance inst = testutil::random_instance(500, 12, 4);
  double theta_min = 0.0;
  for (const Track& t : oracle::enumerate_tracks(inst))
    theta_min = std::min(theta_min, t.cost);
  std::vector<double> lambda(inst.num_detections(),
                             std::max(0.0, -theta_min) * inst.window);
  CHECK(column_lambda(inst, lambda).empty());
  const auto best = oracle::exact_min_slack(inst, lambda, {}, {});
  CHECK(best.slack >= -kViolationEps);
}

TEST_CASE("nonnegative instance prices nothing") {
  std::vector<Detection> dets{testutil::det(0, 0, 0, 0),
                              testutil::det(1, 1, 1, 0)};
  Instance inst;
  inst.graph =
      build_subtrack_graph(dets, 2, 1, 1, [](std::span<const int>) { return 0.3; });
  inst.detections = dets;
  inst.theta0 = 0.1;
  inst.window = 2;
  std::vector<double> zero( 2, 0.0);
  CHECK(column_lambda(inst, zero).empty());
}

TEST_CASE("raising a dual never lowers the minimum slack") {
  const Instance inst = testutil::random_instance(600, 14, 5);
  auto lambda = testutil::random_lambda(601, inst.num_detections(), 2.0);
  Rng rng(602, 0);
  const CostToGo first = cost_to_go_serial(inst, lambda);
  double prev = *std::min_element(first.ell.begin(), first.ell.end());
  for (int step = 0; step < 25; ++step) {
    lambda[rng.uniform_int(inst.num_detections())] += rng.uniform(0.0, 1.0);
    const CostToGo ctg = cost_to_go_serial(inst, lambda);
    const double cur = *std::min_element(ctg.ell.begin(), ctg.ell.end());
    CHECK(cur >= prev - 1e-12);
    prev = cur;
  }
}
