#include <doctest.h>

#include <omp.h>

#include "helpers.hpp"
#include "packtrack/pricing.hpp"
#include "packtrack/triplets.hpp"

using namespace packtrack;

// The OpenMP kernels must reproduce the serial reference bit for bit.

TEST_CASE("cost-to-go kernels agree bitwise") {
  omp_set_num_threads(4);
  for (std::uint64_t seed = 9000; seed < 9020; ++seed) {
    const Instance inst = testutil::random_instance(seed, 15, 5);
    const auto lambda =
        testutil::random_lambda(seed + 1, inst.num_detections(), 2.0);
    const CostToGo a = cost_to_go_serial(inst, lambda);
    const CostToGo b = cost_to_go_parallel(inst, lambda);
    CHECK(a.ell == b.ell);
    CHECK(a.backpointer == b.backpointer);
  }
}

TEST_CASE("cost-to-go kernels agree bitwise on a bigger graph") {
  omp_set_num_threads(4);
  GeneratorConfig config;
  config.seed = 31;
  config.n_targets = 12;
  config.n_frames = 40;
  config.arena_width = 800.0;
  config.arena_height = 800.0;
  config.miss_prob = 0.05;
  config.clutter_rate = 2.0;
  const Generated gen = generate(config);
  const auto lambda = testutil::random_lambda(
      32, gen.instance.num_detections(), 2.0);
  const CostToGo a = cost_to_go_serial(gen.instance, lambda);
  const CostToGo b = cost_to_go_parallel(gen.instance, lambda);
  CHECK(a.ell == b.ell);
  CHECK(a.backpointer == b.backpointer);
}

TEST_CASE("masked kernels agree bitwise") {
  omp_set_num_threads(4);
  const Instance inst = testutil::random_instance(9100, 15, 5);
  const auto lambda = testutil::random_lambda(9101, inst.num_detections());
  std::vector<char> allowed(inst.graph.size(), 1);
  Rng rng(9102, 0);
  for (auto& a : allowed) a = rng.bernoulli(0.8) ? 1 : 0;
  const CostToGo a = cost_to_go_serial(inst, lambda, allowed);
  const CostToGo b = cost_to_go_parallel(inst, lambda, allowed);
  CHECK(a.ell == b.ell);
  CHECK(a.backpointer == b.backpointer);
}

TEST_CASE("row separation kernels agree") {
  omp_set_num_threads(4);
  Rng rng(9200, 0);
  for (int round = 0; round < 30; ++round) {
    const int num_dets = 6 + rng.uniform_int(6);
    std::vector<Track> cols;
    std::vector<double> gamma;
    for (int j = 0; j < 10; ++j) {
      Track t;
      for (int d = 0; d < num_dets; ++d)
        if (rng.bernoulli(0.4)) t.detections.push_back(d);
      if (t.detections.size() < 2) continue;
      cols.push_back(t);
      gamma.push_back(rng.uniform(0.0, 0.8));
    }
    const RowSearchResult s = most_violated_row_serial(gamma, cols, num_dets);
    const RowSearchResult p =
        most_violated_row_parallel(gamma, cols, num_dets);
    CHECK(s.found == p.found);
    if (s.found) {
      CHECK(s.violation == p.violation);
      CHECK(s.triplet.dets == p.triplet.dets);
    }
  }
}
