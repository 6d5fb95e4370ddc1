#include <doctest.h>

#include "helpers.hpp"
#include "packtrack/metrics.hpp"

using namespace packtrack;

namespace {

Track mk(std::vector<int> dets) {
  Track t;
  t.detections = std::move(dets);
  return t;
}

}  // namespace

TEST_CASE("identical sets score perfectly") {
  const std::vector<Track> truth{mk({0, 1, 2}), mk({3, 4})};
  const MetricsReport rep = compute_metrics(truth, truth);
  CHECK(rep.jaccard == 1.0);
  CHECK(rep.exact_matches == 2);
  CHECK(rep.missed == 0);
  CHECK(rep.spurious == 0);
}

TEST_CASE("empty solution scores zero") {
  const std::vector<Track> truth{mk({0, 1, 2})};
  const MetricsReport rep = compute_metrics({}, truth);
  CHECK(rep.jaccard == 0.0);
  CHECK(rep.exact_matches == 0);
  CHECK(rep.missed == 1);
  CHECK(rep.spurious == 0);
}

TEST_CASE("partial overlap counts association pairs") {
  // truth pairs: {01,02,12,34}; solution pairs: {01,34,35,45}
  const std::vector<Track> truth{mk({0, 1, 2}), mk({3, 4})};
  const std::vector<Track> sol{mk({0, 1}), mk({3, 4, 5})};
  const MetricsReport rep = compute_metrics(sol, truth);
  CHECK(rep.exact_matches == 0);
  CHECK(rep.missed == 2);
  CHECK(rep.spurious == 2);
  // intersection {01,34} = 2, union = 6
  CHECK(rep.jaccard == doctest::Approx(2.0 / 6.0));
}

TEST_CASE("single-detection tracks carry no pairs") {
  const std::vector<Track> truth{mk({0}), mk({1})};
  const MetricsReport rep = compute_metrics(truth, truth);
  CHECK(rep.jaccard == 1.0);  // both pair sets empty
  CHECK(rep.exact_matches == 2);
}
