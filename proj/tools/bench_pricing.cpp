// Compares the serial reference kernels against the OpenMP kernels on a
// generated instance and checks that their outputs agree bitwise.

#include <omp.h>

#include <cstdio>
#include <cstring>
#include <vector>

#include "packtrack/generator.hpp"
#include "packtrack/pricing.hpp"
#include "packtrack/rng.hpp"
#include "packtrack/triplets.hpp"

using namespace packtrack;

int main(int argc, char** argv) {
  GeneratorConfig config;
  config.seed = 7;
  config.n_targets = 20;
  config.n_frames = 100;
  config.arena_width = 1200.0;
  config.arena_height = 1200.0;
  config.miss_prob = 0.05;
  config.clutter_rate = 1.0;
  config.window = 3;
  int reps = 20;
  for (int i = 1; i + 1 < argc; i += 2) {
    if (!std::strcmp(argv[i], "--targets")) config.n_targets = std::atoi(argv[i + 1]);
    else if (!std::strcmp(argv[i], "--frames")) config.n_frames = std::atoi(argv[i + 1]);
    else if (!std::strcmp(argv[i], "--seed")) config.seed = std::atoll(argv[i + 1]);
    else if (!std::strcmp(argv[i], "--K")) config.window = std::atoi(argv[i + 1]);
    else if (!std::strcmp(argv[i], "--reps")) reps = std::atoi(argv[i + 1]);
  }

  std::printf("generating: %d targets, %d frames, K=%d ...\n", config.n_targets,
              config.n_frames, config.window);
  const Generated gen = generate(config);
  const Instance& inst = gen.instance;
  std::printf("detections=%d subtracks=%zu threads=%d\n",
              inst.num_detections(), inst.graph.size(), omp_get_max_threads());

  Rng rng(config.seed, 99);
  std::vector<double> lambda(inst.num_detections());
  for (double& l : lambda) l = rng.uniform(0.0, 2.0);

  // cost-to-go kernel
  double t_serial = 0.0, t_parallel = 0.0;
  CostToGo a, b;
  for (int r = 0; r < reps; ++r) {
    double t0 = omp_get_wtime();
    a = cost_to_go_serial(inst, lambda);
    t_serial += omp_get_wtime() - t0;
    t0 = omp_get_wtime();
    b = cost_to_go_parallel(inst, lambda);
    t_parallel += omp_get_wtime() - t0;
  }
  bool same = a.ell == b.ell && a.backpointer == b.backpointer;
  std::printf("cost_to_go      serial %8.3f ms   openmp %8.3f ms   x%.2f   %s\n",
              1e3 * t_serial / reps, 1e3 * t_parallel / reps,
              t_serial / t_parallel, same ? "bitwise-equal" : "MISMATCH");
  if (!same) return 1;

  // triplet scan on a synthetic fractional solution over DP columns
  const auto cols = violated_columns(inst, a);
  std::vector<Track> columns(cols.begin(),
                             cols.begin() + std::min<std::size_t>(cols.size(), 400));
  std::vector<double> gamma(columns.size());
  for (double& g : gamma) g = rng.uniform(0.05, 0.65);
  double t_row_s = 0.0, t_row_p = 0.0;
  RowSearchResult rs, rp;
  const int row_reps = std::max(1, reps / 4);
  for (int r = 0; r < row_reps; ++r) {
    double t0 = omp_get_wtime();
    rs = most_violated_row_serial(gamma, columns, inst.num_detections());
    t_row_s += omp_get_wtime() - t0;
    t0 = omp_get_wtime();
    rp = most_violated_row_parallel(gamma, columns, inst.num_detections());
    t_row_p += omp_get_wtime() - t0;
  }
  same = rs.found == rp.found && rs.violation == rp.violation &&
         (!rs.found || rs.triplet == rp.triplet);
  std::printf("row_separation  serial %8.3f ms   openmp %8.3f ms   x%.2f   %s\n",
              1e3 * t_row_s / row_reps, 1e3 * t_row_p / row_reps,
              t_row_s / t_row_p, same ? "bitwise-equal" : "MISMATCH");
  return same ? 0 : 1;
}
