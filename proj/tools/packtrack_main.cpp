#include <algorithm>
#include <cstdio>
#include <exception>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "packtrack/bounds.hpp"
#include "packtrack/generator.hpp"
#include "packtrack/io.hpp"
#include "packtrack/metrics.hpp"
#include "packtrack/oracle.hpp"
#include "packtrack/pricing.hpp"
#include "packtrack/solver.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitBudget = 2;

struct LoadArgs {
  std::string detections, subtracks;
  double theta0 = 0.0;
  int window = 3;
};

void add_load_flags(CLI::App* cmd, LoadArgs& args) {
  cmd->add_option("--detections", args.detections, "detections CSV")
      ->required();
  cmd->add_option("--subtracks", args.subtracks, "subtracks CSV")->required();
  cmd->add_option("--theta0", args.theta0, "track instancing cost");
  cmd->add_option("--K", args.window, "subtrack window length")->required();
}

int run_solve(const LoadArgs& load, const std::string& mode, double epsilon,
              int max_iters, double time_limit, int bnb_budget, int row_batch,
              int max_new_columns, const std::string& trace_out,
              const std::string& tracks_out) {
  const packtrack::Instance instance = packtrack::load_instance(
      load.detections, load.subtracks, load.theta0, load.window);

  packtrack::SolverConfig config;
  if (mode == "alg1")
    config.mode = packtrack::SolveMode::kColumnsOnly;
  else if (mode == "alg3")
    config.mode = packtrack::SolveMode::kColumnsAndRows;
  else
    throw CLI::ValidationError("--mode must be alg1 or alg3");
  config.epsilon = epsilon;
  config.max_outer_iters = max_iters;
  config.bnb_node_budget = bnb_budget;
  config.row_batch = row_batch;
  config.max_new_columns = max_new_columns;
  if (time_limit > 0.0) config.time_limit = time_limit;

  const packtrack::SolveResult res = packtrack::solve(instance, config);

  if (!trace_out.empty()) packtrack::save_trace(res.trace, trace_out);
  if (!tracks_out.empty()) packtrack::save_tracks(res.tracks, tracks_out);

  std::printf("status: %s\n", res.converged ? "converged" : "budget");
  std::printf("iterations: %d\n", res.iterations);
  std::printf("lower_bound: %.9f\n", res.lower_bound);
  std::printf("upper_bound: %.9f\n", res.upper_bound);
  std::printf("tracks: %zu\n", res.tracks.size());
  return res.converged ? kExitOk : kExitBudget;
}

int run_generate(const packtrack::GeneratorConfig& config,
                 const std::string& prefix) {
  const packtrack::Generated gen = packtrack::generate(config);
  packtrack::save_instance(gen.instance, prefix + "_detections.csv",
                           prefix + "_subtracks.csv");
  packtrack::save_tracks(gen.ground_truth, prefix + "_gt.csv");
  std::printf("detections: %d\n", gen.instance.num_detections());
  std::printf("subtracks: %zu\n", gen.instance.graph.size());
  std::printf("truth_tracks: %zu\n", gen.ground_truth.size());
  return kExitOk;
}

int run_price(const LoadArgs& load, const std::string& lambda_path,
              const std::string& ell_out) {
  const packtrack::Instance instance = packtrack::load_instance(
      load.detections, load.subtracks, load.theta0, load.window);
  std::vector<double> lambda(instance.num_detections(), 0.0);
  if (!lambda_path.empty())
    lambda = packtrack::load_lambda(lambda_path, instance.num_detections());

  const packtrack::CostToGo ctg =
      packtrack::compute_cost_to_go(instance, lambda);
  if (!ell_out.empty()) {
    std::FILE* f = std::fopen(ell_out.c_str(), "w");
    if (!f) throw std::runtime_error("cannot write " + ell_out);
    std::fprintf(f, "subtrack,ell\n");
    for (std::size_t s = 0; s < ctg.ell.size(); ++s)
      std::fprintf(f, "%zu,%.17g\n", s, ctg.ell[s]);
    std::fclose(f);
  }
  const auto tracks = packtrack::violated_columns(instance, ctg);
  std::printf("min_ell: %.9f\n",
              ctg.ell.empty()
                  ? 0.0
                  : *std::min_element(ctg.ell.begin(), ctg.ell.end()));
  std::printf("violated_columns: %zu\n", tracks.size());
  for (const packtrack::Track& t : tracks) {
    double slack = t.cost;
    for (int d : t.detections) slack += lambda[d];
    std::printf("%.9f:", slack);
    for (std::size_t i = 0; i < t.detections.size(); ++i)
      std::printf("%s%d", i ? "," : " ", t.detections[i]);
    std::printf("\n");
  }
  return kExitOk;
}

int run_oracle(const LoadArgs& load, const std::string& tracks_out) {
  const packtrack::Instance instance = packtrack::load_instance(
      load.detections, load.subtracks, load.theta0, load.window);
  const auto res = packtrack::oracle::exact_mwsp(instance);
  std::printf("optimum: %.9f\n", res.value);
  std::printf("tracks: %zu\n", res.tracks.size());
  for (const packtrack::Track& t : res.tracks) {
    for (std::size_t i = 0; i < t.detections.size(); ++i)
      std::printf("%s%d", i ? "," : "", t.detections[i]);
    std::printf("\n");
  }
  if (!tracks_out.empty()) packtrack::save_tracks(res.tracks, tracks_out);
  return kExitOk;
}

int run_metrics(const std::string& tracks_path, const std::string& truth_path) {
  const auto sol = packtrack::load_tracks(tracks_path);
  const auto truth = packtrack::load_tracks(truth_path);
  const packtrack::MetricsReport rep = packtrack::compute_metrics(sol, truth);
  std::printf("exact_matches: %d\n", rep.exact_matches);
  std::printf("missed: %d\n", rep.missed);
  std::printf("spurious: %d\n", rep.spurious);
  std::printf("jaccard: %.6f\n", rep.jaccard);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-target tracking by set-packing column/row generation"};
  app.require_subcommand(1);

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "solve a tracking instance");
  LoadArgs solve_load;
  add_load_flags(solve_cmd, solve_load);
  std::string mode = "alg3";
  double epsilon = packtrack::kViolationEps;
  int max_iters = 1000;
  double time_limit = 0.0;
  int bnb_budget = 10000;
  int row_batch = 1;
  int max_new_columns = 0;
  std::string trace_out, tracks_out;
  solve_cmd->add_option("--mode", mode, "alg1 (columns) or alg3 (columns+rows)");
  solve_cmd->add_option("--epsilon", epsilon, "violation threshold");
  solve_cmd->add_option("--max-iters", max_iters, "outer iteration budget");
  solve_cmd->add_option("--time-limit", time_limit, "seconds, 0 = none");
  solve_cmd->add_option("--bnb-budget", bnb_budget, "pricing node budget");
  solve_cmd->add_option("--row-batch", row_batch, "rows per separation round");
  solve_cmd->add_option("--max-new-columns", max_new_columns,
                        "columns added per iteration, 0 = all");
  solve_cmd->add_option("--trace-out", trace_out, "per-iteration trace CSV");
  solve_cmd->add_option("--tracks-out", tracks_out, "selected tracks CSV");

  // generate
  auto* gen_cmd = app.add_subcommand("generate", "write a synthetic instance");
  packtrack::GeneratorConfig gen_config;
  std::string out_prefix;
  gen_cmd->add_option("--seed", gen_config.seed, "random seed");
  gen_cmd->add_option("--targets", gen_config.n_targets, "number of targets");
  gen_cmd->add_option("--frames", gen_config.n_frames, "number of frames");
  gen_cmd->add_option("--width", gen_config.arena_width, "arena width");
  gen_cmd->add_option("--height", gen_config.arena_height, "arena height");
  gen_cmd->add_option("--motion-noise", gen_config.motion_noise,
                      "trajectory noise std-dev");
  gen_cmd->add_option("--miss-prob", gen_config.miss_prob,
                      "detection miss probability");
  gen_cmd->add_option("--clutter-rate", gen_config.clutter_rate,
                      "expected false positives per frame");
  gen_cmd->add_option("--birth-prob", gen_config.birth_prob,
                      "per-frame birth probability");
  gen_cmd->add_option("--death-prob", gen_config.death_prob,
                      "per-frame death probability");
  gen_cmd->add_option("--K", gen_config.window, "subtrack window length");
  gen_cmd->add_option("--nn", gen_config.neighbors,
                      "nearest neighbors per future frame");
  gen_cmd->add_option("--max-skip", gen_config.max_skip,
                      "largest frame gap for links");
  gen_cmd->add_option("--theta0", gen_config.theta0, "track instancing cost");
  gen_cmd->add_option("--out-prefix", out_prefix, "output path prefix")
      ->required();

  // price
  auto* price_cmd =
      app.add_subcommand("price", "dump cost-to-go and violated columns");
  LoadArgs price_load;
  add_load_flags(price_cmd, price_load);
  std::string lambda_path, ell_out;
  price_cmd->add_option("--lambda", lambda_path, "duals CSV (det,lambda)");
  price_cmd->add_option("--ell-out", ell_out, "cost-to-go CSV output");

  // oracle
  auto* oracle_cmd =
      app.add_subcommand("oracle", "exact optimum on a small instance");
  LoadArgs oracle_load;
  add_load_flags(oracle_cmd, oracle_load);
  std::string oracle_tracks_out;
  oracle_cmd->add_option("--tracks-out", oracle_tracks_out,
                         "optimal tracks CSV");

  // metrics
  auto* metrics_cmd =
      app.add_subcommand("metrics", "compare tracks against ground truth");
  std::string metrics_tracks, metrics_truth;
  metrics_cmd->add_option("--tracks", metrics_tracks, "solution tracks CSV")
      ->required();
  metrics_cmd->add_option("--truth", metrics_truth, "ground-truth tracks CSV")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve_cmd->parsed())
      return run_solve(solve_load, mode, epsilon, max_iters, time_limit,
                       bnb_budget, row_batch, max_new_columns, trace_out,
                       tracks_out);
    if (gen_cmd->parsed()) return run_generate(gen_config, out_prefix);
    if (price_cmd->parsed()) return run_price(price_load, lambda_path, ell_out);
    if (oracle_cmd->parsed()) return run_oracle(oracle_load, oracle_tracks_out);
    if (metrics_cmd->parsed()) return run_metrics(metrics_tracks, metrics_truth);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitError;
  }
  return kExitError;
}
