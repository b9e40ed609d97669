#include <CLI11.hpp>

#include "commands.hpp"

namespace {

using namespace pgsum::cli;

void add_graph_flags(CLI::App* app, GraphOptions& g) {
  app->add_option("--features", g.features, "Frame-feature file")->required();
  app->add_option("--format", g.format, "Feature file format: binary (FVEC) or csv")
      ->check(CLI::IsMember({"binary", "fvec", "csv"}));
  app->add_option("--m-hops", g.m_hops, "Hops M of the elaborated path graph")
      ->check(CLI::PositiveNumber);
  app->add_option("--sigma", g.sigma, "Kernel width of exp(-d^2/sigma^2)")
      ->check(CLI::PositiveNumber);
}

void add_sample_flags(CLI::App* app, SampleOptions& s) {
  add_graph_flags(app, s.graph);
  app->add_option("--beta", s.beta, "Unfolding parameter (2: edges only, 0: self-loops only)");
  app->add_option("--mu", s.mu, "GLR weight mu")->check(CLI::PositiveNumber);
  auto* budget = app->add_option("--budget", s.budget, "Sample budget C")->check(CLI::PositiveNumber);
  app->add_option("--threshold", s.threshold, "Fixed threshold T instead of a budget")
      ->excludes(budget);
  app->add_option("--eps", s.eps, "Binary-search precision on T")->check(CLI::PositiveNumber);
  app->add_option("--trace", s.trace, "Write the T-search trace here (JSON lines)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Keyframe selection by Gershgorin-disc sampling on unfolded path graphs"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  int code = kExitOk;

  BuildGraphOptions build;
  auto* build_cmd = app.add_subcommand("build-graph", "Build the M-hop path graph; prints `i j w` edges (1-based)");
  add_graph_flags(build_cmd, build.graph);
  build_cmd->add_option("--out", build.out, "Output path, - for stdout");
  build_cmd->callback([&] { code = run_build_graph(build); });

  UnfoldOptions unf;
  auto* unfold_cmd = app.add_subcommand("unfold", "Unfold the graph into a 1-hop path Laplacian");
  add_graph_flags(unfold_cmd, unf.graph);
  unfold_cmd->add_option("--beta", unf.beta, "Unfolding parameter");
  unfold_cmd->add_option("--out", unf.out, "Output path, - for stdout");
  unfold_cmd->callback([&] { code = run_unfold(unf); });

  SampleCommandOptions samp;
  auto* sample_cmd = app.add_subcommand("sample", "Select sample nodes; JSON with 0-based nodes");
  add_sample_flags(sample_cmd, samp.sample);
  sample_cmd->add_option("--out", samp.out, "Output path, - for stdout");
  sample_cmd->callback([&] { code = run_sample(samp); });

  KeyframeOptions key;
  auto* key_cmd = app.add_subcommand("keyframes", "Select keyframes and map them to source frames");
  add_sample_flags(key_cmd, key.sample);
  key_cmd->add_option("--fps", key.fps, "Source video frame rate (default: the feature rate)")
      ->check(CLI::PositiveNumber);
  key_cmd->add_option("--user", key.users, "User summary; with --budgets picks the best budget");
  key_cmd->add_option("--budgets", key.budgets, "Candidate budgets for --user")->delimiter(',');
  key_cmd->add_option("--window-sec", key.window_sec, "Matching window in seconds")
      ->check(CLI::NonNegativeNumber);
  key_cmd->add_option("--out", key.out, "Output path, - for stdout");
  key_cmd->callback([&] { code = run_keyframes(key); });

  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "Monte-Carlo reconstruction MSE; CSV report");
  bench_cmd->add_option("--graphs", bench.graphs, "Feature files, one graph each");
  bench_cmd->add_option("--format", bench.format, "Feature file format")
      ->check(CLI::IsMember({"binary", "fvec", "csv"}));
  bench_cmd->add_option("--synthetic", bench.synthetic, "Add this many random-walk videos");
  bench_cmd->add_option("--min-nodes", bench.min_nodes, "Smallest synthetic video");
  bench_cmd->add_option("--max-nodes", bench.max_nodes, "Largest synthetic video");
  bench_cmd->add_option("--m-hops", bench.m_hops, "Hops M")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--sigma", bench.sigma, "Kernel width")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--beta,--betas", bench.betas, "Unfolding parameters")->delimiter(',');
  bench_cmd->add_option("--budget,--budgets", bench.budgets, "Budgets C")->delimiter(',')->required();
  bench_cmd->add_option("--budget-unit", bench.budget_unit, "nodes, or n20 for multiples of ceil(N/20)")
      ->check(CLI::IsMember({"nodes", "n20"}));
  bench_cmd->add_option("--signal", bench.signal, "Signal class: bl or gmrf")
      ->check(CLI::IsMember({"bl", "gmrf"}));
  bench_cmd->add_option("--snr", bench.snr, "Noise level in dB, or inf");
  bench_cmd->add_option("--trials", bench.trials, "Trials per graph")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--mu", bench.mu, "GLR weight mu")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--eps", bench.eps, "Binary-search precision")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--seed", bench.seed, "Seed for every random draw");
  bench_cmd->add_option("--out", bench.out, "Output path, - for stdout");
  bench_cmd->callback([&] { code = run_bench(bench); });

  EvalOptions ev;
  auto* eval_cmd = app.add_subcommand("eval", "Precision, recall and F1 against user summaries");
  eval_cmd->add_option("--auto", ev.automatic, "Automatic summary file")->required();
  eval_cmd->add_option("--user", ev.users, "User summary file (repeatable)")->required();
  eval_cmd->add_option("--fps", ev.fps, "Frame rate for files without an fps= line")
      ->check(CLI::PositiveNumber);
  eval_cmd->add_option("--window-sec", ev.window_sec, "Matching window in seconds")
      ->check(CLI::NonNegativeNumber);
  eval_cmd->add_option("--out", ev.out, "Also write the table as CSV here");
  eval_cmd->callback([&] { code = run_eval(ev); });

  CLI11_PARSE(app, argc, argv);
  return code;
}
