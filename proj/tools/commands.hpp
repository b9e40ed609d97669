// Subcommand implementations behind the pgsum executable. Each returns the
// process exit code; failures are reported on stderr.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pgsum::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitMissingInput = 2;

struct GraphOptions {
  std::string features;
  std::string format = "binary";
  std::size_t m_hops = 2;
  double sigma = 6.0;
};

struct SampleOptions {
  GraphOptions graph;
  double beta = 2.0;
  double mu = 0.05;
  std::optional<std::size_t> budget;
  std::optional<double> threshold;
  double eps = 1e-9;
  std::string trace;
};

struct BuildGraphOptions {
  GraphOptions graph;
  std::string out = "-";
};

struct UnfoldOptions {
  GraphOptions graph;
  double beta = 2.0;
  std::string out = "-";
};

struct SampleCommandOptions {
  SampleOptions sample;
  std::string out = "-";
};

struct KeyframeOptions {
  SampleOptions sample;
  std::optional<double> fps;  // source video rate; defaults to the feature rate
  std::vector<std::string> users;
  std::vector<std::size_t> budgets;  // with users: pick the best budget
  double window_sec = 2.5;
  std::string out = "-";
};

struct BenchOptions {
  std::vector<std::string> graphs;  // feature files
  std::string format = "binary";
  std::size_t synthetic = 0;        // extra random-walk videos
  std::size_t min_nodes = 116;
  std::size_t max_nodes = 230;
  std::size_t m_hops = 2;
  double sigma = 6.0;
  std::vector<double> betas{2.0};
  std::vector<std::size_t> budgets;
  std::string budget_unit = "nodes";
  std::string signal = "bl";
  std::string snr = "inf";
  std::size_t trials = 100;
  double mu = 0.05;
  double eps = 1e-9;
  std::uint64_t seed = 0;
  std::string out = "-";
};

struct EvalOptions {
  std::string automatic;
  std::vector<std::string> users;
  std::optional<double> fps;
  double window_sec = 2.5;
  std::string out;
};

int run_build_graph(const BuildGraphOptions& o);
int run_unfold(const UnfoldOptions& o);
int run_sample(const SampleCommandOptions& o);
int run_keyframes(const KeyframeOptions& o);
int run_bench(const BenchOptions& o);
int run_eval(const EvalOptions& o);

}  // namespace pgsum::cli
