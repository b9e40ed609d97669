// Monte-Carlo reconstruction benchmark: draw smooth signals on an EPG,
// sample its unfolded path graph, reconstruct, and score the MSE.

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pgsum/epg.hpp"
#include "pgsum/feature_io.hpp"
#include "pgsum/signals.hpp"

namespace pgsum {

enum class SignalClass { kBandlimited, kGmrf };

std::string_view to_string(SignalClass c);
SignalClass parse_signal_class(std::string_view name);  // "bl" | "gmrf"

enum class BudgetUnit {
  kNodes,      // C samples
  kTwentieths  // C * ceil(N / 20) samples, so one budget list fits any N
};

struct BenchConfig {
  std::vector<double> betas{kUnfoldBeta};
  std::vector<std::size_t> budgets;
  BudgetUnit budget_unit = BudgetUnit::kNodes;
  SignalClass signal = SignalClass::kBandlimited;
  double snr_db = kNoiseFree;
  std::size_t trials = 100;
  double mu = 0.05;
  double eps = 1e-9;
  std::uint64_t seed = 0;
  double delta = kGmrfDelta;
  bool random_baseline = true;

  static constexpr double kUnfoldBeta = 2.0;
};

inline constexpr std::string_view kMethodGda = "gda";
inline constexpr std::string_view kMethodRandom = "random";

struct BenchRow {
  SignalClass signal = SignalClass::kBandlimited;
  double snr_db = kNoiseFree;
  double beta = 0.0;
  std::size_t budget = 0;  // as requested, in the config's unit
  std::string method;
  double mean_mse = 0.0;
  double stderr_mse = 0.0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
};

struct BenchReport {
  std::vector<BenchRow> rows;

  const BenchRow* find(double beta, std::size_t budget, std::string_view method) const;
  // Header plus one line per row; snr_db is written as `inf` when noise-free.
  void write_csv(std::ostream& out) const;
};

std::size_t resolve_budget(std::size_t budget, BudgetUnit unit, std::size_t n);

// Rows are averaged over every (graph, trial) pair. Each trial draws one
// signal per graph and shares it across betas, budgets and methods.
BenchReport run_bench(std::span<const EpgGraph> graphs, const BenchConfig& config);
BenchReport run_bench(const EpgGraph& graph, const BenchConfig& config);

// Gaussian random walk in feature space with occasional jumps, a stand-in
// for frame embeddings of a video with a few scenes.
FeatureMatrix random_walk_features(std::size_t n_frames, std::size_t dim,
                                   float fps, std::uint64_t seed);

}  // namespace pgsum
