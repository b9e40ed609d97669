#include "pgsum/bench.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>
#include <stdexcept>

#include "pgsum/dense.hpp"
#include "pgsum/reconstruct.hpp"
#include "pgsum/sampler.hpp"
#include "pgsum/unfold.hpp"

namespace pgsum {
namespace {

struct Accumulator {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::size_t count = 0;

  void add(double v) {
    sum += v;
    sum_sq += v * v;
    ++count;
  }
  double mean() const { return count ? sum / static_cast<double>(count) : 0.0; }
  double stderr_of_mean() const {
    if (count < 2) return 0.0;
    const double m = mean();
    const double var = std::max(0.0, (sum_sq - static_cast<double>(count) * m * m) /
                                         static_cast<double>(count - 1));
    return std::sqrt(var / static_cast<double>(count));
  }
};

std::vector<std::uint8_t> random_mask(std::size_t n, std::size_t k, std::uint64_t seed) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::mt19937_64 rng(seed);
  std::vector<std::uint8_t> h(n, 0);
  // Partial Fisher-Yates.
  for (std::size_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(idx[i], idx[pick(rng)]);
    h[idx[i]] = 1;
  }
  return h;
}

double trial_mse(const PathLaplacian& l, double mu, std::span<const std::uint8_t> h,
                 std::span<const double> truth, std::span<const double> noisy) {
  const GraphSignal x = glr_reconstruct(l, mu, h, observe(noisy, h));
  return mean_squared_error(x, truth);
}

}  // namespace

std::string_view to_string(SignalClass c) {
  return c == SignalClass::kBandlimited ? "bl" : "gmrf";
}

SignalClass parse_signal_class(std::string_view name) {
  if (name == "bl") return SignalClass::kBandlimited;
  if (name == "gmrf") return SignalClass::kGmrf;
  throw std::invalid_argument("unknown signal class '" + std::string(name) +
                              "' (expected bl or gmrf)");
}

std::size_t resolve_budget(std::size_t budget, BudgetUnit unit, std::size_t n) {
  return unit == BudgetUnit::kNodes ? budget : budget * ((n + 19) / 20);
}

const BenchRow* BenchReport::find(double beta, std::size_t budget,
                                  std::string_view method) const {
  for (const auto& r : rows) {
    if (r.beta == beta && r.budget == budget && r.method == method) return &r;
  }
  return nullptr;
}

void BenchReport::write_csv(std::ostream& out) const {
  const auto old_precision = out.precision();
  out << "signal_class,snr_db,beta,C,method,mean_mse,stderr,trials,seed\n";
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (const auto& r : rows) {
    out << to_string(r.signal) << ',';
    if (std::isinf(r.snr_db)) {
      out << "inf";
    } else {
      out << r.snr_db;
    }
    out << ',' << r.beta << ',' << r.budget << ',' << r.method << ',' << r.mean_mse
        << ',' << r.stderr_mse << ',' << r.trials << ',' << r.seed << '\n';
  }
  out.precision(old_precision);
}

BenchReport run_bench(std::span<const EpgGraph> graphs, const BenchConfig& config) {
  if (graphs.empty()) throw std::invalid_argument("run_bench: no graphs");
  if (config.budgets.empty()) throw std::invalid_argument("run_bench: budgets must be non-empty");
  if (config.betas.empty()) throw std::invalid_argument("run_bench: betas must be non-empty");
  if (config.trials < 1) throw std::invalid_argument("run_bench: trials must be >= 1");
  for (const auto& g : graphs) {
    for (std::size_t c : config.budgets) {
      const std::size_t k = resolve_budget(c, config.budget_unit, g.n());
      if (k < 1 || k > g.n()) {
        throw std::invalid_argument("run_bench: budget " + std::to_string(c) +
                                    " resolves to " + std::to_string(k) +
                                    " samples on a graph of " + std::to_string(g.n()) +
                                    " nodes");
      }
    }
  }

  const std::size_t nb = config.betas.size();
  const std::size_t nc = config.budgets.size();
  std::vector<Accumulator> gda(nb * nc);
  std::vector<Accumulator> rnd(nb * nc);

  for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
    const EpgGraph& g = graphs[gi];
    const std::uint64_t graph_seed = derive_seed(config.seed, gi);

    // Signals live on the original graph; sampling and reconstruction use
    // the unfolded path.
    const Eigen::MatrixXd lap = dense_laplacian(g);
    std::optional<BandlimitedGenerator> bl;
    std::optional<GmrfGenerator> gmrf;
    if (config.signal == SignalClass::kBandlimited) {
      bl.emplace(lap, default_bandwidth(g.n()));
    } else {
      gmrf.emplace(lap, config.delta);
    }

    std::vector<PathLaplacian> unfolded;
    std::vector<std::vector<std::uint8_t>> masks(nb * nc);
    for (std::size_t b = 0; b < nb; ++b) {
      unfolded.push_back(unfold(g, config.betas[b]));
      const ScaledOperator op = build_operator(unfolded.back(), config.mu);
      for (std::size_t c = 0; c < nc; ++c) {
        const std::size_t k = resolve_budget(config.budgets[c], config.budget_unit, g.n());
        masks[b * nc + c] = sample_budget(op, k, config.eps).h;
      }
    }

    for (std::size_t t = 0; t < config.trials; ++t) {
      const std::uint64_t trial_seed = derive_seed(graph_seed, t);
      const std::uint64_t signal_seed = derive_seed(trial_seed, 0);
      const GraphSignal truth = bl ? bl->draw(signal_seed) : gmrf->draw(signal_seed);
      const GraphSignal noisy = add_noise_snr(truth, config.snr_db, derive_seed(trial_seed, 1));

      for (std::size_t c = 0; c < nc; ++c) {
        const std::size_t k = resolve_budget(config.budgets[c], config.budget_unit, g.n());
        const auto random_h = random_mask(g.n(), k, derive_seed(trial_seed, 2 + c));
        for (std::size_t b = 0; b < nb; ++b) {
          const auto& h = masks[b * nc + c];
          if (std::find(h.begin(), h.end(), 1) != h.end()) {
            gda[b * nc + c].add(trial_mse(unfolded[b], config.mu, h, truth, noisy));
          }
          if (config.random_baseline) {
            rnd[b * nc + c].add(trial_mse(unfolded[b], config.mu, random_h, truth, noisy));
          }
        }
      }
    }
  }

  BenchReport report;
  auto emit = [&](std::size_t b, std::size_t c, std::string_view method,
                  const Accumulator& acc) {
    BenchRow row;
    row.signal = config.signal;
    row.snr_db = config.snr_db;
    row.beta = config.betas[b];
    row.budget = config.budgets[c];
    row.method = std::string(method);
    row.mean_mse = acc.mean();
    row.stderr_mse = acc.stderr_of_mean();
    row.trials = acc.count;
    row.seed = config.seed;
    report.rows.push_back(std::move(row));
  };
  for (std::size_t b = 0; b < nb; ++b) {
    for (std::size_t c = 0; c < nc; ++c) {
      emit(b, c, kMethodGda, gda[b * nc + c]);
      if (config.random_baseline) emit(b, c, kMethodRandom, rnd[b * nc + c]);
    }
  }
  return report;
}

BenchReport run_bench(const EpgGraph& graph, const BenchConfig& config) {
  return run_bench(std::span<const EpgGraph>(&graph, 1), config);
}

FeatureMatrix random_walk_features(std::size_t n_frames, std::size_t dim, float fps,
                                   std::uint64_t seed) {
  if (n_frames == 0 || dim == 0) {
    throw std::invalid_argument("random_walk_features: empty shape");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> step(0.0, 1.0);
  std::bernoulli_distribution jump(0.05);
  FeatureMatrix m;
  m.n_frames = n_frames;
  m.dim = dim;
  m.fps = fps;
  m.data.resize(n_frames * dim);
  std::vector<double> pos(dim);
  for (double& p : pos) p = 4.0 * step(rng);
  for (std::size_t i = 0; i < n_frames; ++i) {
    const bool scene_cut = i > 0 && jump(rng);
    for (std::size_t d = 0; d < dim; ++d) {
      pos[d] += scene_cut ? 4.0 * step(rng) : 0.5 * step(rng);
      m.data[i * dim + d] = static_cast<float>(pos[d]);
    }
  }
  return m;
}

}  // namespace pgsum
