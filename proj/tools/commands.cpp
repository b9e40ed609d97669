#include "commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include "json.hpp"
#include <sstream>
#include <stdexcept>

#include "pgsum/bench.hpp"
#include "pgsum/epg.hpp"
#include "pgsum/feature_io.hpp"
#include "pgsum/keyframe_eval.hpp"
#include "pgsum/sampler.hpp"
#include "pgsum/unfold.hpp"

namespace pgsum::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

// Thrown for inputs that do not exist; mapped to exit code 2.
class MissingInput : public std::runtime_error {
 public:
  explicit MissingInput(const std::string& path)
      : std::runtime_error("input file not found: " + path) {}
};

void require_file(const std::string& path) {
  if (path.empty() || !fs::is_regular_file(path)) throw MissingInput(path);
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const MissingInput& e) {
    std::cerr << "pgsum: " << e.what() << '\n';
    return kExitMissingInput;
  } catch (const std::exception& e) {
    std::cerr << "pgsum: " << e.what() << '\n';
    return kExitFailure;
  }
}

// Writes to `path`, or stdout for "-".
template <typename Fn>
void emit(const std::string& path, Fn&& write) {
  if (path == "-") {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write(out);
  if (!out) throw std::runtime_error("error writing " + path);
}

FeatureMatrix load(const std::string& path, const std::string& format) {
  require_file(path);
  return load_features(path, parse_feature_format(format));
}

EpgGraph graph_from(const GraphOptions& o, FeatureMatrix* keep = nullptr) {
  FeatureMatrix f = load(o.features, o.format);
  EpgGraph g = build_epg(f, o.m_hops, o.sigma);
  if (keep) *keep = std::move(f);
  return g;
}

SampleResult run_sampler(const SampleOptions& o, const PathLaplacian& l) {
  if (o.budget.has_value() == o.threshold.has_value()) {
    throw std::invalid_argument("give exactly one of --budget and --threshold");
  }
  const ScaledOperator op = build_operator(l, o.mu);
  if (o.threshold) {
    return sample_with_threshold(op, *o.threshold, l.n());
  }
  SearchTrace trace;
  SampleResult r = sample_budget(op, *o.budget, o.eps, o.trace.empty() ? nullptr : &trace);
  if (!o.trace.empty()) emit(o.trace, [&](std::ostream& out) { trace.write_jsonl(out); });
  return r;
}

json partitions_json(const std::vector<Partition>& parts) {
  json arr = json::array();
  for (const auto& p : parts) arr.push_back({{"start", p.start}, {"end", p.end}, {"sample", p.sample}});
  return arr;
}

double parse_snr(const std::string& s) {
  if (s == "inf" || s == "none") return kNoiseFree;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || !std::isfinite(v)) {
    throw std::invalid_argument("--snr expects a dB value or 'inf', got '" + s + "'");
  }
  return v;
}

}  // namespace

int run_build_graph(const BuildGraphOptions& o) {
  return guarded([&] {
    const EpgGraph g = graph_from(o.graph);
    emit(o.out, [&](std::ostream& out) { g.write_edge_list(out); });
    return kExitOk;
  });
}

int run_unfold(const UnfoldOptions& o) {
  return guarded([&] {
    const PathLaplacian l = unfold(graph_from(o.graph), o.beta);
    emit(o.out, [&](std::ostream& out) { l.write_text(out); });
    return kExitOk;
  });
}

int run_sample(const SampleCommandOptions& o) {
  return guarded([&] {
    const PathLaplacian l = unfold(graph_from(o.sample.graph), o.sample.beta);
    const SampleResult r = run_sampler(o.sample, l);
    json doc = {{"nodes", r.samples},
                {"threshold", r.threshold},
                {"exhausted", r.exhausted},
                {"partitions", partitions_json(r.partitions)},
                {"scalars", r.scalars}};
    emit(o.out, [&](std::ostream& out) { out << doc.dump(2) << '\n'; });
    return kExitOk;
  });
}

int run_keyframes(const KeyframeOptions& o) {
  return guarded([&] {
    FeatureMatrix feats;
    const EpgGraph g = graph_from(o.sample.graph, &feats);
    const PathLaplacian l = unfold(g, o.sample.beta);
    const FrameMapping mapping{o.fps.value_or(feats.fps), feats.fps};

    SampleResult r;
    json extra = json::object();
    if (!o.users.empty()) {
      if (o.budgets.empty()) throw std::invalid_argument("--users needs --budgets");
      std::vector<Summary> users;
      for (const auto& path : o.users) {
        require_file(path);
        users.push_back(read_summary(path, mapping.source_fps));
      }
      const BudgetChoice best =
          budget_search(l, o.sample.mu, users, o.budgets, o.sample.eps, mapping, o.window_sec);
      SampleOptions chosen = o.sample;
      chosen.budget = best.budget;
      chosen.threshold.reset();
      r = run_sampler(chosen, l);
      extra["budget"] = best.budget;
      extra["mean_f1"] = best.eval.mean_f1;
    } else {
      r = run_sampler(o.sample, l);
      if (o.sample.budget) extra["budget"] = *o.sample.budget;
    }

    json frames = json::array();
    json seconds = json::array();
    for (std::size_t node : r.samples) {
      frames.push_back(mapping.frame(node));
      seconds.push_back(mapping.seconds(node));
    }
    json doc = {{"nodes", r.samples},          {"frames", frames},
                {"timestamps", seconds},       {"threshold", r.threshold},
                {"exhausted", r.exhausted},    {"source_fps", mapping.source_fps},
                {"partitions", partitions_json(r.partitions)}};
    doc.update(extra);
    emit(o.out, [&](std::ostream& out) { out << doc.dump(2) << '\n'; });
    return kExitOk;
  });
}

int run_bench(const BenchOptions& o) {
  return guarded([&] {
    BenchConfig cfg;
    cfg.betas = o.betas;
    cfg.budgets = o.budgets;
    if (o.budget_unit == "nodes") {
      cfg.budget_unit = BudgetUnit::kNodes;
    } else if (o.budget_unit == "n20") {
      cfg.budget_unit = BudgetUnit::kTwentieths;
    } else {
      throw std::invalid_argument("--budget-unit must be nodes or n20");
    }
    cfg.signal = parse_signal_class(o.signal);
    cfg.snr_db = parse_snr(o.snr);
    cfg.trials = o.trials;
    cfg.mu = o.mu;
    cfg.eps = o.eps;
    cfg.seed = o.seed;

    std::vector<EpgGraph> graphs;
    for (const auto& path : o.graphs) graphs.push_back(build_epg(load(path, o.format), o.m_hops, o.sigma));
    if (o.synthetic > 0) {
      if (o.min_nodes < 2 || o.min_nodes > o.max_nodes) {
        throw std::invalid_argument("need 2 <= --min-nodes <= --max-nodes");
      }
      const std::uint64_t stream = derive_seed(o.seed, 0xfea7);
      for (std::size_t v = 0; v < o.synthetic; ++v) {
        const std::uint64_t s = derive_seed(stream, v);
        const std::size_t n = o.min_nodes + static_cast<std::size_t>(s % (o.max_nodes - o.min_nodes + 1));
        graphs.push_back(build_epg(random_walk_features(n, 16, 2.0f, s), o.m_hops, o.sigma));
      }
    }
    if (graphs.empty()) throw std::invalid_argument("give --graphs files and/or --synthetic N");
    const BenchReport report = pgsum::run_bench(graphs, cfg);
    emit(o.out, [&](std::ostream& out) { report.write_csv(out); });
    return kExitOk;
  });
}

int run_eval(const EvalOptions& o) {
  return guarded([&] {
    require_file(o.automatic);
    const Summary a = read_summary(o.automatic, o.fps);
    std::vector<Summary> users;
    for (const auto& path : o.users) {
      require_file(path);
      users.push_back(read_summary(path, o.fps));
    }
    const SummaryEval ev = eval_video(a, users, o.window_sec);

    std::ostringstream csv;
    csv << std::setprecision(std::numeric_limits<double>::max_digits10);
    csv << "user,precision,recall,f1,matches,note\n";
    for (std::size_t u = 0; u < ev.per_user.size(); ++u) {
      const Prf& p = ev.per_user[u];
      std::string note;
      if (p.empty_auto) note += "empty automatic summary: precision 0/0 taken as 0;";
      if (p.empty_user) note += "empty user summary: recall 0/0 taken as 0;";
      csv << o.users[u] << ',' << p.precision << ',' << p.recall << ',' << p.f1 << ','
          << p.matches << ',' << note << '\n';
    }
    csv << "mean," << ev.mean_p << ',' << ev.mean_r << ',' << ev.mean_f1 << ",,\n";

    std::cout << std::fixed << std::setprecision(4);
    for (std::size_t u = 0; u < ev.per_user.size(); ++u) {
      const Prf& p = ev.per_user[u];
      std::cout << o.users[u] << "  P=" << p.precision << "  R=" << p.recall << "  F1=" << p.f1;
      if (p.empty_auto || p.empty_user) std::cout << "  (0/0 -> 0)";
      std::cout << '\n';
    }
    std::cout << "mean  P=" << ev.mean_p << "  R=" << ev.mean_r << "  F1=" << ev.mean_f1 << '\n';
    if (!o.out.empty()) emit(o.out, [&](std::ostream& out) { out << csv.str(); });
    return kExitOk;
  });
}

}  // namespace pgsum::cli
