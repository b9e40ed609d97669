// Agreement between an automatic keyframe summary and user summaries.

#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pgsum/path_laplacian.hpp"

namespace pgsum {

inline constexpr double kDefaultWindowSec = 2.5;

struct Summary {
  std::vector<std::size_t> frames;  // strictly increasing
  double fps = 0.0;

  double seconds(std::size_t k) const { return static_cast<double>(frames[k]) / fps; }
  void validate() const;
};

// One frame index per line; `#` starts a comment; an optional `fps=<x>` line
// sets the frame rate, otherwise `default_fps` is used. Errors name the line.
Summary parse_summary(std::istream& in, const std::string& source,
                      std::optional<double> default_fps = std::nullopt);
Summary read_summary(const std::filesystem::path& path,
                     std::optional<double> default_fps = std::nullopt);
void write_summary(const Summary& s, std::ostream& out);

// Extra condition a pair within the window must meet to be matched, e.g. a
// feature-similarity threshold. Arguments are frame indices.
using MatchGate = std::function<bool(std::size_t frame_a, std::size_t frame_u)>;

// Size of a maximum one-to-one matching between frames at most window_sec
// apart. Without a gate the greedy sweep over both sorted lists is exact;
// with one, augmenting paths are used.
std::size_t match_summaries(const Summary& a, const Summary& u, double window_sec,
                            const MatchGate& gate = {});

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t matches = 0;
  // Set when the ratio was 0/0 and reported as 0.
  bool empty_auto = false;
  bool empty_user = false;
};

Prf prf(const Summary& a, const Summary& u, double window_sec,
        const MatchGate& gate = {});

struct SummaryEval {
  std::vector<Prf> per_user;
  double mean_p = 0.0;
  double mean_r = 0.0;
  double mean_f1 = 0.0;
};

SummaryEval eval_video(const Summary& a, std::span<const Summary> users,
                       double window_sec, const MatchGate& gate = {});

// Graph nodes are frames subsampled at `node_rate` from a source at
// `source_fps`; node i (0-based) is source frame round(i * source_fps / node_rate).
struct FrameMapping {
  double source_fps = 0.0;
  double node_rate = 0.0;

  std::size_t frame(std::size_t node) const;
  double seconds(std::size_t node) const { return static_cast<double>(node) / node_rate; }
  Summary summary(std::span<const std::size_t> nodes) const;
};

struct BudgetChoice {
  std::size_t budget = 0;
  SummaryEval eval;
  std::vector<std::size_t> nodes;
};

// Samples at every budget, scores each against the users, and keeps the
// highest mean F1; ties go to the smaller budget.
BudgetChoice budget_search(const PathLaplacian& l, double mu,
                           std::span<const Summary> users,
                           std::span<const std::size_t> budgets, double eps,
                           const FrameMapping& mapping,
                           double window_sec = kDefaultWindowSec);

}  // namespace pgsum
