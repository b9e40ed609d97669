#include "pgsum/keyframe_eval.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "pgsum/feature_io.hpp"
#include "pgsum/sampler.hpp"

namespace pgsum {
namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const std::string& source, std::size_t line, const std::string& what) {
  throw FormatError(source + ":" + std::to_string(line) + ": " + what);
}

void check_fps(const Summary& a, const Summary& u) {
  if (a.fps != u.fps) {
    throw std::invalid_argument("summaries use different frame rates (" +
                                std::to_string(a.fps) + " vs " + std::to_string(u.fps) +
                                ")");
  }
}

bool within(const Summary& a, std::size_t i, const Summary& u, std::size_t j,
            double window_sec) {
  return std::abs(a.seconds(i) - u.seconds(j)) <= window_sec;
}

// Kuhn's augmenting paths; summaries are a few dozen frames at most.
std::size_t max_matching(const Summary& a, const Summary& u, double window_sec,
                         const MatchGate& gate) {
  std::vector<std::vector<std::size_t>> adj(a.frames.size());
  for (std::size_t i = 0; i < a.frames.size(); ++i) {
    for (std::size_t j = 0; j < u.frames.size(); ++j) {
      if (within(a, i, u, j, window_sec) && gate(a.frames[i], u.frames[j])) {
        adj[i].push_back(j);
      }
    }
  }
  constexpr std::size_t kFree = static_cast<std::size_t>(-1);
  std::vector<std::size_t> owner(u.frames.size(), kFree);
  std::vector<char> seen;
  std::function<bool(std::size_t)> augment = [&](std::size_t i) {
    for (std::size_t j : adj[i]) {
      if (seen[j]) continue;
      seen[j] = 1;
      if (owner[j] == kFree || augment(owner[j])) {
        owner[j] = i;
        return true;
      }
    }
    return false;
  };
  std::size_t count = 0;
  for (std::size_t i = 0; i < a.frames.size(); ++i) {
    seen.assign(u.frames.size(), 0);
    if (augment(i)) ++count;
  }
  return count;
}

}  // namespace

void Summary::validate() const {
  if (!(fps > 0.0) || !std::isfinite(fps)) {
    throw std::invalid_argument("summary fps must be positive");
  }
  for (std::size_t k = 1; k < frames.size(); ++k) {
    if (frames[k] <= frames[k - 1]) {
      throw std::invalid_argument("summary frames must be strictly increasing");
    }
  }
}

Summary parse_summary(std::istream& in, const std::string& source,
                      std::optional<double> default_fps) {
  Summary s;
  std::optional<double> fps;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view text = raw;
    if (const auto hash = text.find('#'); hash != std::string_view::npos) {
      text = text.substr(0, hash);
    }
    text = trim(text);
    if (text.empty()) continue;

    if (text.starts_with("fps=")) {
      if (fps) fail(source, line, "duplicate fps header");
      const std::string value(trim(text.substr(4)));
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(value, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != value.size() || !(v > 0.0) || !std::isfinite(v)) {
        fail(source, line, "invalid fps '" + value + "'");
      }
      fps = v;
      continue;
    }

    std::size_t frame = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), frame);
    if (ec != std::errc() || end != text.data() + text.size()) {
      fail(source, line, "expected a non-negative frame index, got '" + std::string(text) + "'");
    }
    if (!s.frames.empty() && frame <= s.frames.back()) {
      fail(source, line, "frame " + std::to_string(frame) + " is not greater than " +
                             std::to_string(s.frames.back()));
    }
    s.frames.push_back(frame);
  }
  if (!fps) fps = default_fps;
  if (!fps) fail(source, line, "no fps= header and no default frame rate given");
  s.fps = *fps;
  return s;
}

Summary read_summary(const std::filesystem::path& path, std::optional<double> default_fps) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open summary file " + path.string());
  return parse_summary(in, path.string(), default_fps);
}

void write_summary(const Summary& s, std::ostream& out) {
  out << "fps=" << s.fps << '\n';
  for (std::size_t f : s.frames) out << f << '\n';
}

std::size_t match_summaries(const Summary& a, const Summary& u, double window_sec,
                            const MatchGate& gate) {
  check_fps(a, u);
  if (!(window_sec >= 0.0)) throw std::invalid_argument("window_sec must be non-negative");
  if (gate) return max_matching(a, u, window_sec, gate);

  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t count = 0;
  while (i < a.frames.size() && j < u.frames.size()) {
    if (within(a, i, u, j, window_sec)) {
      ++count;
      ++i;
      ++j;
    } else if (a.seconds(i) < u.seconds(j)) {
      ++i;
    } else {
      ++j;
    }
  }
  return count;
}

Prf prf(const Summary& a, const Summary& u, double window_sec, const MatchGate& gate) {
  Prf out;
  out.matches = match_summaries(a, u, window_sec, gate);
  const auto m = static_cast<double>(out.matches);
  out.empty_auto = a.frames.empty();
  out.empty_user = u.frames.empty();
  out.precision = out.empty_auto ? 0.0 : m / static_cast<double>(a.frames.size());
  out.recall = out.empty_user ? 0.0 : m / static_cast<double>(u.frames.size());
  const double denom = out.precision + out.recall;
  out.f1 = denom > 0.0 ? 2.0 * out.precision * out.recall / denom : 0.0;
  return out;
}

SummaryEval eval_video(const Summary& a, std::span<const Summary> users,
                       double window_sec, const MatchGate& gate) {
  if (users.empty()) throw std::invalid_argument("eval_video: at least one user summary is required");
  SummaryEval ev;
  for (const Summary& u : users) {
    ev.per_user.push_back(prf(a, u, window_sec, gate));
    ev.mean_p += ev.per_user.back().precision;
    ev.mean_r += ev.per_user.back().recall;
    ev.mean_f1 += ev.per_user.back().f1;
  }
  const auto n = static_cast<double>(users.size());
  ev.mean_p /= n;
  ev.mean_r /= n;
  ev.mean_f1 /= n;
  return ev;
}

std::size_t FrameMapping::frame(std::size_t node) const {
  return static_cast<std::size_t>(std::llround(static_cast<double>(node) * source_fps / node_rate));
}

Summary FrameMapping::summary(std::span<const std::size_t> nodes) const {
  if (!(source_fps > 0.0) || !(node_rate > 0.0)) {
    throw std::invalid_argument("frame mapping rates must be positive");
  }
  Summary s;
  s.fps = source_fps;
  for (std::size_t node : nodes) {
    const std::size_t f = frame(node);
    // Two nodes can round to one frame only when node_rate > source_fps.
    if (s.frames.empty() || f > s.frames.back()) s.frames.push_back(f);
  }
  return s;
}

BudgetChoice budget_search(const PathLaplacian& l, double mu,
                           std::span<const Summary> users,
                           std::span<const std::size_t> budgets, double eps,
                           const FrameMapping& mapping, double window_sec) {
  if (budgets.empty()) throw std::invalid_argument("budget_search: budgets must be non-empty");
  const ScaledOperator op = build_operator(l, mu);
  std::optional<BudgetChoice> best;
  for (std::size_t c : budgets) {
    SampleResult run = sample_budget(op, c, eps);
    SummaryEval ev = eval_video(mapping.summary(run.samples), users, window_sec);
    const bool better = !best || ev.mean_f1 > best->eval.mean_f1 ||
                        (ev.mean_f1 == best->eval.mean_f1 && c < best->budget);
    if (better) best = BudgetChoice{c, std::move(ev), std::move(run.samples)};
  }
  return std::move(*best);
}

}  // namespace pgsum
