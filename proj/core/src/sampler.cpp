#include "pgsum/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <string>

namespace pgsum {
namespace {

// Rows of the subgraph that starts at `start`. Cutting the edge to the left
// of `start` (and to the right of the partition's last node) removes its
// weight from the adjacent center as well as from the radius.
class Block {
 public:
  Block(const ScaledOperator& op, std::size_t start) : op_(op), start_(start) {}

  double center(std::size_t i, bool is_end) const {
    double c = op_.centers[i];
    if (i == start_ && start_ > 0) c -= op_.edges[start_ - 1];
    if (is_end && i + 1 < op_.n()) c -= op_.edges[i];
    return c;
  }
  // Left entry magnitude of row i, scaled by t = s_i / s_{i-1}.
  double left(std::size_t i, double ratio) const {
    return i > start_ ? ratio * op_.w_left[i - 1] : 0.0;
  }
  double right(std::size_t i) const { return op_.w_right[i]; }

 private:
  const ScaledOperator& op_;
  std::size_t start_;
};

}  // namespace

double ScaledOperator::left_end(std::size_t i) const {
  double end = centers[i];
  if (i > 0) end -= w_left[i - 1];
  if (i + 1 < n()) end -= w_right[i];
  return end;
}

ScaledOperator build_operator(const PathLaplacian& l, double mu) {
  if (!(mu > 0.0) || !std::isfinite(mu)) {
    throw std::invalid_argument("build_operator: mu must be positive");
  }
  const std::size_t n = l.n();
  const auto w = l.sub_weights();
  ScaledOperator op;
  op.mu = mu;
  op.centers.resize(n);
  op.edges.resize(n - 1);
  for (std::size_t i = 0; i < n; ++i) op.centers[i] = mu * l.diag(i);
  for (std::size_t i = 0; i + 1 < n; ++i) op.edges[i] = mu * w[i];

  if (!l.has_self_loops()) {
    op.w_right = op.edges;
    op.w_left = op.edges;
    op.base = 0.0;
    return op;
  }
  const GdpaAlignment align = gdpa_align(l);
  op.w_right.resize(n - 1);
  op.w_left.resize(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    op.w_right[i] = mu * align.alphas[i] * w[i];
    op.w_left[i] = mu * w[i] / align.alphas[i];
  }
  op.base = mu * align.lambda_min;
  return op;
}

double max_sample_scalar(const ScaledOperator& op, std::size_t k,
                         double threshold) {
  double radius = 0.0;
  if (k > 0) radius += op.w_left[k - 1];
  if (k + 1 < op.n()) radius += op.w_right[k];
  if (radius == 0.0) return std::numeric_limits<double>::infinity();
  return (op.centers[k] + 1.0 - threshold) / radius;
}

// Scalars are tracked as ratios t_i = s_i / s_{i-1}; row i's disc left-end
// is center_i - t_i * w_left - w_right / t_{i+1}. For a fixed sample, taking
// every t at the smallest value its predecessor row allows is optimal for
// all later rows, so one forward pass decides feasibility exactly.
Selection select_one(const ScaledOperator& op, std::size_t start,
                     double threshold) {
  const std::size_t n = op.n();
  if (start >= n) throw std::out_of_range("select_one: start out of range");
  const Block block(op, start);

  Selection sel;
  sel.start = start;

  // Upstream: nodes start..i-1 unsampled, test i as the sample and last node.
  std::vector<double> ratios{1.0};
  std::optional<std::size_t> sample;
  for (std::size_t i = start;; ++i) {
    const double left = block.left(i, ratios.back());
    if (block.center(i, true) + 1.0 - threshold - left >= 0.0) sample = i;
    if (i + 1 == n) break;
    const double slack = block.center(i, false) - threshold - left;
    if (!(slack > 0.0)) break;  // no finite s_{i+1} rescues row i
    ratios.push_back(block.right(i) / slack);
  }
  if (!sample) return sel;

  const std::size_t k = *sample;
  ratios.resize(k - start + 1);
  std::size_t end = k;

  // Downstream: extend coverage past k while some prefix can end the block.
  if (k + 1 < n) {
    const double slack =
        block.center(k, false) + 1.0 - threshold - block.left(k, ratios.back());
    if (slack > 0.0) {
      std::vector<double> tail;
      double ratio = block.right(k) / slack;
      for (std::size_t j = k + 1;; ++j) {
        tail.push_back(ratio);
        const double left = block.left(j, ratio);
        if (block.center(j, true) - threshold - left >= 0.0) end = j;
        if (j + 1 == n) break;
        const double next = block.center(j, false) - threshold - left;
        if (!(next > 0.0)) break;
        ratio = block.right(j) / next;
      }
      ratios.insert(ratios.end(), tail.begin(), tail.begin() + (end - k));
    }
  }

  sel.feasible = true;
  sel.sample = k;
  sel.end = end;
  sel.scalars.resize(end - start + 1);
  double s = 1.0;
  for (std::size_t i = 0; i < sel.scalars.size(); ++i) {
    if (i > 0) s *= ratios[i];
    sel.scalars[i] = s;
  }
  return sel;
}

SampleResult sample_with_threshold(const ScaledOperator& op, double threshold,
                                   std::size_t budget) {
  if (!(threshold > op.base)) {
    throw std::invalid_argument("sample_with_threshold: threshold must exceed the operator base");
  }
  const std::size_t n = op.n();
  SampleResult result;
  result.threshold = threshold;
  result.h.assign(n, 0);
  result.scalars.assign(n, 1.0);

  std::size_t start = 0;
  while (start < n && result.samples.size() < budget) {
    Selection sel = select_one(op, start, threshold);
    if (!sel.feasible) break;
    result.h[sel.sample] = 1;
    result.samples.push_back(sel.sample);
    result.partitions.push_back({sel.start, sel.end, sel.sample});
    std::copy(sel.scalars.begin(), sel.scalars.end(),
              result.scalars.begin() + static_cast<std::ptrdiff_t>(start));
    start = sel.end + 1;
  }
  result.exhausted = start == n;
  return result;
}

bool SearchTrace::monotone() const {
  double max_exhausted = -std::numeric_limits<double>::infinity();
  double min_failed = std::numeric_limits<double>::infinity();
  for (const auto& step : steps) {
    if (step.exhausted) {
      max_exhausted = std::max(max_exhausted, step.threshold);
    } else {
      min_failed = std::min(min_failed, step.threshold);
    }
  }
  return max_exhausted < min_failed;
}

void SearchTrace::write_jsonl(std::ostream& out) const {
  const auto old_precision = out.precision();
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (const auto& step : steps) {
    out << "{\"threshold\":" << step.threshold << ",\"samples\":" << step.samples
        << ",\"exhausted\":" << (step.exhausted ? "true" : "false")
        << ",\"partitions\":[";
    for (std::size_t i = 0; i < step.partitions.size(); ++i) {
      const auto& p = step.partitions[i];
      out << (i ? "," : "") << '[' << p.start << ',' << p.end << ',' << p.sample
          << ']';
    }
    out << "]}\n";
  }
  out.precision(old_precision);
}

SampleResult sample_budget(const ScaledOperator& op, std::size_t budget,
                           double eps, SearchTrace* trace) {
  if (budget < 1) throw std::invalid_argument("sample_budget: budget must be >= 1");
  if (budget > op.n()) {
    throw std::invalid_argument("sample_budget: budget exceeds node count");
  }
  if (!(eps > 0.0)) throw std::invalid_argument("sample_budget: eps must be positive");

  double lo = op.base;
  double hi = op.base + 1.0;
  std::optional<SampleResult> best;
  SampleResult last;
  do {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    SampleResult run = sample_with_threshold(op, mid, budget);
    if (trace) {
      trace->steps.push_back(
          {mid, run.samples.size(), run.exhausted, run.partitions});
    }
    if (run.exhausted) {
      lo = mid;
      best = std::move(run);
    } else {
      hi = mid;
      last = std::move(run);
    }
  } while (hi - lo >= eps);
  return best ? std::move(*best) : std::move(last);
}

SampleResult sample_budget(const PathLaplacian& l, double mu,
                           std::size_t budget, double eps, SearchTrace* trace) {
  return sample_budget(build_operator(l, mu), budget, eps, trace);
}

}  // namespace pgsum
