// Gershgorin-disc sampling on a path-graph Laplacian.
//
// Sampling node k adds 1 to disc k's center. A positive diagonal similarity
// transform S (diag(h) + mu L) S^-1 leaves the spectrum unchanged while
// trading radius between neighbouring rows, so pushing every disc left-end to
// at least T certifies lambda_min(diag(h) + mu L) >= T.
//
// The path is cut into partitions of consecutive nodes, each holding exactly
// one sample. Dropping the edges between partitions only lowers lambda_min,
// so each partition is certified on its own subgraph.

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "pgsum/path_laplacian.hpp"

namespace pgsum {

class AlignmentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Smallest eigenvalue by Sturm bisection; the returned value is a lower
// bracket accurate to a few ulps.
double lambda_min_tridiag(const PathLaplacian& l);

struct GdpaAlignment {
  double lambda_min = 0.0;
  // alphas[i] = v1[i+1] / v1[i] for the first eigenvector v1. The transformed
  // operator has right entry alphas[i] * w(i,i+1) on row i and left entry
  // w(i,i+1) / alphas[i] on row i+1.
  std::vector<double> alphas;
  // Row where the forward and backward ratio recursions meet.
  std::size_t twist = 0;
};

// Aligns every disc left-end of P L P^-1, P = diag(1/v1), at lambda_min(L).
// Requires a self-loop graph with all self-loops >= 0.
GdpaAlignment gdpa_align(const PathLaplacian& l);

// Row i has center centers[i], right entry -w_right[i] (to i+1) and left
// entry -w_left[i-1] (to i-1). edges[i] = mu * w(i, i+1) is the untransformed
// weight, needed when an edge is cut at a partition boundary.
struct ScaledOperator {
  std::vector<double> centers;
  std::vector<double> w_right;
  std::vector<double> w_left;
  std::vector<double> edges;
  double mu = 1.0;
  double base = 0.0;  // common disc left-end before sampling

  std::size_t n() const { return centers.size(); }
  double left_end(std::size_t i) const;
};

ScaledOperator build_operator(const PathLaplacian& l, double mu);

// Largest scalar s_k keeping disc k's left-end at >= T once node k is sampled
// and its neighbours stay unscaled: (c_k + 1 - T) / (w_left + w_right).
double max_sample_scalar(const ScaledOperator& op, std::size_t k,
                         double threshold);

struct Selection {
  bool feasible = false;
  std::size_t start = 0;
  std::size_t sample = 0;
  std::size_t end = 0;          // inclusive
  std::vector<double> scalars;  // s[start..end], scalars.front() == 1
};

// One divide-and-conquer step from `start` (0-based). Upstream: the furthest
// node k such that sampling k alone lifts the disc left-ends of rows
// start..k to >= T. Downstream: the furthest d >= k still covered by k.
// Infeasible only when no node can serve as the partition's sample.
Selection select_one(const ScaledOperator& op, std::size_t start,
                     double threshold);

struct Partition {
  std::size_t start = 0;
  std::size_t end = 0;  // inclusive
  std::size_t sample = 0;

  friend bool operator==(const Partition&, const Partition&) = default;
};

struct SampleResult {
  std::vector<std::uint8_t> h;
  std::vector<std::size_t> samples;
  std::vector<Partition> partitions;
  std::vector<double> scalars;  // 1 on uncovered nodes
  double threshold = 0.0;
  bool exhausted = false;  // every node covered within budget
};

SampleResult sample_with_threshold(const ScaledOperator& op, double threshold,
                                   std::size_t budget);

struct SearchStep {
  double threshold = 0.0;
  std::size_t samples = 0;
  bool exhausted = false;
  std::vector<Partition> partitions;
};

struct SearchTrace {
  std::vector<SearchStep> steps;

  // True when every exhausted step has a lower threshold than every
  // non-exhausted one.
  bool monotone() const;
  // One JSON object per line.
  void write_jsonl(std::ostream& out) const;
};

// Binary search for the largest T in (base, base + 1] whose sampling run
// covers every node with at most `budget` samples, to precision eps.
SampleResult sample_budget(const ScaledOperator& op, std::size_t budget,
                           double eps, SearchTrace* trace = nullptr);
SampleResult sample_budget(const PathLaplacian& l, double mu,
                           std::size_t budget, double eps,
                           SearchTrace* trace = nullptr);

}  // namespace pgsum
