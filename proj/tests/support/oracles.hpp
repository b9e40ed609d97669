// Random instance generators and brute-force reference computations shared
// by the unit tests and the acceptance runner. Nothing here calls into the
// sampler's own recursions.

#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "pgsum/epg.hpp"
#include "pgsum/feature_io.hpp"
#include "pgsum/keyframe_eval.hpp"
#include "pgsum/path_laplacian.hpp"

namespace pgsum::testing {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi);
std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi);  // inclusive

// Weights uniform in (0, 1].
EpgGraph random_epg(Rng& rng, std::size_t n, std::size_t m_hops);

// Edge weights in [w_lo, w_hi]; self-loops in [0, loop_hi] on a random
// subset of nodes (all zero when loop_hi == 0).
PathLaplacian random_path(Rng& rng, std::size_t n, double w_lo, double w_hi,
                          double loop_hi = 0.0);

// mu * L restricted to nodes [a, b] with the edges leaving the range cut,
// i.e. the operator of the induced subgraph, plus 1 at `sample`.
Eigen::MatrixXd block_operator(const PathLaplacian& l, double mu, std::size_t a,
                               std::size_t b, std::size_t sample);

// A diagonal scaling S with every disc left-end of S B S^-1 >= T exists iff
// lambda_min(B) >= T for an irreducible symmetric Z-matrix B (the optimal S is
// the inverse Perron vector), so this is the exact feasibility test.
bool block_feasible(const PathLaplacian& l, double mu, std::size_t a, std::size_t b,
                    std::size_t sample, double threshold);
double block_lambda(const PathLaplacian& l, double mu, std::size_t a, std::size_t b,
                    std::size_t sample);

// Feasibility by direct search over diagonal scalings on a log grid. Only
// meant for blocks of up to 4 nodes.
bool grid_scaling_feasible(const Eigen::MatrixXd& block, double threshold,
                           int steps_per_decade, double decades);

struct ReferenceSelection {
  bool feasible = false;
  std::size_t sample = 0;
  std::size_t end = 0;
  // Some candidate sat within `tie` of T, so float noise could flip it.
  bool ambiguous = false;
};

// Furthest sample k with [start, k] feasible, then furthest end d for k.
ReferenceSelection reference_select(const PathLaplacian& l, double mu,
                                    std::size_t start, double threshold,
                                    double tie = 1e-9);

// Greedy partitioning with reference_select; returns whether every node was
// covered within the budget.
bool reference_exhausted(const PathLaplacian& l, double mu, double threshold,
                         std::size_t budget, bool* ambiguous = nullptr);

// Largest grid threshold base + i * step in (base, base + 1] for which
// `exhausted` holds; `base` when none does.
double grid_scan_threshold(const std::function<bool(double)>& exhausted, double base,
                           double step);

// Maximum one-to-one matching by exhaustive search over assignments.
std::size_t brute_force_matching(const Summary& a, const Summary& u,
                                 double window_sec);

Eigen::VectorXd dense_solve(const Eigen::MatrixXd& a, const Eigen::VectorXd& b);

}  // namespace pgsum::testing

namespace pgsum::testing {

// Static scenes: every frame of scene s sits near a scene-specific point,
// far from the others. Frames are listed scene after scene.
FeatureMatrix scene_features(std::span<const std::size_t> scene_lengths, std::size_t dim,
                             float fps, std::uint64_t seed);

}  // namespace pgsum::testing
