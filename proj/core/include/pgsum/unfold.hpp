// Unfolding an M-EPG into a 1-hop path graph whose Laplacian dominates the
// original one in the PSD order.

#pragma once

#include "pgsum/epg.hpp"
#include "pgsum/path_laplacian.hpp"

namespace pgsum {

inline constexpr double kUnfoldEdges = 2.0;      // multi-hop edges -> path edges
inline constexpr double kUnfoldSelfLoops = 0.0;  // multi-hop edges -> self-loops

// Replaces every edge (i, j), j - i >= 2, of weight w by edges (i, j-1) and
// (j-1, j) of weight beta*w, self-loops (2-beta)*w at i and j and
// (beta^2-2beta)*w at j-1, recursing on (i, j-1) until it is a 1-hop edge.
// Edges are processed by increasing i, then increasing j.
PathLaplacian unfold(const EpgGraph& g, double beta);

// lambda_min(L_unfolded - L_epg) by dense eigendecomposition. O(n^3); meant
// for verification on graphs of a few hundred nodes.
double psd_gap_min_eig(const EpgGraph& g, const PathLaplacian& l);

}  // namespace pgsum
