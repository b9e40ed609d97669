#include "pgsum/unfold.hpp"

#include <cmath>
#include <stdexcept>

#include "pgsum/dense.hpp"

namespace pgsum {

PathLaplacian unfold(const EpgGraph& g, double beta) {
  if (!std::isfinite(beta)) throw std::invalid_argument("unfold: beta must be finite");
  const std::size_t n = g.n();
  std::vector<double> sub(g.band(1).begin(), g.band(1).end());
  std::vector<double> loops(n, 0.0);

  const double end_loop = 2.0 - beta;
  const double mid_loop = beta * beta - 2.0 * beta;

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t hop = 2; hop <= g.m_hops() && i + hop < n; ++hop) {
      const std::size_t j = i + hop;
      const double w = g.band(hop)[i];
      if (beta == 0.0) {
        loops[i] += 2.0 * w;
        loops[j] += 2.0 * w;
        continue;
      }
      // Peel (i, jj) into (i, jj-1) + (jj-1, jj) with jj-1 as the
      // intermediate node, until the remaining edge is 1-hop.
      double cur = w;
      for (std::size_t jj = j; jj - i >= 2; --jj) {
        loops[i] += end_loop * cur;
        loops[jj] += end_loop * cur;
        loops[jj - 1] += mid_loop * cur;
        sub[jj - 1] += beta * cur;
        cur *= beta;
      }
      sub[i] += cur;
    }
  }
  return PathLaplacian(std::move(sub), std::move(loops));
}

double psd_gap_min_eig(const EpgGraph& g, const PathLaplacian& l) {
  if (g.n() != l.n()) throw std::invalid_argument("psd_gap_min_eig: size mismatch");
  const Eigen::MatrixXd gap = dense_matrix(l) - dense_laplacian(g);
  return min_eigenvalue(gap);
}

}  // namespace pgsum
