// Dense views of the graph types, used for verification and for the
// eigendecomposition-based signal generators.

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>

#include "pgsum/epg.hpp"
#include "pgsum/path_laplacian.hpp"

namespace pgsum {

Eigen::MatrixXd dense_laplacian(const EpgGraph& g);
Eigen::MatrixXd dense_matrix(const PathLaplacian& l);

// diag(h) + mu * L
Eigen::MatrixXd dense_sampled_operator(const PathLaplacian& l, double mu,
                                       std::span<const std::uint8_t> h);

double min_eigenvalue(const Eigen::MatrixXd& symmetric);

// Gershgorin disc left-ends M_ii - sum_{j != i} |M_ij|, one per row.
Eigen::VectorXd disc_left_ends(const Eigen::MatrixXd& m);

}  // namespace pgsum
