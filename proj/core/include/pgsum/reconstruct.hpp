// GLR-regularized reconstruction of a graph signal from its samples.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pgsum/path_laplacian.hpp"

namespace pgsum {

using GraphSignal = std::vector<double>;

// argmin_x ||y - H x||^2 + mu x' L x, i.e. (diag(h) + mu L) x = H' y, solved
// in O(n). `y` lists the observed values in increasing node order.
GraphSignal glr_reconstruct(const PathLaplacian& l, double mu,
                            std::span<const std::uint8_t> h,
                            std::span<const double> y);

double glr_objective(const PathLaplacian& l, double mu,
                     std::span<const std::uint8_t> h, std::span<const double> y,
                     std::span<const double> x);

// ||a - b||^2 / n
double mean_squared_error(std::span<const double> a, std::span<const double> b);

// Values of x at the nodes where h is set, in node order.
std::vector<double> observe(std::span<const double> x,
                            std::span<const std::uint8_t> h);

}  // namespace pgsum
