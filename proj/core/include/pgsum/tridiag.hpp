// Symmetric tridiagonal kernels: Sturm-sequence bisection and the Thomas
// solver. `off` has length n-1 and holds the sub/super-diagonal.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace pgsum {

// Number of eigenvalues strictly below x.
std::size_t sturm_count(std::span<const double> diag, std::span<const double> off,
                        double x);

struct EigenBracket {
  double lower;  // sturm_count(lower) == 0
  double upper;  // lambda_min <= upper
};

// Bisects until the bracket is within a few ulps of lambda_min. O(n log).
EigenBracket min_eigenvalue_bracket(std::span<const double> diag,
                                    std::span<const double> off);

// Solves A x = rhs for symmetric positive definite tridiagonal A. O(n).
std::vector<double> solve_tridiagonal(std::span<const double> diag,
                                      std::span<const double> off,
                                      std::span<const double> rhs);

}  // namespace pgsum
