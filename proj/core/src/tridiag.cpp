#include "pgsum/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pgsum {
namespace {

void check_shape(std::span<const double> diag, std::span<const double> off) {
  if (diag.empty()) throw std::invalid_argument("tridiagonal matrix is empty");
  if (off.size() + 1 != diag.size()) {
    throw std::invalid_argument("tridiagonal off-diagonal must have n-1 entries");
  }
}

double pivot_floor(std::span<const double> off) {
  double max_off2 = 1.0;
  for (double e : off) max_off2 = std::max(max_off2, e * e);
  return std::numeric_limits<double>::min() * max_off2;
}

std::size_t count_below(std::span<const double> diag, std::span<const double> off,
                        double x, double pivmin) {
  std::size_t negatives = 0;
  double q = diag[0] - x;
  if (std::abs(q) < pivmin) q = -pivmin;
  if (q < 0.0) ++negatives;
  for (std::size_t i = 1; i < diag.size(); ++i) {
    q = diag[i] - x - off[i - 1] * off[i - 1] / q;
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++negatives;
  }
  return negatives;
}

}  // namespace

std::size_t sturm_count(std::span<const double> diag, std::span<const double> off,
                        double x) {
  check_shape(diag, off);
  return count_below(diag, off, x, pivot_floor(off));
}

EigenBracket min_eigenvalue_bracket(std::span<const double> diag,
                                    std::span<const double> off) {
  check_shape(diag, off);
  const std::size_t n = diag.size();
  const double pivmin = pivot_floor(off);

  double lo = std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double radius = 0.0;
    if (i > 0) radius += std::abs(off[i - 1]);
    if (i + 1 < n) radius += std::abs(off[i]);
    lo = std::min(lo, diag[i] - radius);
    hi = std::min(hi, diag[i]);
    scale = std::max(scale, std::abs(diag[i]) + radius);
  }
  if (count_below(diag, off, hi, pivmin) == 0) return {hi, hi};

  const double eps = std::numeric_limits<double>::epsilon();
  double margin = std::max(scale, 1.0) * eps;
  while (count_below(diag, off, lo, pivmin) != 0) {
    lo -= margin;
    margin *= 2.0;
  }

  const double tol = 2.0 * eps * std::max(scale, std::numeric_limits<double>::min());
  while (hi - lo > tol) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    if (count_below(diag, off, mid, pivmin) == 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {lo, hi};
}

std::vector<double> solve_tridiagonal(std::span<const double> diag,
                                      std::span<const double> off,
                                      std::span<const double> rhs) {
  check_shape(diag, off);
  const std::size_t n = diag.size();
  if (rhs.size() != n) throw std::invalid_argument("solve_tridiagonal: rhs size mismatch");

  std::vector<double> pivot(n);
  std::vector<double> x(rhs.begin(), rhs.end());
  pivot[0] = diag[0];
  if (!(pivot[0] > 0.0)) throw std::domain_error("solve_tridiagonal: matrix is not positive definite");
  for (std::size_t i = 1; i < n; ++i) {
    const double factor = off[i - 1] / pivot[i - 1];
    pivot[i] = diag[i] - factor * off[i - 1];
    if (!(pivot[i] > 0.0)) {
      throw std::domain_error("solve_tridiagonal: matrix is not positive definite");
    }
    x[i] -= factor * x[i - 1];
  }
  x[n - 1] /= pivot[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) {
    x[i] = (x[i] - off[i] * x[i + 1]) / pivot[i];
  }
  return x;
}

}  // namespace pgsum
