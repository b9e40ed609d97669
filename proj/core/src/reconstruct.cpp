#include "pgsum/reconstruct.hpp"

#include <cmath>
#include <stdexcept>

#include "pgsum/tridiag.hpp"

namespace pgsum {
namespace {

std::vector<double> scatter(std::span<const std::uint8_t> h,
                            std::span<const double> y) {
  std::vector<double> rhs(h.size(), 0.0);
  std::size_t next = 0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (!h[i]) continue;
    if (next == y.size()) throw std::invalid_argument("observation count does not match h");
    rhs[i] = y[next++];
  }
  if (next != y.size()) throw std::invalid_argument("observation count does not match h");
  return rhs;
}

}  // namespace

GraphSignal glr_reconstruct(const PathLaplacian& l, double mu,
                            std::span<const std::uint8_t> h,
                            std::span<const double> y) {
  if (h.size() != l.n()) throw std::invalid_argument("glr_reconstruct: h has wrong length");
  if (!(mu > 0.0)) throw std::invalid_argument("glr_reconstruct: mu must be positive");
  if (y.empty()) {
    throw std::invalid_argument("glr_reconstruct: at least one sample is required");
  }
  const std::vector<double> rhs = scatter(h, y);

  const std::size_t n = l.n();
  std::vector<double> diag(n);
  std::vector<double> off(n - 1);
  for (std::size_t i = 0; i < n; ++i) diag[i] = mu * l.diag(i) + (h[i] ? 1.0 : 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) off[i] = mu * l.off_diag(i);
  return solve_tridiagonal(diag, off, rhs);
}

double glr_objective(const PathLaplacian& l, double mu,
                     std::span<const std::uint8_t> h, std::span<const double> y,
                     std::span<const double> x) {
  const std::vector<double> obs = observe(x, h);
  if (obs.size() != y.size()) throw std::invalid_argument("glr_objective: observation count mismatch");
  double fidelity = 0.0;
  for (std::size_t i = 0; i < obs.size(); ++i) {
    const double d = y[i] - obs[i];
    fidelity += d * d;
  }
  return fidelity + mu * l.quadratic_form(x);
}

double mean_squared_error(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.empty()) {
    throw std::invalid_argument("mean_squared_error: size mismatch");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return sum / static_cast<double>(a.size());
}

std::vector<double> observe(std::span<const double> x,
                            std::span<const std::uint8_t> h) {
  if (x.size() != h.size()) throw std::invalid_argument("observe: size mismatch");
  std::vector<double> y;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (h[i]) y.push_back(x[i]);
  }
  return y;
}

}  // namespace pgsum
