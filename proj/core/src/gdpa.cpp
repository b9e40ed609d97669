#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pgsum/sampler.hpp"
#include "pgsum/tridiag.hpp"

namespace pgsum {
namespace {

std::vector<double> diagonal_of(const PathLaplacian& l) {
  std::vector<double> d(l.n());
  for (std::size_t i = 0; i < l.n(); ++i) d[i] = l.diag(i);
  return d;
}

}  // namespace

double lambda_min_tridiag(const PathLaplacian& l) {
  const auto diag = diagonal_of(l);
  return min_eigenvalue_bracket(diag, l.sub_weights()).lower;
}

// The forward recursion alpha_i = (a_i - w_{i-1} / alpha_{i-1}) / w_i is the
// pivot sequence of an LDL' factorization of L - lambda I and loses all
// accuracy once v1 decays along the path. It is run from both ends instead,
// and the two halves are joined at the row with the smallest twist residual.
GdpaAlignment gdpa_align(const PathLaplacian& l) {
  if (!l.has_self_loops()) {
    throw std::invalid_argument("gdpa_align: graph has no self-loops");
  }
  if (l.has_negative_self_loops()) {
    throw AlignmentError("gdpa_align: negative self-loop weights violate the positive-graph precondition");
  }
  const std::size_t n = l.n();
  const auto w = l.sub_weights();
  const auto diag = diagonal_of(l);

  GdpaAlignment out;
  out.lambda_min = min_eigenvalue_bracket(diag, w).lower;
  if (n == 1) return out;

  std::vector<double> a(n);
  for (std::size_t i = 0; i < n; ++i) a[i] = diag[i] - out.lambda_min;

  std::vector<double> fwd(n);
  std::vector<double> bwd(n);
  fwd[0] = a[0];
  for (std::size_t i = 1; i < n; ++i) fwd[i] = a[i] - w[i - 1] * w[i - 1] / fwd[i - 1];
  bwd[n - 1] = a[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) bwd[i] = a[i] - w[i] * w[i] / bwd[i + 1];

  std::size_t twist = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < n; ++r) {
    const double gamma = fwd[r] + bwd[r] - a[r];
    if (std::isfinite(gamma) && std::abs(gamma) < best) {
      best = std::abs(gamma);
      twist = r;
    }
  }
  out.twist = twist;

  out.alphas.resize(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double alpha = i < twist ? fwd[i] / w[i] : w[i] / bwd[i + 1];
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
      throw AlignmentError("gdpa_align: non-positive eigenvector ratio at row " +
                           std::to_string(i));
    }
    out.alphas[i] = alpha;
  }

  for (std::size_t i = 0; i < n; ++i) {
    double end = diag[i];
    if (i > 0) end -= w[i - 1] / out.alphas[i - 1];
    if (i + 1 < n) end -= out.alphas[i] * w[i];
    if (!(std::abs(end - out.lambda_min) <= 1e-6)) {
      throw AlignmentError("gdpa_align: disc left-end of row " + std::to_string(i) +
                           " misaligned by " + std::to_string(end - out.lambda_min));
    }
  }
  return out;
}

}  // namespace pgsum
