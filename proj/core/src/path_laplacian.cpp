#include "pgsum/path_laplacian.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace pgsum {

PathLaplacian::PathLaplacian(std::vector<double> sub_weights,
                             std::vector<double> self_loops)
    : sub_weights_(std::move(sub_weights)), self_loops_(std::move(self_loops)) {
  if (self_loops_.empty()) throw std::invalid_argument("PathLaplacian: n must be >= 1");
  if (sub_weights_.size() + 1 != self_loops_.size()) {
    throw std::invalid_argument("PathLaplacian: expected n-1 sub weights");
  }
  for (std::size_t i = 0; i < sub_weights_.size(); ++i) {
    if (!(sub_weights_[i] > 0.0) || !std::isfinite(sub_weights_[i])) {
      throw std::invalid_argument("PathLaplacian: edge " + std::to_string(i) +
                                  " weight must be positive and finite");
    }
  }
  for (double u : self_loops_) {
    if (!std::isfinite(u)) throw std::invalid_argument("PathLaplacian: non-finite self-loop");
  }
}

bool PathLaplacian::has_self_loops() const {
  for (double u : self_loops_) {
    if (u != 0.0) return true;
  }
  return false;
}

bool PathLaplacian::has_negative_self_loops() const {
  for (double u : self_loops_) {
    if (u < 0.0) return true;
  }
  return false;
}

double PathLaplacian::diag(std::size_t i) const {
  double d = self_loops_[i];
  if (i > 0) d += sub_weights_[i - 1];
  if (i + 1 < n()) d += sub_weights_[i];
  return d;
}

double PathLaplacian::quadratic_form(std::span<const double> x) const {
  if (x.size() != n()) throw std::invalid_argument("quadratic_form: size mismatch");
  double q = 0.0;
  for (std::size_t i = 0; i < sub_weights_.size(); ++i) {
    const double d = x[i] - x[i + 1];
    q += sub_weights_[i] * d * d;
  }
  for (std::size_t i = 0; i < n(); ++i) q += self_loops_[i] * x[i] * x[i];
  return q;
}

void PathLaplacian::write_text(std::ostream& out) const {
  const auto old_precision = out.precision();
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  out << n() << '\n';
  for (std::size_t i = 0; i < sub_weights_.size(); ++i) {
    out << (i ? " " : "") << sub_weights_[i];
  }
  out << '\n';
  for (std::size_t i = 0; i < n(); ++i) out << (i ? " " : "") << self_loops_[i];
  out << '\n';
  out.precision(old_precision);
}

}  // namespace pgsum
