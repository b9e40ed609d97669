// Tridiagonal generalized Laplacian of a 1-hop path graph with self-loops.

#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace pgsum {

class PathLaplacian {
 public:
  // sub_weights: n-1 positive edge weights w(i, i+1).
  // self_loops: n self-loop weights u(i); may be zero or negative.
  PathLaplacian(std::vector<double> sub_weights, std::vector<double> self_loops);

  std::size_t n() const { return self_loops_.size(); }
  std::span<const double> sub_weights() const { return sub_weights_; }
  std::span<const double> self_loops() const { return self_loops_; }
  bool has_self_loops() const;
  bool has_negative_self_loops() const;

  // w(i-1,i) + w(i,i+1) + u(i)
  double diag(std::size_t i) const;
  // L(i, i+1) = -w(i, i+1)
  double off_diag(std::size_t i) const { return -sub_weights_[i]; }

  // x' L x = sum w (x_i - x_{i+1})^2 + sum u x_i^2
  double quadratic_form(std::span<const double> x) const;

  // Text dump: `n`, then the sub_weights line, then the self_loops line.
  void write_text(std::ostream& out) const;

 private:
  std::vector<double> sub_weights_;
  std::vector<double> self_loops_;
};

}  // namespace pgsum
