#include "pgsum/dense.hpp"

#include <cmath>
#include <stdexcept>

namespace pgsum {

Eigen::MatrixXd dense_laplacian(const EpgGraph& g) {
  const auto n = static_cast<Eigen::Index>(g.n());
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t hop = 1; hop <= g.m_hops(); ++hop) {
    const auto band = g.band(hop);
    for (std::size_t i = 0; i < band.size(); ++i) {
      const auto a = static_cast<Eigen::Index>(i);
      const auto b = static_cast<Eigen::Index>(i + hop);
      lap(a, b) -= band[i];
      lap(b, a) -= band[i];
      lap(a, a) += band[i];
      lap(b, b) += band[i];
    }
  }
  return lap;
}

Eigen::MatrixXd dense_matrix(const PathLaplacian& l) {
  const auto n = static_cast<Eigen::Index>(l.n());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    m(i, i) = l.diag(static_cast<std::size_t>(i));
    if (i + 1 < n) {
      m(i, i + 1) = l.off_diag(static_cast<std::size_t>(i));
      m(i + 1, i) = m(i, i + 1);
    }
  }
  return m;
}

Eigen::MatrixXd dense_sampled_operator(const PathLaplacian& l, double mu,
                                       std::span<const std::uint8_t> h) {
  if (h.size() != l.n()) throw std::invalid_argument("dense_sampled_operator: size mismatch");
  Eigen::MatrixXd m = mu * dense_matrix(l);
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (h[i]) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) += 1.0;
  }
  return m;
}

double min_eigenvalue(const Eigen::MatrixXd& symmetric) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(symmetric,
                                                       Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("dense eigensolver failed");
  }
  return solver.eigenvalues()(0);
}

Eigen::VectorXd disc_left_ends(const Eigen::MatrixXd& m) {
  Eigen::VectorXd ends(m.rows());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    double radius = 0.0;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j != i) radius += std::abs(m(i, j));
    }
    ends(i) = m(i, i) - radius;
  }
  return ends;
}

}  // namespace pgsum
