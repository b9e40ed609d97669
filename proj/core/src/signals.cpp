#include "pgsum/signals.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCore>
#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "pgsum/dense.hpp"

namespace pgsum {
namespace {

void check_size(std::size_t n) {
  if (n == 0 || n > kMaxSignalNodes) {
    throw std::invalid_argument("signal generators support 1.." +
                                std::to_string(kMaxSignalNodes) + " nodes, got " +
                                std::to_string(n));
  }
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + (index + 1) * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::size_t default_bandwidth(std::size_t n) { return std::max<std::size_t>(1, n / 20); }

GraphSignal normalize_signal(std::span<const double> x) {
  if (x.empty()) return {};
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  double var = 0.0;
  for (double v : x) var += (v - mean) * (v - mean);
  const double sd = std::sqrt(var / static_cast<double>(x.size()));
  GraphSignal out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i] = sd < 1e-12 ? x[i] - mean : (x[i] - mean) / sd;
  }
  return out;
}

GraphSignal add_noise_snr(std::span<const double> x, double snr_db,
                          std::uint64_t seed) {
  GraphSignal y(x.begin(), x.end());
  if (std::isinf(snr_db) && snr_db > 0) return y;
  if (std::isnan(snr_db)) throw std::invalid_argument("add_noise_snr: snr is NaN");
  double energy = 0.0;
  for (double v : x) energy += v * v;
  if (!(energy > 0.0)) throw std::invalid_argument("add_noise_snr: signal has zero energy");
  const double var = energy / (static_cast<double>(x.size()) * std::pow(10.0, snr_db / 10.0));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, std::sqrt(var));
  for (double& v : y) v += noise(rng);
  return y;
}

BandlimitedGenerator::BandlimitedGenerator(const Eigen::MatrixXd& laplacian,
                                           std::size_t bandwidth) {
  const auto n = static_cast<std::size_t>(laplacian.rows());
  check_size(n);
  if (bandwidth < 1 || bandwidth > n) {
    throw std::invalid_argument("gen_bl_signal: bandwidth " + std::to_string(bandwidth) +
                                " outside 1.." + std::to_string(n));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(laplacian);
  if (eig.info() != Eigen::Success) {
    throw std::runtime_error("gen_bl_signal: eigendecomposition failed");
  }
  const auto k = static_cast<Eigen::Index>(bandwidth);
  basis_ = eig.eigenvectors().leftCols(k);
  cutoff_ = eig.eigenvalues()(k - 1);
}

GraphSignal BandlimitedGenerator::draw_raw(std::uint64_t seed) const {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> coeff(1.0, 0.5);
  Eigen::VectorXd g(basis_.cols());
  for (Eigen::Index i = 0; i < g.size(); ++i) g(i) = coeff(rng);
  const Eigen::VectorXd x = basis_ * g;
  return GraphSignal(x.data(), x.data() + x.size());
}

GmrfGenerator::GmrfGenerator(const Eigen::MatrixXd& laplacian, double delta)
    : n_(static_cast<std::size_t>(laplacian.rows())) {
  check_size(n_);
  if (!(delta > 0.0)) throw std::invalid_argument("gen_gmrf_signal: delta must be positive");
  Eigen::MatrixXd precision = laplacian;
  precision.diagonal().array() += delta;
  const Eigen::SparseMatrix<double> sparse = precision.sparseView();
  llt_.compute(sparse);
  if (llt_.info() != Eigen::Success) {
    throw std::runtime_error("gen_gmrf_signal: L + delta I is not positive definite");
  }
}

// With L + dI = R'R, x = R^-1 z has covariance (R'R)^-1.
GraphSignal GmrfGenerator::draw_raw(std::uint64_t seed) const {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> white(0.0, 1.0);
  Eigen::VectorXd z(static_cast<Eigen::Index>(n_));
  for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = white(rng);
  const Eigen::VectorXd x = llt_.matrixU().solve(z);
  return GraphSignal(x.data(), x.data() + x.size());
}

GraphSignal gen_bl_signal(const EpgGraph& g, std::size_t bandwidth, std::uint64_t seed) {
  check_size(g.n());
  return BandlimitedGenerator(dense_laplacian(g), bandwidth).draw(seed);
}

GraphSignal gen_bl_signal(const PathLaplacian& l, std::size_t bandwidth, std::uint64_t seed) {
  check_size(l.n());
  return BandlimitedGenerator(dense_matrix(l), bandwidth).draw(seed);
}

GraphSignal gen_gmrf_signal(const EpgGraph& g, double delta, std::uint64_t seed) {
  check_size(g.n());
  return GmrfGenerator(dense_laplacian(g), delta).draw(seed);
}

GraphSignal gen_gmrf_signal(const PathLaplacian& l, double delta, std::uint64_t seed) {
  check_size(l.n());
  return GmrfGenerator(dense_matrix(l), delta).draw(seed);
}

}  // namespace pgsum
