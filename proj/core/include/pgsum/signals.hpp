// Synthetic smooth graph signals and additive noise.

#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>

#include "pgsum/epg.hpp"
#include "pgsum/path_laplacian.hpp"
#include "pgsum/reconstruct.hpp"

namespace pgsum {

// Largest size the dense eigendecomposition in the BL generator accepts.
inline constexpr std::size_t kMaxSignalNodes = 5000;

// Independent stream `index` of `seed` (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

// floor(n / 20), at least 1.
std::size_t default_bandwidth(std::size_t n);

// (x - mean) / std with the population std; only centers x when std < 1e-12.
GraphSignal normalize_signal(std::span<const double> x);

// y = x + N(0, s^2 I), s^2 = ||x||^2 / (n 10^(snr_db / 10)). snr_db = +inf
// returns x unchanged.
GraphSignal add_noise_snr(std::span<const double> x, double snr_db,
                          std::uint64_t seed);
inline constexpr double kNoiseFree = std::numeric_limits<double>::infinity();

// x = V_K g, V_K the K lowest-frequency eigenvectors, g_i ~ N(1, 0.5^2).
class BandlimitedGenerator {
 public:
  BandlimitedGenerator(const Eigen::MatrixXd& laplacian, std::size_t bandwidth);

  std::size_t n() const { return static_cast<std::size_t>(basis_.rows()); }
  std::size_t bandwidth() const { return static_cast<std::size_t>(basis_.cols()); }
  // K-th smallest eigenvalue.
  double cutoff() const { return cutoff_; }
  const Eigen::MatrixXd& basis() const { return basis_; }

  GraphSignal draw_raw(std::uint64_t seed) const;
  GraphSignal draw(std::uint64_t seed) const { return normalize_signal(draw_raw(seed)); }

 private:
  Eigen::MatrixXd basis_;
  double cutoff_ = 0.0;
};

// x ~ N(0, (L + delta I)^-1) via a sparse Cholesky factor of L + delta I.
class GmrfGenerator {
 public:
  GmrfGenerator(const Eigen::MatrixXd& laplacian, double delta);

  std::size_t n() const { return n_; }
  GraphSignal draw_raw(std::uint64_t seed) const;
  GraphSignal draw(std::uint64_t seed) const { return normalize_signal(draw_raw(seed)); }

 private:
  std::size_t n_;
  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>, Eigen::Lower,
                       Eigen::NaturalOrdering<int>>
      llt_;
};

inline constexpr double kGmrfDelta = 1e-4;

GraphSignal gen_bl_signal(const EpgGraph& g, std::size_t bandwidth, std::uint64_t seed);
GraphSignal gen_bl_signal(const PathLaplacian& l, std::size_t bandwidth, std::uint64_t seed);
GraphSignal gen_gmrf_signal(const EpgGraph& g, double delta, std::uint64_t seed);
GraphSignal gen_gmrf_signal(const PathLaplacian& l, double delta, std::uint64_t seed);

}  // namespace pgsum
