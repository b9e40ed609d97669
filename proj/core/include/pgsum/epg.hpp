// M-hop elaborated path graph (M-EPG) over video frames.

#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "pgsum/feature_io.hpp"

namespace pgsum {

// exp(-||a - b||^2 / sigma^2).
double edge_weight(std::span<const float> a, std::span<const float> b,
                   double sigma);

// Symmetric banded adjacency with bandwidth M and zero diagonal. Band `h`
// (1 <= h <= M) holds the n - h weights W(i, i + h), 0-based i.
class EpgGraph {
 public:
  EpgGraph(std::size_t n, std::vector<std::vector<double>> bands);

  std::size_t n() const { return n_; }
  std::size_t m_hops() const { return bands_.size(); }

  std::span<const double> band(std::size_t hop) const {
    return bands_.at(hop - 1);
  }

  // 0-based; zero outside the band and on the diagonal.
  double weight(std::size_t i, std::size_t j) const;
  double degree(std::size_t i) const;
  std::size_t edge_count() const;

  // `i j w` per line, 1-based, ordered by i then j.
  void write_edge_list(std::ostream& out) const;

 private:
  std::size_t n_;
  std::vector<std::vector<double>> bands_;
};

// Connects each frame to the <= 2M frames closest in time. O(M N dim).
EpgGraph build_epg(const FeatureMatrix& feats, std::size_t m_hops,
                   double sigma);

}  // namespace pgsum
