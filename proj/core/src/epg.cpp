#include "pgsum/epg.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace pgsum {

double edge_weight(std::span<const float> a, std::span<const float> b,
                   double sigma) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("edge_weight: dimension mismatch (" +
                                std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()) + ")");
  }
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("edge_weight: sigma must be positive");
  }
  double dist2 = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = static_cast<double>(a[k]) - static_cast<double>(b[k]);
    dist2 += d * d;
  }
  return std::exp(-dist2 / (sigma * sigma));
}

EpgGraph::EpgGraph(std::size_t n, std::vector<std::vector<double>> bands)
    : n_(n), bands_(std::move(bands)) {
  if (bands_.empty() || bands_.size() >= n_) {
    throw std::invalid_argument("EpgGraph: need 0 < m_hops < n (m_hops=" +
                                std::to_string(bands_.size()) +
                                ", n=" + std::to_string(n_) + ")");
  }
  for (std::size_t h = 1; h <= bands_.size(); ++h) {
    const auto& b = bands_[h - 1];
    if (b.size() != n_ - h) {
      throw std::invalid_argument("EpgGraph: band " + std::to_string(h) +
                                  " has wrong length");
    }
    for (double w : b) {
      if (!(w > 0.0 && w <= 1.0)) {
        throw std::invalid_argument(
            "EpgGraph: weights must lie in (0, 1], got " + std::to_string(w));
      }
    }
  }
}

double EpgGraph::weight(std::size_t i, std::size_t j) const {
  if (i == j) return 0.0;
  const std::size_t lo = std::min(i, j);
  const std::size_t hop = std::max(i, j) - lo;
  if (hop > bands_.size()) return 0.0;
  return bands_[hop - 1][lo];
}

double EpgGraph::degree(std::size_t i) const {
  double d = 0.0;
  for (std::size_t h = 1; h <= bands_.size(); ++h) {
    if (i >= h) d += bands_[h - 1][i - h];
    if (i + h < n_) d += bands_[h - 1][i];
  }
  return d;
}

std::size_t EpgGraph::edge_count() const {
  std::size_t count = 0;
  for (const auto& b : bands_) count += b.size();
  return count;
}

void EpgGraph::write_edge_list(std::ostream& out) const {
  const auto old_precision = out.precision();
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t h = 1; h <= bands_.size() && i + h < n_; ++h) {
      out << (i + 1) << ' ' << (i + h + 1) << ' ' << bands_[h - 1][i] << '\n';
    }
  }
  out.precision(old_precision);
}

EpgGraph build_epg(const FeatureMatrix& feats, std::size_t m_hops,
                   double sigma) {
  feats.validate();
  if (m_hops == 0 || m_hops >= feats.n_frames) {
    throw std::invalid_argument("build_epg: need 0 < m_hops < n_frames (m_hops=" +
                                std::to_string(m_hops) + ", n_frames=" +
                                std::to_string(feats.n_frames) + ")");
  }
  if (!(sigma > 0.0)) throw std::invalid_argument("build_epg: sigma must be positive");

  const std::size_t n = feats.n_frames;
  std::vector<std::vector<double>> bands(m_hops);
  for (std::size_t h = 1; h <= m_hops; ++h) {
    auto& b = bands[h - 1];
    b.resize(n - h);
    for (std::size_t i = 0; i + h < n; ++i) {
      // The kernel underflows to 0 for far-apart features; clamp to the
      // smallest positive double so the path stays connected.
      b[i] = std::max(edge_weight(feats.row(i), feats.row(i + h), sigma),
                      std::numeric_limits<double>::min());
    }
  }
  return EpgGraph(n, std::move(bands));
}

}  // namespace pgsum
