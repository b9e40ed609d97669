// Frame-feature matrices and their on-disk formats.
//
// FVEC v1 (little-endian, row-major):
//   "FVEC" | u16 version=1 | u32 n_frames | u32 dim | f32 fps | n_frames*dim f32
//
// CSV: a `# fps=<value>` line followed by one comma-separated row per frame.

#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pgsum {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class FeatureFormat { kBinary, kCsv };

FeatureFormat parse_feature_format(std::string_view name);

inline constexpr std::size_t kFvecHeaderBytes = 18;

struct FeatureMatrix {
  std::size_t n_frames = 0;
  std::size_t dim = 0;
  float fps = 0.0f;
  std::vector<float> data;  // n_frames * dim, row-major

  std::span<const float> row(std::size_t i) const {
    return {data.data() + i * dim, dim};
  }

  // Throws std::invalid_argument on any broken invariant.
  void validate() const;

  friend bool operator==(const FeatureMatrix&, const FeatureMatrix&) = default;
};

FeatureMatrix load_features(const std::filesystem::path& path,
                            FeatureFormat format);

void write_features(const FeatureMatrix& m, const std::filesystem::path& path,
                    FeatureFormat format);

// Binary payload helpers, exposed for in-memory round trips.
std::string encode_fvec(const FeatureMatrix& m);
FeatureMatrix decode_fvec(std::string_view bytes);

}  // namespace pgsum
