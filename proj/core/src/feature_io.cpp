#include "pgsum/feature_io.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

namespace pgsum {
namespace {

constexpr char kMagic[4] = {'F', 'V', 'E', 'C'};
constexpr std::uint16_t kVersion = 1;

template <typename T>
void put_le(std::string& out, T value) {
  using U = std::make_unsigned_t<
      std::conditional_t<sizeof(T) == 2, std::int16_t, std::int32_t>>;
  static_assert(sizeof(T) == sizeof(U));
  const U bits = std::bit_cast<U>(value);
  for (std::size_t b = 0; b < sizeof(U); ++b) {
    out.push_back(static_cast<char>((bits >> (8 * b)) & 0xFFu));
  }
}

template <typename T>
T get_le(std::string_view in, std::size_t offset) {
  using U = std::make_unsigned_t<
      std::conditional_t<sizeof(T) == 2, std::int16_t, std::int32_t>>;
  U bits = 0;
  for (std::size_t b = 0; b < sizeof(U); ++b) {
    bits |= static_cast<U>(static_cast<unsigned char>(in[offset + b]))
            << (8 * b);
  }
  return std::bit_cast<T>(bits);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

float parse_float(std::string_view token, std::size_t line_no) {
  const std::string text(trim(token));
  if (text.empty()) {
    throw FormatError("row " + std::to_string(line_no) + ": empty field");
  }
  std::size_t used = 0;
  float value = 0.0f;
  try {
    value = std::stof(text, &used);
  } catch (const std::exception&) {
    throw FormatError("row " + std::to_string(line_no) + ": cannot parse '" +
                      text + "'");
  }
  if (used != text.size()) {
    throw FormatError("row " + std::to_string(line_no) + ": cannot parse '" +
                      text + "'");
  }
  if (!std::isfinite(value)) {
    throw FormatError("row " + std::to_string(line_no) + ": non-finite value");
  }
  return value;
}

FeatureMatrix decode_csv(const std::string& text) {
  FeatureMatrix m;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  bool have_fps = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = trim(line);
    if (view.empty()) continue;
    if (view.front() == '#') {
      const auto pos = view.find("fps=");
      if (pos != std::string_view::npos) {
        m.fps = parse_float(view.substr(pos + 4), line_no);
        have_fps = true;
      }
      continue;
    }
    std::size_t fields = 0;
    std::size_t begin = 0;
    while (true) {
      const auto comma = view.find(',', begin);
      const auto token = view.substr(
          begin, comma == std::string_view::npos ? view.size() - begin
                                                 : comma - begin);
      m.data.push_back(parse_float(token, line_no));
      ++fields;
      if (comma == std::string_view::npos) break;
      begin = comma + 1;
    }
    if (m.n_frames == 0) {
      m.dim = fields;
    } else if (fields != m.dim) {
      throw FormatError("row " + std::to_string(line_no) + ": expected " +
                        std::to_string(m.dim) + " values, found " +
                        std::to_string(fields));
    }
    ++m.n_frames;
  }
  if (!have_fps) throw FormatError("row 1: missing '# fps=<value>' header");
  if (m.n_frames == 0) throw FormatError("no feature rows");
  if (!(m.fps > 0.0f)) throw FormatError("fps must be positive");
  return m;
}

}  // namespace

FeatureFormat parse_feature_format(std::string_view name) {
  if (name == "binary" || name == "fvec") return FeatureFormat::kBinary;
  if (name == "csv") return FeatureFormat::kCsv;
  throw std::invalid_argument("unknown feature format '" + std::string(name) +
                              "' (expected binary or csv)");
}

void FeatureMatrix::validate() const {
  if (n_frames < 1) throw std::invalid_argument("feature matrix has no frames");
  if (dim < 1) throw std::invalid_argument("feature dimension must be >= 1");
  if (data.size() != n_frames * dim) {
    throw std::invalid_argument("feature payload size does not match n_frames*dim");
  }
  if (!(fps > 0.0f) || !std::isfinite(fps)) {
    throw std::invalid_argument("fps must be positive and finite");
  }
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (!std::isfinite(data[i])) {
      throw std::invalid_argument("non-finite feature at row " +
                                  std::to_string(i / dim));
    }
  }
}

std::string encode_fvec(const FeatureMatrix& m) {
  m.validate();
  if (m.n_frames > std::numeric_limits<std::uint32_t>::max() ||
      m.dim > std::numeric_limits<std::uint32_t>::max()) {
    throw std::invalid_argument("feature matrix too large for FVEC v1");
  }
  std::string out;
  out.reserve(kFvecHeaderBytes + 4 * m.data.size());
  out.append(kMagic, 4);
  put_le<std::uint16_t>(out, kVersion);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(m.n_frames));
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(m.dim));
  put_le<float>(out, m.fps);
  for (float v : m.data) put_le<float>(out, v);
  return out;
}

FeatureMatrix decode_fvec(std::string_view bytes) {
  if (bytes.size() < kFvecHeaderBytes) {
    throw FormatError("truncated header: " + std::to_string(bytes.size()) +
                      " bytes, need " + std::to_string(kFvecHeaderBytes));
  }
  if (std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw FormatError("bad magic at byte offset 0 (expected \"FVEC\")");
  }
  const auto version = get_le<std::uint16_t>(bytes, 4);
  if (version != kVersion) {
    throw FormatError("unsupported version " + std::to_string(version) +
                      " at byte offset 4");
  }
  FeatureMatrix m;
  m.n_frames = get_le<std::uint32_t>(bytes, 6);
  m.dim = get_le<std::uint32_t>(bytes, 10);
  m.fps = get_le<float>(bytes, 14);
  if (m.n_frames == 0) throw FormatError("n_frames is zero at byte offset 6");
  if (m.dim == 0) throw FormatError("dim is zero at byte offset 10");
  if (!(m.fps > 0.0f) || !std::isfinite(m.fps)) {
    throw FormatError("fps must be positive and finite at byte offset 14");
  }
  const std::uint64_t expected =
      static_cast<std::uint64_t>(m.n_frames) * m.dim * 4;
  const std::uint64_t actual = bytes.size() - kFvecHeaderBytes;
  if (actual != expected) {
    throw FormatError("payload length mismatch at byte offset " +
                      std::to_string(kFvecHeaderBytes) + ": header declares " +
                      std::to_string(expected) + " bytes, found " +
                      std::to_string(actual));
  }
  m.data.resize(m.n_frames * m.dim);
  for (std::size_t i = 0; i < m.data.size(); ++i) {
    const std::size_t offset = kFvecHeaderBytes + 4 * i;
    const float v = get_le<float>(bytes, offset);
    if (!std::isfinite(v)) {
      throw FormatError("non-finite value at byte offset " +
                        std::to_string(offset) + " (row " +
                        std::to_string(i / m.dim) + ")");
    }
    m.data[i] = v;
  }
  return m;
}

FeatureMatrix load_features(const std::filesystem::path& path,
                            FeatureFormat format) {
  const std::string bytes = read_file(path);
  if (format == FeatureFormat::kBinary) return decode_fvec(bytes);
  return decode_csv(bytes);
}

void write_features(const FeatureMatrix& m, const std::filesystem::path& path,
                    FeatureFormat format) {
  std::string payload;
  if (format == FeatureFormat::kBinary) {
    payload = encode_fvec(m);
  } else {
    m.validate();
    std::ostringstream out;
    out << std::setprecision(std::numeric_limits<float>::max_digits10);
    out << "# fps=" << m.fps << '\n';
    for (std::size_t i = 0; i < m.n_frames; ++i) {
      for (std::size_t j = 0; j < m.dim; ++j) {
        if (j) out << ',';
        out << m.data[i * m.dim + j];
      }
      out << '\n';
    }
    payload = std::move(out).str();
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open " + path.string() + " for writing");
  file.write(payload.data(), static_cast<std::streamsize>(payload.size()));
  if (!file) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace pgsum
