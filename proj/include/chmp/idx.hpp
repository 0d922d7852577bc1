#ifndef CHMP_IDX_HPP
#define CHMP_IDX_HPP

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "chmp/point_set.hpp"

namespace chmp {

inline constexpr std::uint32_t kIdxImageMagic = 0x00000803;
inline constexpr std::uint32_t kIdxLabelMagic = 0x00000801;

/// Flattened images as columns (raw 0..255 values) with their labels.
struct LabeledSamples {
  Matrix images;
  std::vector<int> labels;

  [[nodiscard]] Index size() const { return images.cols(); }
  [[nodiscard]] Index dim() const { return images.rows(); }
};

namespace detail {

inline std::uint32_t read_be32(std::istream& in, const std::string& path) {
  unsigned char b[4];
  if (!in.read(reinterpret_cast<char*>(b), 4)) {
    throw FormatError("truncated IDX header in '" + path + "'");
  }
  return (std::uint32_t{b[0]} << 24) | (std::uint32_t{b[1]} << 16) |
         (std::uint32_t{b[2]} << 8) | std::uint32_t{b[3]};
}

inline std::vector<unsigned char> read_payload(std::istream& in, std::size_t bytes,
                                               const std::string& path) {
  std::vector<unsigned char> data(bytes);
  if (bytes > 0 && !in.read(reinterpret_cast<char*>(data.data()),
                            static_cast<std::streamsize>(bytes))) {
    throw FormatError("truncated IDX payload in '" + path + "'");
  }
  return data;
}

}  // namespace detail

/// Parse an IDX image file (magic 0x803, dims count x rows x cols) and its
/// label file (magic 0x801). `limit` keeps only the first images.
inline LabeledSamples read_idx(const std::string& images_path, const std::string& labels_path,
                               std::optional<std::size_t> limit = std::nullopt) {
  std::ifstream img(images_path, std::ios::binary);
  if (!img) throw FormatError("cannot open '" + images_path + "'");
  std::ifstream lab(labels_path, std::ios::binary);
  if (!lab) throw FormatError("cannot open '" + labels_path + "'");

  if (detail::read_be32(img, images_path) != kIdxImageMagic) {
    throw FormatError("bad image magic in '" + images_path + "'");
  }
  const std::uint32_t count = detail::read_be32(img, images_path);
  const std::uint32_t rows = detail::read_be32(img, images_path);
  const std::uint32_t cols = detail::read_be32(img, images_path);
  if (detail::read_be32(lab, labels_path) != kIdxLabelMagic) {
    throw FormatError("bad label magic in '" + labels_path + "'");
  }
  const std::uint32_t label_count = detail::read_be32(lab, labels_path);
  if (label_count != count) throw FormatError("image and label counts differ");
  if (rows == 0 || cols == 0) throw FormatError("IDX images must have positive size");

  std::size_t keep = count;
  if (limit) keep = std::min<std::size_t>(keep, *limit);
  if (keep == 0) throw FormatError("no images selected");

  const std::size_t pixels = std::size_t{rows} * cols;
  const auto raw = detail::read_payload(img, keep * pixels, images_path);
  const auto raw_labels = detail::read_payload(lab, keep, labels_path);

  LabeledSamples out;
  out.images.resize(static_cast<Index>(pixels), static_cast<Index>(keep));
  for (std::size_t j = 0; j < keep; ++j) {
    for (std::size_t i = 0; i < pixels; ++i) {
      out.images(static_cast<Index>(i), static_cast<Index>(j)) = raw[j * pixels + i];
    }
  }
  out.labels.assign(raw_labels.begin(), raw_labels.end());
  return out;
}

inline void write_idx(const std::string& images_path, const std::string& labels_path,
                      const std::vector<unsigned char>& pixels, const std::vector<unsigned char>& labels,
                      std::uint32_t rows, std::uint32_t cols) {
  auto be32 = [](std::ofstream& out, std::uint32_t v) {
    const char b[4] = {static_cast<char>(v >> 24), static_cast<char>(v >> 16),
                       static_cast<char>(v >> 8), static_cast<char>(v)};
    out.write(b, 4);
  };
  if (pixels.size() != labels.size() * rows * cols) {
    throw InputError("pixel count does not match labels x rows x cols");
  }
  std::ofstream img(images_path, std::ios::binary);
  std::ofstream lab(labels_path, std::ios::binary);
  if (!img || !lab) throw FormatError("cannot write IDX files");
  be32(img, kIdxImageMagic);
  be32(img, static_cast<std::uint32_t>(labels.size()));
  be32(img, rows);
  be32(img, cols);
  img.write(reinterpret_cast<const char*>(pixels.data()),
            static_cast<std::streamsize>(pixels.size()));
  be32(lab, kIdxLabelMagic);
  be32(lab, static_cast<std::uint32_t>(labels.size()));
  lab.write(reinterpret_cast<const char*>(labels.data()),
            static_cast<std::streamsize>(labels.size()));
}

}  // namespace chmp

#endif  // CHMP_IDX_HPP
