#pragma once

#include <cstdint>
#include <filesystem>
#include <string_view>
#include <vector>

namespace fse {

/// 8-bit grayscale image, row-major.
struct Image {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;

  Image() = default;
  Image(int w, int h, std::uint8_t fill = 0)
      : width(w), height(h), pixels(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill) {}

  std::uint8_t& at(int row, int col) { return pixels[static_cast<std::size_t>(row) * width + col]; }
  std::uint8_t at(int row, int col) const { return pixels[static_cast<std::size_t>(row) * width + col]; }

  friend bool operator==(const Image&, const Image&) = default;
};

/// Clamp to [0,255] and round half away from zero.
std::uint8_t to_pixel(double value);

/// Parse a binary PGM (P5, maxval 255). Throws ParseError with the byte offset.
Image decode_pgm(std::string_view bytes);
std::vector<std::uint8_t> encode_pgm(const Image& image);

Image load_image(const std::filesystem::path& path);
void save_image(const Image& image, const std::filesystem::path& path);

}  // namespace fse
