#include "fse/image.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <string>

#include "fse/error.hpp"

namespace fse {
namespace {

class HeaderReader {
 public:
  HeaderReader(std::string_view bytes, std::size_t start) : bytes_(bytes), pos_(start) {}

  std::size_t pos() const { return pos_; }

  // Whitespace and '#' comments between header tokens.
  void skip_separators() {
    while (pos_ < bytes_.size()) {
      const char ch = bytes_[pos_];
      if (ch == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(ch))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  long read_int(const char* what) {
    skip_separators();
    const std::size_t start = pos_;
    if (pos_ >= bytes_.size()) throw ParseError(std::string("truncated header, expected ") + what, pos_);
    long value = 0;
    while (pos_ < bytes_.size() && std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > 1'000'000) throw ParseError(std::string(what) + " is too large", start);
      ++pos_;
    }
    if (pos_ == start) throw ParseError(std::string("expected ") + what, start);
    return value;
  }

  // Exactly one whitespace byte separates maxval from the raster.
  void single_whitespace() {
    if (pos_ >= bytes_.size() || !std::isspace(static_cast<unsigned char>(bytes_[pos_]))) {
      throw ParseError("expected whitespace after maxval", pos_);
    }
    ++pos_;
  }

 private:
  std::string_view bytes_;
  std::size_t pos_;
};

}  // namespace

std::uint8_t to_pixel(double value) {
  if (!(value > 0.0)) return 0;  // also maps NaN to 0
  if (value >= 255.0) return 255;
  return static_cast<std::uint8_t>(std::lround(value));
}

Image decode_pgm(std::string_view bytes) {
  if (bytes.size() < 2) throw ParseError("file too short for a PGM header", bytes.size());
  if (bytes[0] != 'P') throw ParseError("not a PGM file (missing 'P' magic)", 0);
  if (bytes[1] != '5') {
    throw ParseError(std::string("unsupported format P") + bytes[1] + ", only binary P5 is supported", 1);
  }
  HeaderReader reader(bytes, 2);
  const std::size_t width_at = reader.pos();
  const long width = reader.read_int("width");
  const long height = reader.read_int("height");
  if (width < 1 || height < 1) throw ParseError("image dimensions must be positive", width_at);
  reader.skip_separators();
  const std::size_t maxval_at = reader.pos();
  const long maxval = reader.read_int("maxval");
  if (maxval != 255) {
    throw ParseError("unsupported maxval " + std::to_string(maxval) + ", expected 255", maxval_at);
  }
  reader.single_whitespace();

  const std::size_t raster = reader.pos();
  const std::size_t needed = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  if (bytes.size() - raster < needed) {
    throw ParseError("truncated raster: expected " + std::to_string(needed) + " bytes, found " +
                         std::to_string(bytes.size() - raster),
                     bytes.size());
  }
  Image img(static_cast<int>(width), static_cast<int>(height));
  for (std::size_t i = 0; i < needed; ++i) img.pixels[i] = static_cast<std::uint8_t>(bytes[raster + i]);
  return img;
}

std::vector<std::uint8_t> encode_pgm(const Image& image) {
  const std::string header =
      "P5\n" + std::to_string(image.width) + " " + std::to_string(image.height) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), image.pixels.begin(), image.pixels.end());
  return out;
}

Image load_image(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "' for reading");
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_pgm(bytes);
}

void save_image(const Image& image, const std::filesystem::path& path) {
  const std::vector<std::uint8_t> bytes = encode_pgm(image);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

}  // namespace fse
