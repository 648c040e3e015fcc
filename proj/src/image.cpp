// Copyright 2026 The qimatch Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qimatch/image.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cerrno>
#include <charconv>
#include <fstream>
#include <iterator>
#include <optional>
#include <system_error>

#include <fmt/format.h>

namespace qimatch {

Image::Image(std::size_t width, std::size_t height, unsigned bit_depth, std::vector<Pixel> pixels)
    : width_(width), height_(height), bit_depth_(bit_depth), pixels_(std::move(pixels)) {
  if (bit_depth_ < 1 || bit_depth_ > 16) {
    throw ValidationError(ValidationError::Kind::kBadImage,
                          fmt::format("bit depth {} outside [1, 16]", bit_depth_));
  }
  if (width_ == 0 || height_ == 0) {
    throw ValidationError(ValidationError::Kind::kBadImage, "image has zero area");
  }
  if (pixels_.size() != width_ * height_) {
    throw ValidationError(ValidationError::Kind::kBadImage,
                          fmt::format("{} pixels for a {}x{} image", pixels_.size(), width_, height_));
  }
  const Pixel max_value = (Pixel{1} << bit_depth_) - 1;
  for (Pixel v : pixels_) {
    if (v > max_value) {
      throw ValidationError(ValidationError::Kind::kBadImage,
                            fmt::format("pixel value {} exceeds {}-bit range", v, bit_depth_));
    }
  }
}

namespace {

// Cursor over the header section of a netpbm stream.
class HeaderReader {
 public:
  explicit HeaderReader(std::string_view bytes) : bytes_(bytes) {}

  std::size_t position() const { return pos_; }

  // Skips whitespace and '#' comments, then reads one token.
  std::string_view token() {
    skip_space_and_comments();
    const std::size_t start = pos_;
    while (pos_ < bytes_.size() && !is_space(bytes_[pos_]) && bytes_[pos_] != '#') ++pos_;
    return bytes_.substr(start, pos_ - start);
  }

  std::optional<std::uint64_t> number() {
    const std::string_view tok = token();
    std::uint64_t value = 0;
    const auto* end = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(tok.data(), end, value);
    if (tok.empty() || ec != std::errc{} || ptr != end) return std::nullopt;
    return value;
  }

  // Consumes the single whitespace byte that separates the header from
  // binary raster data.
  bool single_separator() {
    if (pos_ >= bytes_.size() || !is_space(bytes_[pos_])) return false;
    ++pos_;
    return true;
  }

 private:
  static bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (is_space(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view bytes_;
  std::size_t pos_ = 0;
};

[[noreturn]] void malformed(const std::string& what) {
  throw PgmError(PgmError::Kind::kMalformedHeader, what);
}

bool is_power_of_two(std::size_t v) { return v != 0 && std::has_single_bit(v); }

}  // namespace

Image load_pgm(std::string_view bytes) {
  HeaderReader reader(bytes);
  const std::string_view magic = reader.token();
  if (magic != "P2" && magic != "P5") malformed(fmt::format("unsupported magic '{}'", magic));
  const bool binary = magic == "P5";

  const auto width = reader.number();
  const auto height = reader.number();
  if (!width || !height || *width == 0 || *height == 0) malformed("bad width/height");
  if (*width > (1u << 24) || *height > (1u << 24)) malformed("image dimensions too large");
  const auto maxval = reader.number();
  if (!maxval) malformed("bad maxval");
  if (*maxval < 1 || *maxval > 65535) {
    throw PgmError(PgmError::Kind::kBadMaxval, fmt::format("maxval {} outside [1, 65535]", *maxval));
  }

  const std::size_t count = *width * *height;
  const unsigned bit_depth = static_cast<unsigned>(std::bit_width(*maxval));
  std::vector<Pixel> pixels;
  pixels.reserve(count);

  if (binary) {
    if (!reader.single_separator()) malformed("missing separator before raster");
    const std::size_t bytes_per_pixel = *maxval > 255 ? 2 : 1;
    const std::string_view raster = bytes.substr(reader.position());
    if (raster.size() != count * bytes_per_pixel) {
      throw PgmError(PgmError::Kind::kPixelCountMismatch,
                     fmt::format("expected {} raster bytes, found {}", count * bytes_per_pixel,
                                 raster.size()));
    }
    for (std::size_t i = 0; i < count; ++i) {
      Pixel v = static_cast<unsigned char>(raster[i * bytes_per_pixel]);
      if (bytes_per_pixel == 2) v = (v << 8) | static_cast<unsigned char>(raster[i * 2 + 1]);
      pixels.push_back(v);
    }
  } else {
    for (;;) {
      const std::string_view tok = reader.token();
      if (tok.empty()) break;
      Pixel v = 0;
      const auto* end = tok.data() + tok.size();
      auto [ptr, ec] = std::from_chars(tok.data(), end, v);
      if (ec != std::errc{} || ptr != end) {
        throw PgmError(PgmError::Kind::kPixelCountMismatch, fmt::format("bad pixel token '{}'", tok));
      }
      pixels.push_back(v);
    }
    if (pixels.size() != count) {
      throw PgmError(PgmError::Kind::kPixelCountMismatch,
                     fmt::format("expected {} pixels, found {}", count, pixels.size()));
    }
  }

  for (Pixel v : pixels) {
    if (v > *maxval) {
      throw PgmError(PgmError::Kind::kPixelOutOfRange,
                     fmt::format("pixel value {} exceeds maxval {}", v, *maxval));
    }
  }
  return Image(*width, *height, bit_depth, std::move(pixels));
}

Image load_pgm_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::system_error(errno, std::generic_category(), path);
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw std::system_error(errno, std::generic_category(), path);
  return load_pgm(bytes);
}

MatchDims validate_pair(const Image& big, const Image& small) {
  for (const Image* img : {&big, &small}) {
    const char* role = img == &big ? "big" : "small";
    if (img->width() != img->height()) {
      throw ValidationError(ValidationError::Kind::kNotSquare,
                            fmt::format("{} image is {}x{}, not square", role, img->width(),
                                        img->height()));
    }
    if (!is_power_of_two(img->width())) {
      throw ValidationError(ValidationError::Kind::kNotPowerOfTwo,
                            fmt::format("{} image side {} is not a power of two", role, img->width()));
    }
  }
  const auto n = static_cast<unsigned>(std::countr_zero(big.width()));
  const auto m = static_cast<unsigned>(std::countr_zero(small.width()));
  if (n <= m) {
    throw ValidationError(ValidationError::Kind::kSizeOrder,
                          fmt::format("big image side {} must exceed small image side {}", big.width(),
                                      small.width()));
  }
  return MatchDims{n, m, std::max(big.bit_depth(), small.bit_depth()), std::uint64_t{1} << n};
}

GqirImage encode_gqir(const Image& img, const MatchDims& dims) {
  if (img.width() != img.height()) {
    throw ValidationError(ValidationError::Kind::kNotSquare, "cannot encode a non-square image");
  }
  unsigned side_log = 0;
  if (img.width() == (std::size_t{1} << dims.n)) {
    side_log = dims.n;
  } else if (img.width() == (std::size_t{1} << dims.m)) {
    side_log = dims.m;
  } else {
    throw ValidationError(ValidationError::Kind::kNotPowerOfTwo,
                          fmt::format("image side {} matches neither 2^{} nor 2^{}", img.width(),
                                      dims.n, dims.m));
  }
  if (img.bit_depth() > dims.q) {
    throw ValidationError(ValidationError::Kind::kBadImage, "image bit depth exceeds pair depth");
  }

  GqirImage out{side_log, dims.q, {}};
  const auto pixels = img.pixels();
  out.entries.reserve(pixels.size());
  // pixels are stored row-major, so the storage offset is already k = y*side + x
  for (std::size_t k = 0; k < pixels.size(); ++k) out.entries.push_back({k, pixels[k]});
  return out;
}

}  // namespace qimatch
