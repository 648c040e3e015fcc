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

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qimatch {

using Pixel = std::uint32_t;
using PositionIndex = std::uint64_t;

// Raised by load_pgm for streams that cannot be parsed.
class PgmError : public std::runtime_error {
 public:
  enum class Kind { kMalformedHeader, kBadMaxval, kPixelCountMismatch, kPixelOutOfRange };

  PgmError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

// Raised when an image (or a pair of images) is unsuitable for matching.
class ValidationError : public std::invalid_argument {
 public:
  enum class Kind { kNotSquare, kNotPowerOfTwo, kSizeOrder, kBadImage };

  ValidationError(Kind kind, const std::string& what) : std::invalid_argument(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

// Grayscale raster with q-bit intensities, row-major, top-left first.
// Construction enforces the pixel-count and intensity-range invariants;
// shape constraints (square, power of two) are checked by validate_pair.
class Image {
 public:
  Image(std::size_t width, std::size_t height, unsigned bit_depth, std::vector<Pixel> pixels);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  unsigned bit_depth() const noexcept { return bit_depth_; }
  std::span<const Pixel> pixels() const noexcept { return pixels_; }
  Pixel at(std::size_t x, std::size_t y) const { return pixels_.at(y * width_ + x); }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  std::size_t width_;
  std::size_t height_;
  unsigned bit_depth_;
  std::vector<Pixel> pixels_;
};

// Sizes of a legal (big, small) pair: big is 2^n x 2^n, small is 2^m x 2^m.
struct MatchDims {
  unsigned n = 0;
  unsigned m = 0;
  unsigned q = 1;
  std::uint64_t a = 1;  // 2^n

  friend bool operator==(const MatchDims&, const MatchDims&) = default;
};

struct GqirEntry {
  PositionIndex k = 0;
  Pixel value = 0;

  friend bool operator==(const GqirEntry&, const GqirEntry&) = default;
};

// Classical image of the state 2^-s * sum_k |I(k)>|k> for a 2^s x 2^s
// image. Every basis term has the same amplitude, so it is not stored.
struct GqirImage {
  unsigned side_log = 0;
  unsigned bit_depth = 1;
  std::vector<GqirEntry> entries;

  std::uint64_t side() const noexcept { return std::uint64_t{1} << side_log; }
  double amplitude() const noexcept { return 1.0 / static_cast<double>(side()); }
  Pixel value(PositionIndex k) const { return entries.at(k).value; }
};

// Parses a P2 (ASCII) or P5 (binary) graymap. bit_depth is the number of
// bits needed to hold maxval.
Image load_pgm(std::string_view bytes);

// Reads a file from disk and parses it with load_pgm. Throws
// std::system_error if the file cannot be read.
Image load_pgm_file(const std::string& path);

MatchDims validate_pair(const Image& big, const Image& small);

// Encodes one image of a validated pair; the side must be 2^dims.n or
// 2^dims.m. Intensities are widened to dims.q bits.
GqirImage encode_gqir(const Image& img, const MatchDims& dims);

// Row-major position convention: k = y * side + x.
constexpr PositionIndex position_index(std::uint64_t x, std::uint64_t y, std::uint64_t side) {
  return y * side + x;
}

struct Coord {
  std::uint64_t x = 0;
  std::uint64_t y = 0;

  friend bool operator==(const Coord&, const Coord&) = default;
  // Row-major order, matching position_index.
  friend auto operator<=>(const Coord& l, const Coord& r) {
    if (auto c = l.y <=> r.y; c != 0) return c;
    return l.x <=> r.x;
  }
};

constexpr Coord position_coords(PositionIndex k, std::uint64_t side) {
  return Coord{k % side, k / side};
}

}  // namespace qimatch
