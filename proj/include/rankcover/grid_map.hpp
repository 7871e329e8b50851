#pragma once

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rankcover/errors.hpp"

namespace rankcover {

// Row-major occupancy raster. `true` marks an obstacle pixel.
struct GridMap {
  int width = 0;
  int height = 0;
  std::vector<bool> occupancy;
  double resolution = 1.0;  // world units per pixel

  GridMap() = default;
  GridMap(int w, int h, bool fill = false, double res = 1.0)
      : width(w), height(h), occupancy(static_cast<std::size_t>(w) * h, fill), resolution(res) {
    if (w < 0 || h < 0) throw ContractError("GridMap: negative dimensions");
    if (!(res > 0.0)) throw ContractError("GridMap: resolution must be positive");
  }

  bool obstacle(int x, int y) const { return occupancy[static_cast<std::size_t>(y) * width + x]; }
  void set_obstacle(int x, int y, bool v) { occupancy[static_cast<std::size_t>(y) * width + x] = v; }
  bool in_bounds(int x, int y) const { return x >= 0 && y >= 0 && x < width && y < height; }

  std::size_t free_count() const {
    std::size_t n = 0;
    for (bool b : occupancy) n += !b;
    return n;
  }

  bool operator==(const GridMap&) const = default;
};

// '#' = obstacle, '.' = free, one text line per row. A single trailing
// newline (and CR before LF) is accepted.
inline GridMap parse_ascii_map(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  if (lines.empty()) return GridMap{};

  const int width = static_cast<int>(lines.front().size());
  GridMap map(width, static_cast<int>(lines.size()));
  std::size_t offset = 0;
  for (int y = 0; y < map.height; ++y) {
    const auto& line = lines[y];
    if (static_cast<int>(line.size()) != width) {
      throw FormatError("ragged map: line " + std::to_string(y + 1) + " has length " +
                            std::to_string(line.size()) + ", expected " + std::to_string(width),
                        offset);
    }
    for (int x = 0; x < width; ++x) {
      const char c = line[x];
      if (c == '#') {
        map.set_obstacle(x, y, true);
      } else if (c != '.') {
        throw FormatError("illegal character '" + std::string(1, c) + "' at line " +
                              std::to_string(y + 1) + ", column " + std::to_string(x + 1),
                          offset + x);
      }
    }
    offset += text.substr(offset).find('\n') + 1;
  }
  return map;
}

inline std::string to_ascii(const GridMap& map) {
  std::string out;
  out.reserve(static_cast<std::size_t>(map.width + 1) * map.height);
  for (int y = 0; y < map.height; ++y) {
    for (int x = 0; x < map.width; ++x) out.push_back(map.obstacle(x, y) ? '#' : '.');
    out.push_back('\n');
  }
  return out;
}

namespace detail {

class PgmReader {
 public:
  explicit PgmReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  long read_int() {
    skip_space_and_comments();
    if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_]))
      throw FormatError("PGM: expected integer", pos_);
    long v = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      v = v * 10 + (bytes_[pos_] - '0');
      if (v > 1'000'000'000L) throw FormatError("PGM: integer out of range", pos_);
      ++pos_;
    }
    return v;
  }

  std::uint8_t read_byte() {
    if (pos_ >= bytes_.size()) throw FormatError("PGM: truncated payload", pos_);
    return bytes_[pos_++];
  }

  std::size_t pos() const { return pos_; }
  void advance(std::size_t n) { pos_ += n; }
  std::size_t size() const { return bytes_.size(); }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace detail

// Pixels with value < threshold become obstacles. Only 8-bit maxval is supported.
inline GridMap parse_pgm(std::span<const std::uint8_t> bytes, int threshold = 128) {
  if (threshold < 0 || threshold > 255) throw ContractError("parse_pgm: threshold must be in [0,255]");
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5'))
    throw FormatError("PGM: bad magic (expected P2 or P5)", 0);
  const bool binary = bytes[1] == '5';

  detail::PgmReader in(bytes);
  in.advance(2);
  const long width = in.read_int();
  const long height = in.read_int();
  const long maxval = in.read_int();
  if (maxval < 1 || maxval > 255) throw FormatError("PGM: maxval must be in [1,255]", in.pos());
  if (width > 1'000'000 || height > 1'000'000 || width * height > 400'000'000L)
    throw FormatError("PGM: image too large", in.pos());

  GridMap map(static_cast<int>(width), static_cast<int>(height));
  if (binary) {
    // exactly one whitespace byte separates the header from the raster
    if (in.pos() >= in.size()) throw FormatError("PGM: truncated payload", in.pos());
    in.advance(1);
  }
  for (int y = 0; y < map.height; ++y) {
    for (int x = 0; x < map.width; ++x) {
      long v;
      if (binary) {
        v = in.read_byte();
      } else {
        in.skip_space_and_comments();
        if (in.pos() >= in.size()) throw FormatError("PGM: truncated payload", in.pos());
        v = in.read_int();
      }
      if (v > maxval) throw FormatError("PGM: pixel exceeds maxval", in.pos());
      map.set_obstacle(x, y, v < threshold);
    }
  }
  return map;
}

inline GridMap parse_pgm(std::string_view bytes, int threshold = 128) {
  return parse_pgm(std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>(bytes.data()),
                                                 bytes.size()),
                   threshold);
}

}  // namespace rankcover
