#include "tamperlens/netpbm.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <string>

#include "tamperlens/errors.hpp"

namespace tamperlens {

namespace {

bool is_pnm_space(std::uint8_t c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

// Cursor over the header; handles whitespace runs and '#' comments.
class HeaderReader {
 public:
  explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (is_pnm_space(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  // Whitespace/comment-delimited decimal integer, optional leading '-'.
  long long read_int() {
    skip_space_and_comments();
    if (pos_ >= bytes_.size()) {
      throw ParseError(ParseError::Kind::BadHeader, "unexpected end of header");
    }
    bool negative = false;
    if (bytes_[pos_] == '-') {
      negative = true;
      ++pos_;
    }
    if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) {
      throw ParseError(ParseError::Kind::BadHeader, "expected integer in header");
    }
    long long value = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > (1LL << 40)) {
        throw ParseError(ParseError::Kind::BadHeader, "header value out of range");
      }
      ++pos_;
    }
    return negative ? -value : value;
  }

  // Exactly one whitespace byte separates maxval from the raster.
  void consume_raster_separator() {
    if (pos_ >= bytes_.size() || !is_pnm_space(bytes_[pos_])) {
      throw ParseError(ParseError::Kind::BadHeader, "missing whitespace before raster");
    }
    ++pos_;
  }

  std::span<const std::uint8_t> rest() const { return bytes_.subspan(pos_); }

  bool consume_magic(char second) {
    if (bytes_.size() < 2 || bytes_[0] != 'P' || bytes_[1] != second) return false;
    pos_ = 2;
    return true;
  }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

struct PnmHeader {
  int width;
  int height;
  std::span<const std::uint8_t> raster;
};

PnmHeader parse_header(std::span<const std::uint8_t> bytes, char magic_second,
                       const char* format_name) {
  HeaderReader reader(bytes);
  if (!reader.consume_magic(magic_second)) {
    throw ParseError(ParseError::Kind::BadMagic,
                     std::string("not a binary ") + format_name + " (bad magic)");
  }
  const long long width = reader.read_int();
  const long long height = reader.read_int();
  if (width <= 0 || height <= 0) {
    throw ParseError(ParseError::Kind::BadDimensions, "non-positive image dimensions");
  }
  if (width > 1'000'000 || height > 1'000'000 || width * height > (1LL << 30)) {
    throw ParseError(ParseError::Kind::BadDimensions, "image dimensions too large");
  }
  const long long maxval = reader.read_int();
  if (maxval < 1 || maxval > 255) {
    throw ParseError(ParseError::Kind::BadMaxval,
                     "maxval must be in [1, 255], got " + std::to_string(maxval));
  }
  reader.consume_raster_separator();
  return {static_cast<int>(width), static_cast<int>(height), reader.rest()};
}

}  // namespace

GrayImage decode_pgm(std::span<const std::uint8_t> bytes) {
  const PnmHeader header = parse_header(bytes, '5', "PGM");
  const std::size_t need = static_cast<std::size_t>(header.width) * header.height;
  if (header.raster.size() < need) {
    throw ParseError(ParseError::Kind::Truncated,
                     "raster truncated: expected " + std::to_string(need) + " bytes, got " +
                         std::to_string(header.raster.size()));
  }
  std::vector<std::uint8_t> data(header.raster.begin(), header.raster.begin() + need);
  return GrayImage(header.width, header.height, std::move(data));
}

RgbImage decode_ppm(std::span<const std::uint8_t> bytes) {
  const PnmHeader header = parse_header(bytes, '6', "PPM");
  const std::size_t need = static_cast<std::size_t>(header.width) * header.height * 3;
  if (header.raster.size() < need) {
    throw ParseError(ParseError::Kind::Truncated,
                     "raster truncated: expected " + std::to_string(need) + " bytes, got " +
                         std::to_string(header.raster.size()));
  }
  std::vector<std::uint8_t> data(header.raster.begin(), header.raster.begin() + need);
  return RgbImage(header.width, header.height, std::move(data));
}

std::vector<std::uint8_t> encode_pgm(const GrayImage& img) {
  char header[64];
  const int n = std::snprintf(header, sizeof(header), "P5\n%d %d\n255\n", img.width(), img.height());
  std::vector<std::uint8_t> out(header, header + n);
  out.insert(out.end(), img.pixels().begin(), img.pixels().end());
  return out;
}

GrayImage load_gray(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open " + path.string());
  }
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '6') {
    return rgb_to_gray(decode_ppm(bytes));
  }
  return decode_pgm(bytes);
}

void save_pgm(const GrayImage& img, const std::filesystem::path& path) {
  const std::vector<std::uint8_t> bytes = encode_pgm(img);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open " + path.string() + " for writing");
  }
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw IoError("write failed: " + path.string());
  }
}

}  // namespace tamperlens
