#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "tamperlens/image.hpp"

namespace tamperlens {

// Binary PGM ("P5"). Header comments starting with '#' are accepted,
// maxval must be <= 255. Trailing bytes beyond the declared raster are
// ignored; the decoder never reads past it.
GrayImage decode_pgm(std::span<const std::uint8_t> bytes);

// Binary PPM ("P6"), same header rules.
RgbImage decode_ppm(std::span<const std::uint8_t> bytes);

// Canonical form: "P5\n{w} {h}\n255\n" followed by the raster.
// decode_pgm(encode_pgm(img)) == img for every valid image.
std::vector<std::uint8_t> encode_pgm(const GrayImage& img);

// Reads a PGM or PPM file (sniffed by magic); PPM input is converted to
// grayscale. Throws IoError if the file cannot be read, ParseError if the
// contents are malformed.
GrayImage load_gray(const std::filesystem::path& path);

void save_pgm(const GrayImage& img, const std::filesystem::path& path);

}  // namespace tamperlens
