#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace slideanim {

// 8-bit RGBA raster, row-major, origin top-left.
struct Image {
  int w = 0;
  int h = 0;
  std::vector<std::uint8_t> rgba;

  Image() = default;
  Image(int width, int height, std::uint8_t r = 255, std::uint8_t g = 255, std::uint8_t b = 255,
        std::uint8_t a = 255);

  std::uint8_t* pixel(int x, int y) { return rgba.data() + 4 * (static_cast<std::size_t>(y) * w + x); }
  const std::uint8_t* pixel(int x, int y) const {
    return rgba.data() + 4 * (static_cast<std::size_t>(y) * w + x);
  }
};

// PNG, RGBA8, deterministic byte stream (fixed-Huffman deflate).
std::vector<std::uint8_t> encode_png(const Image& image);
void write_png(const Image& image, const std::string& path);

// PAM (P7, RGBA) and PPM (P6, RGB) readers/writer for image assets.
Image read_image_asset(const std::string& path);
void write_pam(const Image& image, const std::string& path);

// FNV-1a 64 over the raw pixel bytes; frame hashes in render manifests.
std::uint64_t pixel_hash(const Image& image);
std::string hash_hex(std::uint64_t hash);

}  // namespace slideanim
