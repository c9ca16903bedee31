#include "slideanim/image.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace slideanim {

Image::Image(int width, int height, std::uint8_t r, std::uint8_t g, std::uint8_t b,
             std::uint8_t a)
    : w(width), h(height), rgba(static_cast<std::size_t>(width) * height * 4) {
  for (std::size_t i = 0; i < rgba.size(); i += 4) {
    rgba[i] = r;
    rgba[i + 1] = g;
    rgba[i + 2] = b;
    rgba[i + 3] = a;
  }
}

namespace {

std::uint32_t crc32_update(std::uint32_t crc, const std::uint8_t* data, std::size_t n) {
  static const std::array<std::uint32_t, 256> table = [] {
    std::array<std::uint32_t, 256> t{};
    for (std::uint32_t i = 0; i < 256; ++i) {
      std::uint32_t c = i;
      for (int k = 0; k < 8; ++k) c = (c & 1) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
      t[i] = c;
    }
    return t;
  }();
  for (std::size_t i = 0; i < n; ++i) crc = table[(crc ^ data[i]) & 0xFF] ^ (crc >> 8);
  return crc;
}

std::uint32_t adler32(const std::uint8_t* data, std::size_t n) {
  std::uint32_t a = 1, b = 0;
  for (std::size_t i = 0; i < n; ++i) {
    a = (a + data[i]) % 65521;
    b = (b + a) % 65521;
  }
  return (b << 16) | a;
}

class BitWriter {
 public:
  explicit BitWriter(std::vector<std::uint8_t>& out) : out_(out) {}

  // LSB-first bit packing per the deflate spec.
  void put_bits(std::uint32_t value, int count) {
    acc_ |= static_cast<std::uint64_t>(value) << filled_;
    filled_ += count;
    while (filled_ >= 8) {
      out_.push_back(static_cast<std::uint8_t>(acc_ & 0xFF));
      acc_ >>= 8;
      filled_ -= 8;
    }
  }

  // Huffman codes are emitted most-significant code bit first.
  void put_code(std::uint32_t code, int count) {
    std::uint32_t reversed = 0;
    for (int i = 0; i < count; ++i) reversed |= ((code >> i) & 1u) << (count - 1 - i);
    put_bits(reversed, count);
  }

  void flush() {
    if (filled_ > 0) {
      out_.push_back(static_cast<std::uint8_t>(acc_ & 0xFF));
      acc_ = 0;
      filled_ = 0;
    }
  }

 private:
  std::vector<std::uint8_t>& out_;
  std::uint64_t acc_ = 0;
  int filled_ = 0;
};

void put_literal(BitWriter& bw, std::uint8_t v) {
  if (v < 144) {
    bw.put_code(0x30u + v, 8);
  } else {
    bw.put_code(0x190u + (v - 144u), 9);
  }
}

void put_length_code(BitWriter& bw, int code) {
  if (code < 280) {
    bw.put_code(static_cast<std::uint32_t>(code - 256), 7);
  } else {
    bw.put_code(0xC0u + static_cast<std::uint32_t>(code - 280), 8);
  }
}

struct LengthCode {
  int code;
  int extra_bits;
  int base;
};

// Match length -> fixed Huffman length code.
LengthCode length_code_for(int len) {
  static constexpr std::array<LengthCode, 29> table = {{
      {257, 0, 3},   {258, 0, 4},   {259, 0, 5},   {260, 0, 6},  {261, 0, 7},  {262, 0, 8},
      {263, 0, 9},   {264, 0, 10},  {265, 1, 11},  {266, 1, 13}, {267, 1, 15}, {268, 1, 17},
      {269, 2, 19},  {270, 2, 23},  {271, 2, 27},  {272, 2, 31}, {273, 3, 35}, {274, 3, 43},
      {275, 3, 51},  {276, 3, 59},  {277, 4, 67},  {278, 4, 83}, {279, 4, 99}, {280, 4, 115},
      {281, 5, 131}, {282, 5, 163}, {283, 5, 195}, {284, 5, 227}, {285, 0, 258},
  }};
  for (std::size_t i = table.size(); i-- > 0;) {
    if (len >= table[i].base) return table[i];
  }
  return table[0];
}

// Single fixed-Huffman block. Matching is restricted to distance 1, which
// collapses the long byte runs produced by the Up row filter.
std::vector<std::uint8_t> deflate_rle(const std::vector<std::uint8_t>& data) {
  std::vector<std::uint8_t> out;
  out.reserve(data.size() / 8 + 64);
  BitWriter bw(out);
  bw.put_bits(1, 1);  // final block
  bw.put_bits(1, 2);  // fixed Huffman

  std::size_t pos = 0;
  const std::size_t n = data.size();
  while (pos < n) {
    std::size_t run = 0;
    if (pos > 0) {
      const std::uint8_t prev = data[pos - 1];
      while (pos + run < n && data[pos + run] == prev) ++run;
    }
    if (run >= 3) {
      std::size_t remaining = run;
      while (remaining >= 3) {
        std::size_t len = remaining < 258 ? remaining : 258;
        if (remaining - len > 0 && remaining - len < 3) len = remaining - 3;
        LengthCode lc = length_code_for(static_cast<int>(len));
        put_length_code(bw, lc.code);
        if (lc.extra_bits > 0) {
          bw.put_bits(static_cast<std::uint32_t>(len - lc.base), lc.extra_bits);
        }
        bw.put_code(0, 5);  // distance code 0 -> distance 1
        remaining -= len;
        pos += len;
      }
      continue;
    }
    put_literal(bw, data[pos]);
    ++pos;
  }
  put_length_code(bw, 256);  // end of block
  bw.flush();
  return out;
}

void append_be32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

void append_chunk(std::vector<std::uint8_t>& out, const char type[4],
                  const std::vector<std::uint8_t>& payload) {
  append_be32(out, static_cast<std::uint32_t>(payload.size()));
  std::size_t crc_start = out.size();
  out.insert(out.end(), type, type + 4);
  out.insert(out.end(), payload.begin(), payload.end());
  std::uint32_t crc =
      crc32_update(0xFFFFFFFFu, out.data() + crc_start, out.size() - crc_start) ^ 0xFFFFFFFFu;
  append_be32(out, crc);
}

}  // namespace

std::vector<std::uint8_t> encode_png(const Image& image) {
  if (image.w <= 0 || image.h <= 0) {
    throw std::invalid_argument("cannot encode an empty image");
  }
  const std::size_t stride = static_cast<std::size_t>(image.w) * 4;

  // Up filter on every row (the virtual row above row 0 is all zeros).
  std::vector<std::uint8_t> filtered;
  filtered.reserve((stride + 1) * static_cast<std::size_t>(image.h));
  for (int y = 0; y < image.h; ++y) {
    filtered.push_back(2);  // filter type: Up
    const std::uint8_t* row = image.rgba.data() + stride * static_cast<std::size_t>(y);
    if (y == 0) {
      filtered.insert(filtered.end(), row, row + stride);
    } else {
      const std::uint8_t* above = row - stride;
      for (std::size_t i = 0; i < stride; ++i) {
        filtered.push_back(static_cast<std::uint8_t>(row[i] - above[i]));
      }
    }
  }

  std::vector<std::uint8_t> idat;
  idat.push_back(0x78);
  idat.push_back(0x01);
  std::vector<std::uint8_t> compressed = deflate_rle(filtered);
  idat.insert(idat.end(), compressed.begin(), compressed.end());
  append_be32(idat, adler32(filtered.data(), filtered.size()));

  std::vector<std::uint8_t> out = {137, 80, 78, 71, 13, 10, 26, 10};
  std::vector<std::uint8_t> ihdr;
  append_be32(ihdr, static_cast<std::uint32_t>(image.w));
  append_be32(ihdr, static_cast<std::uint32_t>(image.h));
  ihdr.push_back(8);  // bit depth
  ihdr.push_back(6);  // RGBA
  ihdr.push_back(0);
  ihdr.push_back(0);
  ihdr.push_back(0);
  append_chunk(out, "IHDR", ihdr);
  append_chunk(out, "IDAT", idat);
  append_chunk(out, "IEND", {});
  return out;
}

void write_png(const Image& image, const std::string& path) {
  std::vector<std::uint8_t> bytes = encode_png(image);
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
  file.write(reinterpret_cast<const char*>(bytes.data()),
             static_cast<std::streamsize>(bytes.size()));
  if (!file) throw std::runtime_error("write failed for '" + path + "'");
}

namespace {

std::string next_pnm_token(std::istream& in) {
  std::string token;
  while (in >> token) {
    if (token[0] == '#') {
      std::string rest;
      std::getline(in, rest);
      continue;
    }
    return token;
  }
  throw std::runtime_error("truncated PNM header");
}

}  // namespace

Image read_image_asset(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open image asset '" + path + "'");
  std::string magic = next_pnm_token(file);

  Image image;
  int depth = 3;
  if (magic == "P6") {
    image.w = std::stoi(next_pnm_token(file));
    image.h = std::stoi(next_pnm_token(file));
    int maxval = std::stoi(next_pnm_token(file));
    if (maxval != 255) throw std::runtime_error("unsupported maxval in '" + path + "'");
    depth = 3;
  } else if (magic == "P7") {
    int maxval = 255;
    for (;;) {
      std::string key = next_pnm_token(file);
      if (key == "ENDHDR") break;
      std::string value = next_pnm_token(file);
      if (key == "WIDTH") image.w = std::stoi(value);
      else if (key == "HEIGHT") image.h = std::stoi(value);
      else if (key == "DEPTH") depth = std::stoi(value);
      else if (key == "MAXVAL") maxval = std::stoi(value);
      // TUPLTYPE is implied by DEPTH here
    }
    if (maxval != 255 || (depth != 3 && depth != 4)) {
      throw std::runtime_error("unsupported PAM layout in '" + path + "'");
    }
  } else {
    throw std::runtime_error("unsupported image format in '" + path + "' (PAM/PPM expected)");
  }

  if (image.w <= 0 || image.h <= 0) {
    throw std::runtime_error("bad dimensions in '" + path + "'");
  }
  file.get();  // single whitespace byte after the header

  const std::size_t pixels = static_cast<std::size_t>(image.w) * image.h;
  std::vector<std::uint8_t> raw(pixels * static_cast<std::size_t>(depth));
  file.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (static_cast<std::size_t>(file.gcount()) != raw.size()) {
    throw std::runtime_error("truncated pixel data in '" + path + "'");
  }

  image.rgba.resize(pixels * 4);
  for (std::size_t i = 0; i < pixels; ++i) {
    image.rgba[i * 4] = raw[i * depth];
    image.rgba[i * 4 + 1] = raw[i * depth + 1];
    image.rgba[i * 4 + 2] = raw[i * depth + 2];
    image.rgba[i * 4 + 3] = depth == 4 ? raw[i * depth + 3] : 255;
  }
  return image;
}

void write_pam(const Image& image, const std::string& path) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
  file << "P7\nWIDTH " << image.w << "\nHEIGHT " << image.h
       << "\nDEPTH 4\nMAXVAL 255\nTUPLTYPE RGB_ALPHA\nENDHDR\n";
  file.write(reinterpret_cast<const char*>(image.rgba.data()),
             static_cast<std::streamsize>(image.rgba.size()));
  if (!file) throw std::runtime_error("write failed for '" + path + "'");
}

std::uint64_t pixel_hash(const Image& image) {
  std::uint64_t h = 1469598103934665603ull;
  for (std::uint8_t byte : image.rgba) {
    h ^= byte;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hash_hex(std::uint64_t hash) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

}  // namespace slideanim
