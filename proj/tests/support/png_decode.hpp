#pragma once

// Minimal standalone PNG reader for tests: full chunk walk with CRC checks,
// zlib inflate, and all five scanline filters. Only 8-bit RGBA (color type 6,
// non-interlaced) images decode; anything else is a hard failure. Written
// from the published PNG format description, not from the library's encoder,
// so round-trip tests actually cross an independent implementation.

#include <cstdint>
#include <cstring>
#include <stdexcept>
#include <string>
#include <vector>

#include <zlib.h>

namespace testsupport {

struct DecodedPng {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::vector<std::uint8_t> rgba;  // row-major, 4 bytes per pixel
};

namespace detail {

inline std::uint32_t be32(const std::uint8_t* p) {
  return (std::uint32_t(p[0]) << 24) | (std::uint32_t(p[1]) << 16) | (std::uint32_t(p[2]) << 8) |
         std::uint32_t(p[3]);
}

inline std::uint8_t paeth(int a, int b, int c) {
  int p = a + b - c;
  int pa = std::abs(p - a), pb = std::abs(p - b), pc = std::abs(p - c);
  if (pa <= pb && pa <= pc) return static_cast<std::uint8_t>(a);
  if (pb <= pc) return static_cast<std::uint8_t>(b);
  return static_cast<std::uint8_t>(c);
}

}  // namespace detail

inline DecodedPng decode_png(const std::vector<std::uint8_t>& bytes) {
  static const std::uint8_t sig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'};
  if (bytes.size() < 8 || std::memcmp(bytes.data(), sig, 8) != 0)
    throw std::runtime_error("png: bad signature");

  DecodedPng out;
  std::vector<std::uint8_t> idat;
  bool saw_ihdr = false, saw_iend = false;
  std::size_t pos = 8;
  while (pos + 12 <= bytes.size() && !saw_iend) {
    std::uint32_t len = detail::be32(&bytes[pos]);
    if (pos + 12 + len > bytes.size()) throw std::runtime_error("png: truncated chunk");
    const std::uint8_t* type = &bytes[pos + 4];
    const std::uint8_t* data = &bytes[pos + 8];
    std::uint32_t want_crc = detail::be32(&bytes[pos + 8 + len]);
    uLong got_crc = crc32(0, type, 4);
    if (len) got_crc = crc32(got_crc, data, len);  // crc32(c, Z_NULL, 0) would reset, not pass through
    if (want_crc != static_cast<std::uint32_t>(got_crc))
      throw std::runtime_error("png: chunk crc mismatch");

    std::string name(reinterpret_cast<const char*>(type), 4);
    if (name == "IHDR") {
      if (len != 13) throw std::runtime_error("png: bad IHDR length");
      out.width = detail::be32(data);
      out.height = detail::be32(data + 4);
      if (data[8] != 8 || data[9] != 6) throw std::runtime_error("png: expected 8-bit RGBA");
      if (data[10] != 0 || data[11] != 0 || data[12] != 0)
        throw std::runtime_error("png: unsupported compression/filter/interlace");
      saw_ihdr = true;
    } else if (name == "IDAT") {
      idat.insert(idat.end(), data, data + len);
    } else if (name == "IEND") {
      saw_iend = true;
    }
    pos += 12 + len;
  }
  if (!saw_ihdr || !saw_iend) throw std::runtime_error("png: missing IHDR or IEND");
  if (out.width == 0 || out.height == 0) throw std::runtime_error("png: zero dimension");

  const std::size_t stride = std::size_t(out.width) * 4;
  std::vector<std::uint8_t> raw((stride + 1) * out.height);
  uLongf raw_len = raw.size();
  if (uncompress(raw.data(), &raw_len, idat.data(), idat.size()) != Z_OK ||
      raw_len != raw.size())
    throw std::runtime_error("png: inflate failed");

  out.rgba.resize(stride * out.height);
  std::vector<std::uint8_t> prev(stride, 0);
  for (std::uint32_t y = 0; y < out.height; ++y) {
    const std::uint8_t filter = raw[(stride + 1) * y];
    const std::uint8_t* src = &raw[(stride + 1) * y + 1];
    std::uint8_t* dst = &out.rgba[stride * y];
    for (std::size_t i = 0; i < stride; ++i) {
      const int a = i >= 4 ? dst[i - 4] : 0;          // left
      const int b = prev[i];                          // up
      const int c = i >= 4 ? prev[i - 4] : 0;         // upper-left
      int v = src[i];
      switch (filter) {
        case 0: break;
        case 1: v += a; break;
        case 2: v += b; break;
        case 3: v += (a + b) / 2; break;
        case 4: v += detail::paeth(a, b, c); break;
        default: throw std::runtime_error("png: unknown filter type");
      }
      dst[i] = static_cast<std::uint8_t>(v & 0xFF);
    }
    std::memcpy(prev.data(), dst, stride);
  }
  return out;
}

}  // namespace testsupport
