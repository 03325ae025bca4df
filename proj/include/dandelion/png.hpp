#pragma once

#include <cstdint>
#include <cstring>
#include <vector>

#include <zlib.h>

#include "dandelion/errors.hpp"
#include "dandelion/raster.hpp"

namespace dandelion {

namespace detail {

inline void put_u32_be(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

inline void put_chunk(std::vector<std::uint8_t>& out, const char type[4],
                      const std::uint8_t* data, std::size_t len) {
  put_u32_be(out, static_cast<std::uint32_t>(len));
  std::size_t type_at = out.size();
  out.insert(out.end(), type, type + 4);
  if (len) out.insert(out.end(), data, data + len);
  uLong crc = crc32(0L, Z_NULL, 0);
  crc = crc32(crc, out.data() + type_at, static_cast<uInt>(4 + len));
  put_u32_be(out, static_cast<std::uint32_t>(crc));
}

}  // namespace detail

/// Encode as 8-bit RGBA truecolor-with-alpha PNG (filter type None on every
/// scanline, single IDAT). Lossless: decoding returns the input exactly.
inline std::vector<std::uint8_t> encode_png(const RasterImage& img) {
  if (img.width <= 0 || img.height <= 0) throw InvalidParams("image must have pixels");
  const std::size_t stride = static_cast<std::size_t>(img.width) * 4;
  if (img.pixels.size() != stride * static_cast<std::size_t>(img.height))
    throw InvalidParams("pixel buffer size does not match dimensions");

  // Raw stream: every scanline prefixed with its filter byte.
  std::vector<std::uint8_t> raw;
  raw.reserve((stride + 1) * img.height);
  for (int y = 0; y < img.height; ++y) {
    raw.push_back(0);  // filter: None
    const std::uint8_t* line = img.pixels.data() + static_cast<std::size_t>(y) * stride;
    raw.insert(raw.end(), line, line + stride);
  }
  uLongf zlen = compressBound(static_cast<uLong>(raw.size()));
  std::vector<std::uint8_t> z(zlen);
  if (compress2(z.data(), &zlen, raw.data(), static_cast<uLong>(raw.size()),
                Z_DEFAULT_COMPRESSION) != Z_OK)
    throw Error("deflate failed");
  z.resize(zlen);

  std::vector<std::uint8_t> out;
  out.reserve(z.size() + 128);
  static const std::uint8_t signature[8] = {0x89, 'P', 'N', 'G', 0x0D, 0x0A, 0x1A, 0x0A};
  out.insert(out.end(), signature, signature + 8);

  std::uint8_t ihdr[13];
  ihdr[0] = static_cast<std::uint8_t>(img.width >> 24);
  ihdr[1] = static_cast<std::uint8_t>(img.width >> 16);
  ihdr[2] = static_cast<std::uint8_t>(img.width >> 8);
  ihdr[3] = static_cast<std::uint8_t>(img.width);
  ihdr[4] = static_cast<std::uint8_t>(img.height >> 24);
  ihdr[5] = static_cast<std::uint8_t>(img.height >> 16);
  ihdr[6] = static_cast<std::uint8_t>(img.height >> 8);
  ihdr[7] = static_cast<std::uint8_t>(img.height);
  ihdr[8] = 8;   // bit depth
  ihdr[9] = 6;   // color type: truecolor with alpha
  ihdr[10] = 0;  // compression
  ihdr[11] = 0;  // filter method
  ihdr[12] = 0;  // no interlace
  detail::put_chunk(out, "IHDR", ihdr, sizeof(ihdr));
  detail::put_chunk(out, "IDAT", z.data(), z.size());
  detail::put_chunk(out, "IEND", nullptr, 0);
  return out;
}

}  // namespace dandelion
