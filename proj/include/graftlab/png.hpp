#pragma once

#include "graftlab/figure.hpp"

#include <png.h>

#include <cstdio>
#include <string>

namespace graftlab::figure {

/// 8-bit RGB PNG. Throws IOError when the file cannot be written.
inline void write_png(const Raster& r, const std::string& path) {
  std::FILE* fp = std::fopen(path.c_str(), "wb");
  if (!fp) throw Error(Errc::IOError, "cannot open " + path + " for writing");
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info || setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    std::fclose(fp);
    throw Error(Errc::IOError, "libpng failed writing " + path);
  }
  png_init_io(png, fp);
  png_set_IHDR(png, info, static_cast<png_uint_32>(r.width), static_cast<png_uint_32>(r.height), 8, PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int y = 0; y < r.height; ++y) {
    png_write_row(png, const_cast<png_bytep>(&r.rgb[3 * static_cast<std::size_t>(y) * r.width]));
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  if (std::fclose(fp) != 0) throw Error(Errc::IOError, "cannot close " + path);
}

}  // namespace graftlab::figure
