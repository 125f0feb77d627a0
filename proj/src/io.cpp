#include "shadowdecomp/io.hpp"

#include <png.h>

#include <cmath>
#include <cstdio>
#include <memory>
#include <vector>

namespace shadowdecomp {

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

struct Decoded {
  Eigen::Index width = 0;
  Eigen::Index height = 0;
  int channels = 0;          // 1 = gray, 3 = rgb (alpha already stripped)
  std::vector<double> data;  // row-major, interleaved, normalized to [0,1]
};

Decoded decode_png(const std::string& path) {
  FilePtr fp(std::fopen(path.c_str(), "rb"));
  if (!fp) throw IoError("cannot open file: " + path);

  png_byte header[8];
  if (std::fread(header, 1, 8, fp.get()) != 8 || png_sig_cmp(header, 0, 8))
    throw IoError("not a PNG file: " + path);

  png_structp png =
      png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw IoError("libpng initialization failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw IoError("PNG decode error: " + path);
  }
  png_init_io(png, fp.get());
  png_set_sig_bytes(png, 8);
  png_read_info(png, info);

  const png_uint_32 w = png_get_image_width(png, info);
  const png_uint_32 h = png_get_image_height(png, info);
  const int depth = png_get_bit_depth(png, info);
  const int color = png_get_color_type(png, info);
  if (w == 0 || h == 0) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw IoError("zero-sized image: " + path);
  }

  // Normalize to 8- or 16-bit gray or RGB samples.
  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  png_set_strip_alpha(png);
  if (depth == 16) png_set_swap(png);  // little-endian in memory
  png_read_update_info(png, info);

  const int out_depth = png_get_bit_depth(png, info);
  const int out_channels = int(png_get_channels(png, info));
  if (out_depth != 8 && out_depth != 16) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw IoError("unsupported bit depth in " + path);
  }
  if (out_channels != 1 && out_channels != 3) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw IoError("unsupported color type in " + path);
  }

  const std::size_t rowbytes = png_get_rowbytes(png, info);
  std::vector<png_byte> raw(rowbytes * h);
  std::vector<png_bytep> rows(h);
  for (png_uint_32 y = 0; y < h; ++y) rows[y] = raw.data() + y * rowbytes;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  Decoded out;
  out.width = Eigen::Index(w);
  out.height = Eigen::Index(h);
  out.channels = out_channels;
  out.data.resize(std::size_t(w) * h * out_channels);
  const double scale = out_depth == 8 ? 255.0 : 65535.0;
  std::size_t idx = 0;
  for (png_uint_32 y = 0; y < h; ++y) {
    if (out_depth == 8) {
      const png_byte* row = rows[y];
      for (std::size_t i = 0; i < std::size_t(w) * out_channels; ++i)
        out.data[idx++] = row[i] / scale;
    } else {
      const auto* row = reinterpret_cast<const std::uint16_t*>(rows[y]);
      for (std::size_t i = 0; i < std::size_t(w) * out_channels; ++i)
        out.data[idx++] = row[i] / scale;
    }
  }
  return out;
}

void encode_png(const std::string& path, Eigen::Index width, Eigen::Index height,
                int channels, int depth, const std::vector<double>& data) {
  FilePtr fp(std::fopen(path.c_str(), "wb"));
  if (!fp) throw IoError("cannot write file: " + path);

  png_structp png =
      png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_write_struct(&png, &info);
    throw IoError("libpng initialization failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw IoError("PNG encode error: " + path);
  }
  png_init_io(png, fp.get());
  png_set_IHDR(png, info, png_uint_32(width), png_uint_32(height), depth,
               channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  if (depth == 16) png_set_swap(png);

  const double maxval = depth == 8 ? 255.0 : 65535.0;
  const std::size_t samples_per_row = std::size_t(width) * channels;
  std::vector<png_byte> row8(depth == 8 ? samples_per_row : 0);
  std::vector<std::uint16_t> row16(depth == 16 ? samples_per_row : 0);
  for (Eigen::Index y = 0; y < height; ++y) {
    const double* src = data.data() + std::size_t(y) * samples_per_row;
    if (depth == 8) {
      for (std::size_t i = 0; i < samples_per_row; ++i)
        row8[i] = png_byte(std::floor(src[i] * maxval + 0.5));
      png_write_row(png, row8.data());
    } else {
      for (std::size_t i = 0; i < samples_per_row; ++i)
        row16[i] = std::uint16_t(std::floor(src[i] * maxval + 0.5));
      png_write_row(png, reinterpret_cast<png_bytep>(row16.data()));
    }
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

GrayImage gray_from(const Decoded& d) {
  GrayImage img(d.height, d.width);
  for (Eigen::Index y = 0; y < d.height; ++y)
    for (Eigen::Index x = 0; x < d.width; ++x) {
      const std::size_t base = (std::size_t(y) * d.width + x) * d.channels;
      if (d.channels == 1) {
        img(y, x) = d.data[base];
      } else {
        // Color input requested as gray: average the channels.
        img(y, x) = (d.data[base] + d.data[base + 1] + d.data[base + 2]) / 3.0;
      }
    }
  return img;
}

}  // namespace

Image load_image(const std::string& path) {
  const Decoded d = decode_png(path);
  Image img(d.height, d.width);
  for (Eigen::Index y = 0; y < d.height; ++y)
    for (Eigen::Index x = 0; x < d.width; ++x) {
      const std::size_t base = (std::size_t(y) * d.width + x) * d.channels;
      for (int c = 0; c < 3; ++c)
        img.ch[c](y, x) = d.channels == 1 ? d.data[base] : d.data[base + c];
    }
  return img;
}

GrayImage load_gray(const std::string& path) { return gray_from(decode_png(path)); }

void save_image(const Image& img, const std::string& path, int depth) {
  if (depth != 8 && depth != 16) throw IoError("save_image: depth must be 8 or 16");
  std::vector<double> data(std::size_t(img.rows()) * img.cols() * 3);
  std::size_t i = 0;
  for (Eigen::Index y = 0; y < img.rows(); ++y)
    for (Eigen::Index x = 0; x < img.cols(); ++x)
      for (int c = 0; c < 3; ++c) data[i++] = img.ch[c](y, x);
  encode_png(path, img.cols(), img.rows(), 3, depth, data);
}

void save_gray(const GrayImage& img, const std::string& path, int depth) {
  if (depth != 8 && depth != 16) throw IoError("save_gray: depth must be 8 or 16");
  std::vector<double> data(std::size_t(img.rows()) * img.cols());
  std::size_t i = 0;
  for (Eigen::Index y = 0; y < img.rows(); ++y)
    for (Eigen::Index x = 0; x < img.cols(); ++x) data[i++] = img(y, x);
  encode_png(path, img.cols(), img.rows(), 1, depth, data);
}

Mask load_mask(const std::string& path) {
  const GrayImage g = load_gray(path);
  return g > 0.5;
}

void save_mask(const Mask& mask, const std::string& path) {
  save_gray(mask.cast<double>(), path, 8);
}

Matte load_matte(const std::string& path) { return load_gray(path); }

void save_matte(const Matte& matte, const std::string& path) {
  save_gray(matte, path, 16);
}

}  // namespace shadowdecomp
