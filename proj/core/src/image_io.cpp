#include "neuroseg/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <csetjmp>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <memory>
#include <string>

#include "neuroseg/threshold.hpp"

namespace neuroseg {
namespace {

namespace fs = std::filesystem;

std::vector<std::uint8_t> read_file(const fs::path& path) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) {
    throw Error(ErrorCode::MissingFile, path.string());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
  }
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const fs::path& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::IoFailure, "cannot write " + path.string());
  }
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw Error(ErrorCode::IoFailure, "short write to " + path.string());
  }
}

bool has_extension(const fs::path& path, std::string_view ext) {
  std::string e = path.extension().string();
  std::transform(e.begin(), e.end(), e.begin(), [](unsigned char c) { return std::tolower(c); });
  return e == ext;
}

bool is_png(const std::vector<std::uint8_t>& bytes) {
  return bytes.size() >= 8 && png_sig_cmp(bytes.data(), 0, 8) == 0;
}

// ---------------------------------------------------------------- netpbm --

struct Netpbm {
  char kind;  // '5' gray or '6' rgb
  int width;
  int height;
  std::size_t data_offset;
};

Netpbm parse_netpbm_header(const std::vector<std::uint8_t>& bytes, const std::string& name) {
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '6')) {
    throw Error(ErrorCode::UnsupportedFormat, name + ": not a PNG, binary PGM or binary PPM");
  }
  std::size_t pos = 2;
  auto next_int = [&]() -> long {
    while (pos < bytes.size()) {
      if (bytes[pos] == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      } else if (std::isspace(bytes[pos])) {
        ++pos;
      } else {
        break;
      }
    }
    if (pos >= bytes.size() || !std::isdigit(bytes[pos])) {
      throw Error(ErrorCode::CorruptData, name + ": malformed netpbm header");
    }
    long v = 0;
    while (pos < bytes.size() && std::isdigit(bytes[pos])) {
      v = v * 10 + (bytes[pos] - '0');
      if (v > (1L << 30)) throw Error(ErrorCode::CorruptData, name + ": header value too large");
      ++pos;
    }
    return v;
  };
  const long w = next_int();
  const long h = next_int();
  const long maxval = next_int();
  if (pos >= bytes.size() || !std::isspace(bytes[pos])) {
    throw Error(ErrorCode::CorruptData, name + ": malformed netpbm header");
  }
  ++pos;
  if (w < 1 || h < 1) {
    throw Error(ErrorCode::CorruptData, name + ": zero-sized image");
  }
  if (maxval != 255) {
    throw Error(ErrorCode::UnsupportedFormat, name + ": only maxval 255 is supported");
  }
  return {static_cast<char>(bytes[1]), static_cast<int>(w), static_cast<int>(h), pos};
}

std::vector<std::uint8_t> netpbm_bytes(char kind, int w, int h, std::span<const std::uint8_t> pixels) {
  const std::string header = std::string("P") + kind + "\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), pixels.begin(), pixels.end());
  return out;
}

// ------------------------------------------------------------------- png --

struct PngDecoded {
  png_uint_32 width = 0;
  png_uint_32 height = 0;
  int bit_depth = 0;
  int color_type = 0;
  std::size_t rowbytes = 0;
  std::vector<std::uint8_t> pixels;
  std::vector<png_bytep> rows;
  std::string error;
};

struct MemReader {
  const std::vector<std::uint8_t>* bytes;
  std::size_t pos;
};

void png_mem_read(png_structp png, png_bytep out, png_size_t n) {
  auto* r = static_cast<MemReader*>(png_get_io_ptr(png));
  if (r->pos + n > r->bytes->size()) {
    png_error(png, "unexpected end of data");
  }
  std::copy_n(r->bytes->data() + r->pos, n, out);
  r->pos += n;
}

void png_on_error(png_structp png, png_const_charp msg) {
  auto* dec = static_cast<std::string*>(png_get_error_ptr(png));
  *dec = msg;
  png_longjmp(png, 1);
}

void png_on_warning(png_structp, png_const_charp) {}

// Only caller-owned state is touched between setjmp and longjmp.
bool decode_png(const std::vector<std::uint8_t>& bytes, PngDecoded& out, MemReader& reader) {
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &out.error, png_on_error, png_on_warning);
  if (png == nullptr) {
    out.error = "png_create_read_struct failed";
    return false;
  }
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    out.error = "png_create_info_struct failed";
    return false;
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    return false;
  }
  reader.bytes = &bytes;
  reader.pos = 0;
  png_set_read_fn(png, &reader, png_mem_read);
  png_read_info(png, info);
  out.width = png_get_image_width(png, info);
  out.height = png_get_image_height(png, info);
  out.color_type = png_get_color_type(png, info);
  out.bit_depth = png_get_bit_depth(png, info);
  if (out.color_type == PNG_COLOR_TYPE_PALETTE) {
    png_set_palette_to_rgb(png);
  }
  if (out.color_type == PNG_COLOR_TYPE_GRAY && out.bit_depth < 8) {
    png_set_expand_gray_1_2_4_to_8(png);
  }
  if (png_get_interlace_type(png, info) != PNG_INTERLACE_NONE) {
    png_set_interlace_handling(png);
  }
  png_read_update_info(png, info);
  out.color_type = png_get_color_type(png, info);
  out.bit_depth = png_get_bit_depth(png, info);
  out.rowbytes = png_get_rowbytes(png, info);
  out.pixels.resize(out.rowbytes * out.height);
  out.rows.resize(out.height);
  for (png_uint_32 y = 0; y < out.height; ++y) {
    out.rows[y] = out.pixels.data() + y * out.rowbytes;
  }
  png_read_image(png, out.rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return true;
}

PngDecoded read_png(const std::vector<std::uint8_t>& bytes, const std::string& name) {
  PngDecoded out;
  MemReader reader{};
  if (!decode_png(bytes, out, reader)) {
    throw Error(ErrorCode::CorruptData, name + ": " + out.error);
  }
  if (out.width < 1 || out.height < 1 || out.width > (1u << 30) || out.height > (1u << 30)) {
    throw Error(ErrorCode::CorruptData, name + ": bad dimensions");
  }
  return out;
}

int png_channels(int color_type) {
  switch (color_type) {
    case PNG_COLOR_TYPE_GRAY: return 1;
    case PNG_COLOR_TYPE_GRAY_ALPHA: return 2;
    case PNG_COLOR_TYPE_RGB: return 3;
    case PNG_COLOR_TYPE_RGB_ALPHA: return 4;
    default: return 0;
  }
}

struct PngEncodeJob {
  png_uint_32 width;
  png_uint_32 height;
  int bit_depth;
  int color_type;
  const std::uint8_t* data;  // rows packed, big-endian samples for 16-bit
  std::size_t rowbytes;
  std::vector<std::uint8_t> out;
  std::string error;
};

void png_mem_write(png_structp png, png_bytep data, png_size_t n) {
  auto* job = static_cast<PngEncodeJob*>(png_get_io_ptr(png));
  job->out.insert(job->out.end(), data, data + n);
}

void png_mem_flush(png_structp) {}

bool encode_png(PngEncodeJob& job) {
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &job.error, png_on_error, png_on_warning);
  if (png == nullptr) {
    job.error = "png_create_write_struct failed";
    return false;
  }
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_write_struct(&png, nullptr);
    job.error = "png_create_info_struct failed";
    return false;
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    return false;
  }
  png_set_write_fn(png, &job, png_mem_write, png_mem_flush);
  png_set_IHDR(png, info, job.width, job.height, job.bit_depth, job.color_type, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_set_compression_level(png, 3);
  png_write_info(png, info);
  for (png_uint_32 y = 0; y < job.height; ++y) {
    png_write_row(png, job.data + y * job.rowbytes);
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return true;
}

void write_png(const fs::path& path, int w, int h, int bit_depth, int color_type, std::span<const std::uint8_t> data) {
  PngEncodeJob job{static_cast<png_uint_32>(w),
                   static_cast<png_uint_32>(h),
                   bit_depth,
                   color_type,
                   data.data(),
                   data.size() / static_cast<std::size_t>(h),
                   {},
                   {}};
  if (!encode_png(job)) {
    throw Error(ErrorCode::IoFailure, path.string() + ": " + job.error);
  }
  write_file(path, job.out);
}

}  // namespace

GrayImage load_image(const fs::path& path, LoadOptions opts) {
  const auto bytes = read_file(path);
  const std::string name = path.string();
  if (!is_png(bytes)) {
    const Netpbm hdr = parse_netpbm_header(bytes, name);
    const std::size_t channels = hdr.kind == '5' ? 1 : 3;
    const std::size_t n = static_cast<std::size_t>(hdr.width) * static_cast<std::size_t>(hdr.height);
    if (bytes.size() - hdr.data_offset < n * channels) {
      throw Error(ErrorCode::CorruptData, name + ": truncated pixel data");
    }
    if (channels == 1) {
      return GrayImage(hdr.width, hdr.height,
                       std::vector<std::uint8_t>(bytes.begin() + static_cast<std::ptrdiff_t>(hdr.data_offset),
                                                 bytes.begin() + static_cast<std::ptrdiff_t>(hdr.data_offset + n)));
    }
    if (!opts.convert_to_luma) {
      throw Error(ErrorCode::UnsupportedFormat, name + ": multi-channel image (pass the luma conversion flag)");
    }
    return to_luma(load_rgb(path));
  }
  const PngDecoded png = read_png(bytes, name);
  if (png.bit_depth != 8) {
    throw Error(ErrorCode::UnsupportedFormat, name + ": only 8-bit PNG is supported");
  }
  const int channels = png_channels(png.color_type);
  if (channels == 1) {
    GrayImage img(static_cast<int>(png.width), static_cast<int>(png.height));
    for (png_uint_32 y = 0; y < png.height; ++y) {
      std::copy_n(png.rows[y], png.width, img.data().begin() + static_cast<std::ptrdiff_t>(y * png.width));
    }
    return img;
  }
  if (!opts.convert_to_luma) {
    throw Error(ErrorCode::UnsupportedFormat, name + ": multi-channel image (pass the luma conversion flag)");
  }
  return to_luma(load_rgb(path));
}

void save_image(const GrayImage& img, const fs::path& path) {
  if (has_extension(path, ".pgm")) {
    write_file(path, netpbm_bytes('5', img.width(), img.height(), img.data()));
    return;
  }
  write_png(path, img.width(), img.height(), 8, PNG_COLOR_TYPE_GRAY, img.data());
}

void save_image(const BinaryMask& mask, const fs::path& path) { save_image(mask.to_gray(), path); }

BinaryMask load_mask(const fs::path& path, PositiveClass positive) {
  return mask_from_gray(load_image(path), positive);
}

RgbImage load_rgb(const fs::path& path) {
  const auto bytes = read_file(path);
  const std::string name = path.string();
  if (!is_png(bytes)) {
    const Netpbm hdr = parse_netpbm_header(bytes, name);
    const std::size_t channels = hdr.kind == '5' ? 1 : 3;
    const std::size_t n = static_cast<std::size_t>(hdr.width) * static_cast<std::size_t>(hdr.height);
    if (bytes.size() - hdr.data_offset < n * channels) {
      throw Error(ErrorCode::CorruptData, name + ": truncated pixel data");
    }
    RgbImage img(hdr.width, hdr.height);
    const std::uint8_t* p = bytes.data() + hdr.data_offset;
    for (std::size_t i = 0; i < n; ++i) {
      img[i] = channels == 1 ? Rgb{p[i], p[i], p[i]} : Rgb{p[3 * i], p[3 * i + 1], p[3 * i + 2]};
    }
    return img;
  }
  const PngDecoded png = read_png(bytes, name);
  if (png.bit_depth != 8) {
    throw Error(ErrorCode::UnsupportedFormat, name + ": only 8-bit PNG is supported");
  }
  const int channels = png_channels(png.color_type);
  if (channels == 0) {
    throw Error(ErrorCode::UnsupportedFormat, name + ": unsupported PNG color type");
  }
  RgbImage img(static_cast<int>(png.width), static_cast<int>(png.height));
  for (png_uint_32 y = 0; y < png.height; ++y) {
    const std::uint8_t* row = png.rows[y];
    for (png_uint_32 x = 0; x < png.width; ++x) {
      const std::uint8_t* px = row + static_cast<std::size_t>(x) * static_cast<std::size_t>(channels);
      img(static_cast<int>(x), static_cast<int>(y)) = channels < 3 ? Rgb{px[0], px[0], px[0]} : Rgb{px[0], px[1], px[2]};
    }
  }
  return img;
}

void save_rgb(const RgbImage& img, const fs::path& path) {
  std::vector<std::uint8_t> packed;
  packed.reserve(img.size() * 3);
  for (const Rgb& px : img.data()) {
    packed.push_back(px.r);
    packed.push_back(px.g);
    packed.push_back(px.b);
  }
  if (has_extension(path, ".ppm")) {
    write_file(path, netpbm_bytes('6', img.width(), img.height(), packed));
    return;
  }
  write_png(path, img.width(), img.height(), 8, PNG_COLOR_TYPE_RGB, packed);
}

void save_labels(const LabelImage& labels, const fs::path& path) {
  std::vector<std::uint8_t> packed;
  packed.reserve(labels.size() * 2);
  for (const std::uint32_t id : labels.data()) {
    if (id > 0xFFFF) {
      throw Error(ErrorCode::InvalidArgument, "label id " + std::to_string(id) + " does not fit a 16-bit PNG");
    }
    packed.push_back(static_cast<std::uint8_t>(id >> 8));
    packed.push_back(static_cast<std::uint8_t>(id & 0xFF));
  }
  write_png(path, labels.width(), labels.height(), 16, PNG_COLOR_TYPE_GRAY, packed);
}

LabelImage load_labels(const fs::path& path) {
  const auto bytes = read_file(path);
  const std::string name = path.string();
  if (!is_png(bytes)) {
    throw Error(ErrorCode::UnsupportedFormat, name + ": label rasters must be PNG");
  }
  const PngDecoded png = read_png(bytes, name);
  if (png.color_type != PNG_COLOR_TYPE_GRAY) {
    throw Error(ErrorCode::UnsupportedFormat, name + ": label rasters must be single-channel");
  }
  LabelImage labels(static_cast<int>(png.width), static_cast<int>(png.height));
  for (png_uint_32 y = 0; y < png.height; ++y) {
    const std::uint8_t* row = png.rows[y];
    for (png_uint_32 x = 0; x < png.width; ++x) {
      labels(static_cast<int>(x), static_cast<int>(y)) =
          png.bit_depth == 16 ? static_cast<std::uint32_t>((row[2 * x] << 8) | row[2 * x + 1]) : row[x];
    }
  }
  return labels;
}

}  // namespace neuroseg
