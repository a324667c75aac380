#include "aga/image_io.hpp"

#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>

#include <jpeglib.h>
#include <png.h>

namespace aga {

namespace {

struct MemoryReader {
  const uint8_t* data;
  size_t size;
  size_t offset;
};

void png_read_from_memory(png_structp png, png_bytep out, png_size_t count) {
  auto* reader = static_cast<MemoryReader*>(png_get_io_ptr(png));
  if (reader->offset + count > reader->size) {
    png_error(png, "read past end of PNG buffer");
  }
  std::memcpy(out, reader->data + reader->offset, count);
  reader->offset += count;
}

void png_write_to_vector(png_structp png, png_bytep data, png_size_t count) {
  auto* out = static_cast<std::vector<uint8_t>*>(png_get_io_ptr(png));
  out->insert(out->end(), data, data + count);
}

void png_flush_noop(png_structp) {}

}  // namespace

std::vector<uint8_t> encode_png(const ImageBuffer& image) {
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) fail(ErrorCode::FatalIOError, "png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    fail(ErrorCode::FatalIOError, "png_create_info_struct failed");
  }

  std::vector<uint8_t> out;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    fail(ErrorCode::FatalIOError, "PNG encoding failed");
  }

  png_set_write_fn(png, &out, png_write_to_vector, png_flush_noop);
  // pinned encoder settings: see header
  png_set_compression_level(png, 6);
  png_set_filter(png, 0, PNG_FILTER_NONE);
  png_set_IHDR(png, info, image.width(), image.height(), 8,
               image.format() == PixelFormat::RGBA8 ? PNG_COLOR_TYPE_RGBA
                                                    : PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);

  const size_t stride = static_cast<size_t>(image.width()) * image.channels();
  for (uint32_t y = 0; y < image.height(); ++y) {
    png_write_row(png, const_cast<png_bytep>(image.data().data() + y * stride));
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return out;
}

ImageBuffer decode_png(const uint8_t* bytes, size_t size) {
  if (size < 8 || png_sig_cmp(bytes, 0, 8) != 0) {
    fail(ErrorCode::DecodeError, "not a PNG stream");
  }
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) fail(ErrorCode::FatalIOError, "png_create_read_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    fail(ErrorCode::FatalIOError, "png_create_info_struct failed");
  }

  MemoryReader reader{bytes, size, 0};
  std::vector<uint8_t> pixels;
  uint32_t width = 0;
  uint32_t height = 0;
  int channels = 0;

  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    fail(ErrorCode::DecodeError, "PNG decoding failed");
  }

  png_set_read_fn(png, &reader, png_read_from_memory);
  png_read_info(png, info);

  width = png_get_image_width(png, info);
  height = png_get_image_height(png, info);
  const int color_type = png_get_color_type(png, info);
  const int bit_depth = png_get_bit_depth(png, info);

  if (bit_depth == 16) png_set_strip_16(png);
  if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  if (color_type == PNG_COLOR_TYPE_GRAY || color_type == PNG_COLOR_TYPE_GRAY_ALPHA) {
    png_set_gray_to_rgb(png);
  }
  png_read_update_info(png, info);

  channels = png_get_channels(png, info);
  if (channels != 3 && channels != 4) {
    png_destroy_read_struct(&png, &info, nullptr);
    fail(ErrorCode::DecodeError, "unsupported PNG channel layout");
  }

  pixels.resize(static_cast<size_t>(width) * height * channels);
  const size_t stride = static_cast<size_t>(width) * channels;
  for (uint32_t y = 0; y < height; ++y) {
    png_read_row(png, pixels.data() + y * stride, nullptr);
  }
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  return ImageBuffer(width, height,
                     channels == 4 ? PixelFormat::RGBA8 : PixelFormat::RGB8,
                     std::move(pixels));
}

namespace {

struct JpegErrorMgr {
  jpeg_error_mgr pub;
  jmp_buf jump;
};

void jpeg_error_exit(j_common_ptr cinfo) {
  auto* err = reinterpret_cast<JpegErrorMgr*>(cinfo->err);
  longjmp(err->jump, 1);
}

}  // namespace

ImageBuffer decode_jpeg(const uint8_t* bytes, size_t size) {
  jpeg_decompress_struct cinfo;
  JpegErrorMgr err;
  cinfo.err = jpeg_std_error(&err.pub);
  err.pub.error_exit = jpeg_error_exit;
  if (setjmp(err.jump)) {
    jpeg_destroy_decompress(&cinfo);
    fail(ErrorCode::DecodeError, "JPEG decoding failed");
  }

  jpeg_create_decompress(&cinfo);
  jpeg_mem_src(&cinfo, const_cast<unsigned char*>(bytes), static_cast<unsigned long>(size));
  jpeg_read_header(&cinfo, TRUE);
  cinfo.out_color_space = JCS_RGB;
  jpeg_start_decompress(&cinfo);

  const uint32_t width = cinfo.output_width;
  const uint32_t height = cinfo.output_height;
  std::vector<uint8_t> pixels(static_cast<size_t>(width) * height * 3);
  const size_t stride = static_cast<size_t>(width) * 3;
  while (cinfo.output_scanline < height) {
    uint8_t* row = pixels.data() + cinfo.output_scanline * stride;
    jpeg_read_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);

  return ImageBuffer(width, height, PixelFormat::RGB8, std::move(pixels));
}

ImageBuffer load_image(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    fail(ErrorCode::FatalIOError, "cannot open image file " + path.string());
  }
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
  if (bytes.size() >= 8 && png_sig_cmp(bytes.data(), 0, 8) == 0) {
    return decode_png(bytes.data(), bytes.size());
  }
  if (bytes.size() >= 2 && bytes[0] == 0xFF && bytes[1] == 0xD8) {
    return decode_jpeg(bytes.data(), bytes.size());
  }
  fail(ErrorCode::DecodeError, "unrecognized image format in " + path.string());
}

void save_png(const std::filesystem::path& path, const ImageBuffer& image) {
  const std::vector<uint8_t> bytes = encode_png(image);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    fail(ErrorCode::FatalIOError, "cannot open output file " + path.string());
  }
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    fail(ErrorCode::FatalIOError, "short write to " + path.string());
  }
}

ImageBuffer mask_to_image(const SubjectMask& mask) {
  ImageBuffer out(mask.width(), mask.height(), PixelFormat::RGB8);
  for (uint32_t y = 0; y < mask.height(); ++y) {
    for (uint32_t x = 0; x < mask.width(); ++x) {
      if (!mask.get(x, y)) continue;
      uint8_t* p = out.pixel(x, y);
      p[0] = p[1] = p[2] = 255;
    }
  }
  return out;
}

}  // namespace aga
