#include "aga/image.hpp"

#include <limits>

namespace aga {

ImageBuffer::ImageBuffer(uint32_t width, uint32_t height, PixelFormat format)
    : width_(width), height_(height), format_(format) {
  if (width == 0 || height == 0) {
    fail(ErrorCode::InvalidArgument, "image dimensions must be >= 1");
  }
  data_.assign(pixel_count() * channels(), 0);
}

ImageBuffer::ImageBuffer(uint32_t width, uint32_t height, PixelFormat format,
                         std::vector<uint8_t> data)
    : width_(width), height_(height), format_(format), data_(std::move(data)) {
  if (width == 0 || height == 0) {
    fail(ErrorCode::InvalidArgument, "image dimensions must be >= 1");
  }
  if (data_.size() != pixel_count() * static_cast<size_t>(channels())) {
    fail(ErrorCode::InvalidArgument,
         "pixel data size does not match width * height * channels");
  }
}

SubjectMask::SubjectMask(uint32_t width, uint32_t height)
    : width_(width), height_(height) {
  if (width == 0 || height == 0) {
    fail(ErrorCode::InvalidArgument, "mask dimensions must be >= 1");
  }
  bits_.assign(static_cast<size_t>(width) * height, 0);
}

void SubjectMask::set(uint32_t x, uint32_t y, bool value) {
  uint8_t& bit = bits_[static_cast<size_t>(y) * width_ + x];
  set_count_ += static_cast<size_t>(value) - static_cast<size_t>(bit != 0);
  bit = value ? 1 : 0;
}

MaskedSubject cutout_subject(const ImageBuffer& image, const SubjectMask& mask) {
  if (image.width() != mask.width() || image.height() != mask.height()) {
    fail(ErrorCode::DimensionMismatch, "image and mask dimensions differ");
  }
  if (mask.empty()) {
    fail(ErrorCode::EmptyMask, "cutout requires a non-empty mask");
  }

  // RGB lives in channels 0..2 for both input formats; input alpha, if any,
  // is ignored in favor of the mask.
  ImageBuffer out(image.width(), image.height(), PixelFormat::RGBA8);
  for (uint32_t y = 0; y < image.height(); ++y) {
    for (uint32_t x = 0; x < image.width(); ++x) {
      if (!mask.get(x, y)) continue;  // stays canonical (0,0,0,0)
      const uint8_t* src = image.pixel(x, y);
      uint8_t* dst = out.pixel(x, y);
      dst[0] = src[0];
      dst[1] = src[1];
      dst[2] = src[2];
      dst[3] = 255;
    }
  }
  return MaskedSubject{std::move(out), mask, tight_bbox(mask)};
}

BoundingBox tight_bbox(const SubjectMask& mask) {
  if (mask.empty()) {
    fail(ErrorCode::EmptyMask, "tight_bbox requires a non-empty mask");
  }
  uint32_t min_x = std::numeric_limits<uint32_t>::max();
  uint32_t min_y = std::numeric_limits<uint32_t>::max();
  uint32_t max_x = 0;
  uint32_t max_y = 0;
  for (uint32_t y = 0; y < mask.height(); ++y) {
    for (uint32_t x = 0; x < mask.width(); ++x) {
      if (!mask.get(x, y)) continue;
      min_x = std::min(min_x, x);
      min_y = std::min(min_y, y);
      max_x = std::max(max_x, x);
      max_y = std::max(max_y, y);
    }
  }
  BoundingBox box;
  box.x_min = static_cast<double>(min_x) / mask.width();
  box.y_min = static_cast<double>(min_y) / mask.height();
  box.x_max = static_cast<double>(max_x + 1) / mask.width();
  box.y_max = static_cast<double>(max_y + 1) / mask.height();
  box.confidence = 1.0;
  return box;
}

SubjectMask mask_from_alpha(const ImageBuffer& rgba) {
  if (rgba.format() != PixelFormat::RGBA8) {
    fail(ErrorCode::InvalidArgument, "mask_from_alpha expects an RGBA8 image");
  }
  SubjectMask mask(rgba.width(), rgba.height());
  for (uint32_t y = 0; y < rgba.height(); ++y) {
    for (uint32_t x = 0; x < rgba.width(); ++x) {
      if (rgba.pixel(x, y)[3] > 0) mask.set(x, y, true);
    }
  }
  return mask;
}

}  // namespace aga
