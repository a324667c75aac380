#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "aga/error.hpp"

namespace aga {

enum class PixelFormat : uint8_t { RGB8 = 3, RGBA8 = 4 };

inline int channel_count(PixelFormat format) { return static_cast<int>(format); }

// Owned row-major 8-bit raster. Once built it is treated as immutable and is
// safe to share by const reference across worker threads.
class ImageBuffer {
 public:
  ImageBuffer(uint32_t width, uint32_t height, PixelFormat format);
  ImageBuffer(uint32_t width, uint32_t height, PixelFormat format, std::vector<uint8_t> data);

  uint32_t width() const { return width_; }
  uint32_t height() const { return height_; }
  PixelFormat format() const { return format_; }
  int channels() const { return channel_count(format_); }
  size_t pixel_count() const { return static_cast<size_t>(width_) * height_; }

  const uint8_t* pixel(uint32_t x, uint32_t y) const {
    return data_.data() + (static_cast<size_t>(y) * width_ + x) * channels();
  }
  uint8_t* pixel(uint32_t x, uint32_t y) {
    return data_.data() + (static_cast<size_t>(y) * width_ + x) * channels();
  }

  const std::vector<uint8_t>& data() const { return data_; }
  std::vector<uint8_t>& data() { return data_; }

  bool same_dims(const ImageBuffer& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }

 private:
  uint32_t width_;
  uint32_t height_;
  PixelFormat format_;
  std::vector<uint8_t> data_;
};

// Axis-aligned box in normalized coordinates with the pixel-edge convention:
// pixel i of a W-wide image spans [i/W, (i+1)/W). A full-image box is exactly
// (0,0,1,1).
struct BoundingBox {
  double x_min = 0.0;
  double y_min = 0.0;
  double x_max = 0.0;
  double y_max = 0.0;
  double confidence = 0.0;

  bool valid() const {
    return 0.0 <= x_min && x_min < x_max && x_max <= 1.0 &&
           0.0 <= y_min && y_min < y_max && y_max <= 1.0 &&
           0.0 <= confidence && confidence <= 1.0;
  }
};

// Per-pixel binary mask aligned to an image. An all-clear mask is never a
// valid operand; operations consuming masks reject it.
class SubjectMask {
 public:
  SubjectMask(uint32_t width, uint32_t height);

  uint32_t width() const { return width_; }
  uint32_t height() const { return height_; }

  bool get(uint32_t x, uint32_t y) const {
    return bits_[static_cast<size_t>(y) * width_ + x] != 0;
  }
  void set(uint32_t x, uint32_t y, bool value);

  size_t popcount() const { return set_count_; }
  bool empty() const { return set_count_ == 0; }
  size_t size() const { return bits_.size(); }

  const std::vector<uint8_t>& bits() const { return bits_; }

  bool operator==(const SubjectMask& other) const {
    return width_ == other.width_ && height_ == other.height_ && bits_ == other.bits_;
  }

 private:
  uint32_t width_;
  uint32_t height_;
  size_t set_count_ = 0;
  std::vector<uint8_t> bits_;  // one byte per pixel, 0 or 1
};

struct ClassLabel {
  std::string fine_name;
  std::string superclass;  // detection text prompt, from the hierarchy table
};

// RGBA cutout of one subject in canonical form: alpha is 255 inside the mask
// and 0 outside, and every alpha-0 pixel has RGB (0,0,0). Canonical form makes
// downstream comparisons and hashing byte-exact. Fractional alpha appears only
// after affine resampling.
struct MaskedSubject {
  ImageBuffer cutout;
  SubjectMask mask;
  BoundingBox source_box;
};

// Combines an image with a segmentation mask: RGB is copied inside the mask
// and zeroed outside, alpha mirrors the mask bits. Accepts RGB8 or RGBA8
// input (the latter makes the operation idempotent on canonical cutouts).
MaskedSubject cutout_subject(const ImageBuffer& image, const SubjectMask& mask);

// Minimal normalized box containing every set bit; confidence 1.
BoundingBox tight_bbox(const SubjectMask& mask);

// Mask of pixels with alpha > 0. Input must be RGBA8.
SubjectMask mask_from_alpha(const ImageBuffer& rgba);

}  // namespace aga
