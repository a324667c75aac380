#include "aga/compose.hpp"

#include <algorithm>
#include <cmath>

namespace aga {

CompositeOutput merge(const MaskedSubject& foreground, const ImageBuffer& background) {
  const ImageBuffer& fg = foreground.cutout;
  if (!fg.same_dims(background)) {
    fail(ErrorCode::DimensionMismatch, "foreground and background dimensions differ");
  }
  if (background.format() != PixelFormat::RGB8) {
    fail(ErrorCode::InvalidArgument, "background must be RGB8");
  }

  ImageBuffer out(background.width(), background.height(), PixelFormat::RGB8);
  size_t covered = 0;
  for (uint32_t y = 0; y < out.height(); ++y) {
    for (uint32_t x = 0; x < out.width(); ++x) {
      const uint8_t* f = fg.pixel(x, y);
      const uint8_t* b = background.pixel(x, y);
      uint8_t* o = out.pixel(x, y);
      const int alpha = f[3];
      if (alpha == 255) {
        o[0] = f[0];
        o[1] = f[1];
        o[2] = f[2];
        ++covered;
      } else if (alpha == 0) {
        o[0] = b[0];
        o[1] = b[1];
        o[2] = b[2];
      } else {
        for (int c = 0; c < 3; ++c) {
          const double v = (alpha * f[c] + (255 - alpha) * b[c]) / 255.0;
          o[c] = static_cast<uint8_t>(std::clamp(std::nearbyint(v), 0.0, 255.0));
        }
        ++covered;
      }
    }
  }
  return CompositeOutput{std::move(out),
                         static_cast<double>(covered) / background.pixel_count()};
}

namespace {

uint8_t sample_bilinear_clamped(const ImageBuffer& img, double sx, double sy, int channel) {
  const double xf = sx - 0.5;
  const double yf = sy - 0.5;
  int x0 = static_cast<int>(std::floor(xf));
  int y0 = static_cast<int>(std::floor(yf));
  const double fx = xf - x0;
  const double fy = yf - y0;
  const int w = static_cast<int>(img.width());
  const int h = static_cast<int>(img.height());
  const auto fetch = [&](int x, int y) {
    x = std::clamp(x, 0, w - 1);
    y = std::clamp(y, 0, h - 1);
    return static_cast<double>(
        img.pixel(static_cast<uint32_t>(x), static_cast<uint32_t>(y))[channel]);
  };
  const double top = (1.0 - fx) * fetch(x0, y0) + fx * fetch(x0 + 1, y0);
  const double bottom = (1.0 - fx) * fetch(x0, y0 + 1) + fx * fetch(x0 + 1, y0 + 1);
  const double v = (1.0 - fy) * top + fy * bottom;
  return static_cast<uint8_t>(std::clamp(std::nearbyint(v), 0.0, 255.0));
}

}  // namespace

ImageBuffer resize_background(const ImageBuffer& background, uint32_t target_width,
                              uint32_t target_height) {
  if (target_width == 0 || target_height == 0) {
    fail(ErrorCode::InvalidArgument, "target dimensions must be >= 1");
  }
  if (target_width == background.width() && target_height == background.height()) {
    return background;
  }

  // Central crop matching the target aspect, in source pixel-edge units.
  const double src_w = background.width();
  const double src_h = background.height();
  double crop_w = src_w;
  double crop_h = src_h;
  const double target_aspect = static_cast<double>(target_width) / target_height;
  if (src_w / src_h > target_aspect) {
    crop_w = src_h * target_aspect;
  } else {
    crop_h = src_w / target_aspect;
  }
  const double crop_x0 = (src_w - crop_w) / 2.0;
  const double crop_y0 = (src_h - crop_h) / 2.0;

  ImageBuffer out(target_width, target_height, background.format());
  const int channels = background.channels();
  for (uint32_t y = 0; y < target_height; ++y) {
    for (uint32_t x = 0; x < target_width; ++x) {
      const double sx = crop_x0 + (x + 0.5) * crop_w / target_width;
      const double sy = crop_y0 + (y + 0.5) * crop_h / target_height;
      uint8_t* dst = out.pixel(x, y);
      for (int c = 0; c < channels; ++c) {
        dst[c] = sample_bilinear_clamped(background, sx, sy, c);
      }
    }
  }
  return out;
}

}  // namespace aga
