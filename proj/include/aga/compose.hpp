#pragma once

#include "aga/image.hpp"

namespace aga {

struct CompositeOutput {
  ImageBuffer image;           // RGB8, background dimensions
  double foreground_coverage;  // fraction of pixels with alpha > 0
};

// Per pixel: out = alpha*fg + (1-alpha)*bg, rounded half to even per channel.
// Exact where alpha is 0 or 255, so binary-mask subjects composite with zero
// blending error; fractional alpha exists only at resampled subject edges.
// Blending happens in 8-bit sRGB without linearization.
CompositeOutput merge(const MaskedSubject& foreground, const ImageBuffer& background);

// Bilinear resize. Aspect mismatch is handled by center-cropping the source
// to the target aspect first, so outputs never letterbox. Identical
// dimensions pass bytes through unchanged.
ImageBuffer resize_background(const ImageBuffer& background, uint32_t target_width,
                              uint32_t target_height);

}  // namespace aga
