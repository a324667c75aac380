#pragma once

#include <cstdint>

#include "aga/image.hpp"
#include "aga/rng.hpp"

namespace aga {

enum class FlipMode : uint8_t { None, Horizontal, Vertical };

const char* to_string(FlipMode flip);

// The (f, theta, s) subject manipulation applied to a cutout before merging.
struct AffineParams {
  FlipMode flip = FlipMode::None;
  double rotation_deg = 0.0;  // [-180, 180)
  double scale = 1.0;         // (0, 4]

  void validate() const;
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

// 2x3 forward map: x' = a*x + b*y + c, y' = d*x + e*y + f.
//
// Sign convention: coordinates are pixel-edge units with y growing downward.
// rotate(theta) uses the matrix [cos -sin; sin cos], so positive theta turns
// the subject clockwise on screen. rotate(90) about the origin maps (x, y)
// to (-y, x), i.e. coefficients (0,-1,0, 1,0,0).
struct AffineMatrix {
  double a = 1.0, b = 0.0, c = 0.0;
  double d = 0.0, e = 1.0, f = 0.0;

  static AffineMatrix identity() { return {}; }

  Vec2 apply(Vec2 p) const {
    return {a * p.x + b * p.y + c, d * p.x + e * p.y + f};
  }

  double determinant() const { return a * e - b * d; }

  AffineMatrix inverse() const;
};

// lhs applied after rhs.
AffineMatrix compose(const AffineMatrix& lhs, const AffineMatrix& rhs);

// translate(center) * rotate(theta) * scale(s) * flip(f) * translate(-center).
// The pivot is the subject's tight-box center.
AffineMatrix to_matrix(const AffineParams& params, Vec2 center);

// Ranges for the orchestrator's random parameter draws. Vertical flip is
// excluded by default; upside-down subjects are semantically wrong for most
// datasets.
struct AffineRanges {
  double rotation_min_deg = -25.0;
  double rotation_max_deg = 25.0;
  double scale_min = 0.7;
  double scale_max = 1.3;
  bool allow_vflip = false;
};

// Draw order: flip coin (vflip, when allowed, replaces hflip on a second
// coin), rotation, scale.
AffineParams sample_affine_params(SeededRng& rng, const AffineRanges& ranges);

struct TransformedSubject {
  MaskedSubject subject;
  AffineParams effective;  // scale may be reduced by the shrink-to-fit clamp
};

// Resamples the cutout (RGBA, bilinear, inverse mapping) onto a canvas of the
// given size. When the canvas differs from the subject's frame the frame is
// stretched onto the canvas first, then the affine applies about the mapped
// tight-box center. If the requested scale would push the transformed tight
// box outside the canvas, scale shrinks to the largest fitting value and the
// effective parameters are returned. Output is canonical: RGB zeroed wherever
// alpha resampled to 0.
//
// placement_seed drives the optional random re-positioning of the subject
// (allow_translate); with translation off the seed is unused and the result
// depends only on (subject, params, canvas).
TransformedSubject apply_affine(const MaskedSubject& subject, const AffineParams& params,
                                uint32_t canvas_width, uint32_t canvas_height,
                                uint64_t placement_seed, bool allow_translate = false);

}  // namespace aga
