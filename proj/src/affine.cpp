#include "aga/affine.hpp"

#include <algorithm>
#include <cmath>

namespace aga {

const char* to_string(FlipMode flip) {
  switch (flip) {
    case FlipMode::None: return "none";
    case FlipMode::Horizontal: return "horizontal";
    case FlipMode::Vertical: return "vertical";
  }
  return "none";
}

void AffineParams::validate() const {
  if (!(rotation_deg >= -180.0 && rotation_deg < 180.0)) {
    fail(ErrorCode::InvalidArgument, "rotation must lie in [-180, 180)");
  }
  if (!(scale > 0.0 && scale <= 4.0)) {
    fail(ErrorCode::InvalidArgument, "scale must lie in (0, 4]");
  }
}

AffineMatrix AffineMatrix::inverse() const {
  const double det = determinant();
  if (det == 0.0) {
    fail(ErrorCode::InvalidArgument, "affine matrix is singular");
  }
  AffineMatrix inv;
  inv.a = e / det;
  inv.b = -b / det;
  inv.d = -d / det;
  inv.e = a / det;
  inv.c = -(inv.a * c + inv.b * f);
  inv.f = -(inv.d * c + inv.e * f);
  return inv;
}

AffineMatrix compose(const AffineMatrix& lhs, const AffineMatrix& rhs) {
  AffineMatrix m;
  m.a = lhs.a * rhs.a + lhs.b * rhs.d;
  m.b = lhs.a * rhs.b + lhs.b * rhs.e;
  m.c = lhs.a * rhs.c + lhs.b * rhs.f + lhs.c;
  m.d = lhs.d * rhs.a + lhs.e * rhs.d;
  m.e = lhs.d * rhs.b + lhs.e * rhs.e;
  m.f = lhs.d * rhs.c + lhs.e * rhs.f + lhs.f;
  return m;
}

namespace {

AffineMatrix translation(double tx, double ty) {
  AffineMatrix m;
  m.c = tx;
  m.f = ty;
  return m;
}

AffineMatrix rotation_deg_matrix(double degrees) {
  const double rad = degrees * (M_PI / 180.0);
  AffineMatrix m;
  m.a = std::cos(rad);
  m.b = -std::sin(rad);
  m.d = std::sin(rad);
  m.e = std::cos(rad);
  // keep the zero-rotation path exactly the identity
  if (degrees == 0.0) {
    m.a = 1.0;
    m.b = 0.0;
    m.d = 0.0;
    m.e = 1.0;
  }
  return m;
}

AffineMatrix scale_matrix(double sx, double sy) {
  AffineMatrix m;
  m.a = sx;
  m.e = sy;
  return m;
}

AffineMatrix flip_matrix(FlipMode flip) {
  switch (flip) {
    case FlipMode::None: return AffineMatrix::identity();
    case FlipMode::Horizontal: return scale_matrix(-1.0, 1.0);
    case FlipMode::Vertical: return scale_matrix(1.0, -1.0);
  }
  return AffineMatrix::identity();
}

}  // namespace

AffineMatrix to_matrix(const AffineParams& params, Vec2 center) {
  params.validate();
  AffineMatrix m = compose(flip_matrix(params.flip), translation(-center.x, -center.y));
  m = compose(scale_matrix(params.scale, params.scale), m);
  m = compose(rotation_deg_matrix(params.rotation_deg), m);
  m = compose(translation(center.x, center.y), m);
  return m;
}

AffineParams sample_affine_params(SeededRng& rng, const AffineRanges& ranges) {
  AffineParams params;
  if (ranges.allow_vflip) {
    switch (rng.uniform_index(3)) {
      case 0: params.flip = FlipMode::None; break;
      case 1: params.flip = FlipMode::Horizontal; break;
      default: params.flip = FlipMode::Vertical; break;
    }
  } else {
    params.flip = rng.coin() ? FlipMode::Horizontal : FlipMode::None;
  }
  params.rotation_deg = rng.uniform_real(ranges.rotation_min_deg, ranges.rotation_max_deg);
  params.scale = rng.uniform_real(ranges.scale_min, ranges.scale_max);
  return params;
}

namespace {

struct BoxPx {
  double x0, y0, x1, y1;  // pixel-edge coordinates
  double cx() const { return (x0 + x1) / 2.0; }
  double cy() const { return (y0 + y1) / 2.0; }
  double half_w() const { return (x1 - x0) / 2.0; }
  double half_h() const { return (y1 - y0) / 2.0; }
};

BoxPx denormalize(const BoundingBox& box, uint32_t width, uint32_t height) {
  return BoxPx{box.x_min * width, box.y_min * height, box.x_max * width, box.y_max * height};
}

// Half-extents of the transformed tight box about its (fixed) center; the
// images of a centered rectangle's corners come in +- pairs, so two corners
// suffice.
Vec2 transformed_half_extents(const AffineMatrix& m, double half_w, double half_h) {
  const Vec2 c1{m.a * half_w + m.b * half_h, m.d * half_w + m.e * half_h};
  const Vec2 c2{m.a * half_w - m.b * half_h, m.d * half_w - m.e * half_h};
  return {std::max(std::fabs(c1.x), std::fabs(c2.x)),
          std::max(std::fabs(c1.y), std::fabs(c2.y))};
}

uint8_t round_half_even_to_byte(double v) {
  const double r = std::nearbyint(v);  // default FP environment: ties to even
  return static_cast<uint8_t>(std::clamp(r, 0.0, 255.0));
}

}  // namespace

TransformedSubject apply_affine(const MaskedSubject& subject, const AffineParams& params,
                                uint32_t canvas_width, uint32_t canvas_height,
                                uint64_t placement_seed, bool allow_translate) {
  params.validate();
  if (canvas_width == 0 || canvas_height == 0) {
    fail(ErrorCode::InvalidArgument, "canvas dimensions must be >= 1");
  }

  const ImageBuffer& src = subject.cutout;
  const double stretch_x = static_cast<double>(canvas_width) / src.width();
  const double stretch_y = static_cast<double>(canvas_height) / src.height();
  const AffineMatrix prescale = scale_matrix(stretch_x, stretch_y);

  const BoxPx box = denormalize(subject.source_box, src.width(), src.height());
  const Vec2 center{box.cx() * stretch_x, box.cy() * stretch_y};
  const double half_w = box.half_w() * stretch_x;
  const double half_h = box.half_h() * stretch_y;

  // Shrink-to-fit: extents grow linearly in scale about the fixed pivot, so
  // the largest fitting scale follows from the unit-scale extents.
  AffineParams unit = params;
  unit.scale = 1.0;
  const AffineMatrix at_unit = to_matrix(unit, center);
  const Vec2 unit_extent = transformed_half_extents(at_unit, half_w, half_h);
  double fit = params.scale;
  fit = std::min(fit, center.x / unit_extent.x);
  fit = std::min(fit, (canvas_width - center.x) / unit_extent.x);
  fit = std::min(fit, center.y / unit_extent.y);
  fit = std::min(fit, (canvas_height - center.y) / unit_extent.y);

  AffineParams effective = params;
  effective.scale = fit;

  AffineMatrix forward = compose(to_matrix(effective, center), prescale);

  if (allow_translate) {
    const double ex = unit_extent.x * fit;
    const double ey = unit_extent.y * fit;
    SeededRng rng(placement_seed);
    const double new_cx = rng.uniform_real(ex, canvas_width - ex);
    const double new_cy = rng.uniform_real(ey, canvas_height - ey);
    forward = compose(translation(new_cx - center.x, new_cy - center.y), forward);
  }

  const AffineMatrix inverse = forward.inverse();

  ImageBuffer out(canvas_width, canvas_height, PixelFormat::RGBA8);
  double alpha_mass = 0.0;
  const int sw = static_cast<int>(src.width());
  const int sh = static_cast<int>(src.height());

  for (uint32_t y = 0; y < canvas_height; ++y) {
    for (uint32_t x = 0; x < canvas_width; ++x) {
      const Vec2 s = inverse.apply({x + 0.5, y + 0.5});
      const double sxf = s.x - 0.5;
      const double syf = s.y - 0.5;
      const int x0 = static_cast<int>(std::floor(sxf));
      const int y0 = static_cast<int>(std::floor(syf));
      const double fx = sxf - x0;
      const double fy = syf - y0;
      if (x0 < -1 || y0 < -1 || x0 >= sw || y0 >= sh) continue;

      double acc[4] = {0.0, 0.0, 0.0, 0.0};
      const double w[4] = {(1.0 - fx) * (1.0 - fy), fx * (1.0 - fy),
                           (1.0 - fx) * fy, fx * fy};
      const int xs[4] = {x0, x0 + 1, x0, x0 + 1};
      const int ys[4] = {y0, y0, y0 + 1, y0 + 1};
      for (int k = 0; k < 4; ++k) {
        if (w[k] == 0.0) continue;
        if (xs[k] < 0 || ys[k] < 0 || xs[k] >= sw || ys[k] >= sh) continue;  // transparent black
        const uint8_t* texel = src.pixel(static_cast<uint32_t>(xs[k]),
                                         static_cast<uint32_t>(ys[k]));
        acc[0] += w[k] * texel[0];
        acc[1] += w[k] * texel[1];
        acc[2] += w[k] * texel[2];
        acc[3] += w[k] * texel[3];
      }

      uint8_t* dst = out.pixel(x, y);
      dst[3] = round_half_even_to_byte(acc[3]);
      if (dst[3] == 0) continue;  // canonical: RGB stays zero
      dst[0] = round_half_even_to_byte(acc[0]);
      dst[1] = round_half_even_to_byte(acc[1]);
      dst[2] = round_half_even_to_byte(acc[2]);
      alpha_mass += dst[3] / 255.0;
    }
  }

  if (alpha_mass < 1.0) {
    fail(ErrorCode::SubjectVanishes, "transformed subject has alpha mass below one pixel");
  }

  SubjectMask mask = mask_from_alpha(out);
  BoundingBox tight = tight_bbox(mask);
  return TransformedSubject{MaskedSubject{std::move(out), std::move(mask), tight}, effective};
}

}  // namespace aga
