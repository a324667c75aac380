#include <doctest.h>

#include <cmath>

#include "aga/compose.hpp"
#include "test_support.hpp"

using namespace aga;

namespace {

// Independent per-pixel oracle straight from the definition, including the
// rounding rule.
uint8_t blend_oracle(uint8_t alpha, uint8_t fg, uint8_t bg) {
  if (alpha == 0) return bg;
  if (alpha == 255) return fg;
  const double v = (alpha * fg + (255 - alpha) * bg) / 255.0;
  return static_cast<uint8_t>(std::nearbyint(v));
}

}  // namespace

TEST_CASE("merge matches the per-pixel branch oracle on binary masks") {
  SeededRng rng(701);
  for (int trial = 0; trial < 30; ++trial) {
    const uint32_t w = 4 + static_cast<uint32_t>(rng.uniform_index(60));
    const uint32_t h = 4 + static_cast<uint32_t>(rng.uniform_index(60));
    const ImageBuffer fg_frame = test::noise_rgb(w, h, rng.next_u64());
    const ImageBuffer bg = test::noise_rgb(w, h, rng.next_u64());
    const SubjectMask mask = test::random_blob_mask(w, h, rng);
    const MaskedSubject subject = cutout_subject(fg_frame, mask);

    const CompositeOutput out = merge(subject, bg);
    REQUIRE(out.image.format() == PixelFormat::RGB8);
    size_t covered = 0;
    for (uint32_t y = 0; y < h; ++y)
      for (uint32_t x = 0; x < w; ++x) {
        const uint8_t* f = subject.cutout.pixel(x, y);
        const uint8_t* b = bg.pixel(x, y);
        const uint8_t* o = out.image.pixel(x, y);
        for (int c = 0; c < 3; ++c) CHECK(o[c] == blend_oracle(f[3], f[c], b[c]));
        if (f[3] > 0) ++covered;
      }
    CHECK(out.foreground_coverage ==
          doctest::Approx(static_cast<double>(covered) / (static_cast<double>(w) * h))
              .epsilon(1e-12));
  }
}

TEST_CASE("merge blends fractional alpha with round-half-even") {
  // Hand-build an RGBA foreground with chosen alphas and check the exact
  // rounded values, including a tie case.
  ImageBuffer fg(2, 1, PixelFormat::RGBA8);
  uint8_t* p0 = fg.pixel(0, 0);
  p0[0] = 100; p0[1] = 200; p0[2] = 30; p0[3] = 128;
  uint8_t* p1 = fg.pixel(1, 0);
  p1[0] = 0; p1[1] = 0; p1[2] = 0; p1[3] = 0;
  SubjectMask mask(2, 1);
  mask.set(0, 0, true);
  ImageBuffer bg(2, 1, PixelFormat::RGB8);
  uint8_t* b0 = bg.pixel(0, 0);
  b0[0] = 50; b0[1] = 60; b0[2] = 70;
  uint8_t* b1 = bg.pixel(1, 0);
  b1[0] = 9; b1[1] = 8; b1[2] = 7;

  const MaskedSubject subject{std::move(fg), std::move(mask), BoundingBox{0, 0, 1, 1, 1}};
  const CompositeOutput out = merge(subject, bg);
  const uint8_t* o0 = out.image.pixel(0, 0);
  CHECK(o0[0] == blend_oracle(128, 100, 50));
  CHECK(o0[1] == blend_oracle(128, 200, 60));
  CHECK(o0[2] == blend_oracle(128, 30, 70));
  const uint8_t* o1 = out.image.pixel(1, 0);
  CHECK(o1[0] == 9);
  CHECK(o1[1] == 8);
  CHECK(o1[2] == 7);
  CHECK(out.foreground_coverage == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("merge validates operands") {
  const MaskedSubject subject = test::make_subject(8, 8, 1);
  const ImageBuffer wrong = test::noise_rgb(8, 9, 2);
  CHECK_THROWS_WITH_AS(merge(subject, wrong), doctest::Contains("DimensionMismatch"), Error);
}

TEST_CASE("resize_background passes identical dimensions through unchanged") {
  const ImageBuffer bg = test::noise_rgb(33, 21, 3);
  const ImageBuffer out = resize_background(bg, 33, 21);
  CHECK(out.data() == bg.data());
}

TEST_CASE("resize_background downscales a constant image to the same constant") {
  ImageBuffer flat(64, 48, PixelFormat::RGB8);
  for (auto& byte : flat.data()) byte = 137;
  const ImageBuffer out = resize_background(flat, 17, 13);
  CHECK(out.width() == 17);
  CHECK(out.height() == 13);
  for (uint8_t byte : out.data()) CHECK(byte == 137);
}

TEST_CASE("resize_background center-crops aspect mismatches") {
  // Left half black, right half white; resizing to a tall target must crop
  // the horizontal middle, leaving both halves represented in each row.
  ImageBuffer split(40, 20, PixelFormat::RGB8);
  for (uint32_t y = 0; y < 20; ++y)
    for (uint32_t x = 0; x < 40; ++x) {
      uint8_t* px = split.pixel(x, y);
      px[0] = px[1] = px[2] = (x < 20) ? 0 : 255;
    }
  const ImageBuffer out = resize_background(split, 10, 20);  // target aspect 0.5
  // Crop keeps the central 10x20-aspect region (width 10 of 40 scaled);
  // the left columns stay dark, the right columns stay bright.
  const uint8_t left = out.pixel(0, 10)[0];
  const uint8_t right = out.pixel(9, 10)[0];
  CHECK(left < 64);
  CHECK(right > 191);
}

TEST_CASE("resize_background preserves smooth gradients closely") {
  // Bilinear downscale of a linear ramp stays a ramp (within rounding).
  ImageBuffer ramp(100, 10, PixelFormat::RGB8);
  for (uint32_t y = 0; y < 10; ++y)
    for (uint32_t x = 0; x < 100; ++x) {
      uint8_t* px = ramp.pixel(x, y);
      px[0] = px[1] = px[2] = static_cast<uint8_t>(x * 255 / 99);
    }
  const ImageBuffer out = resize_background(ramp, 50, 5);
  for (uint32_t x = 1; x < 50; ++x) {
    const int prev = out.pixel(x - 1, 2)[0];
    const int curr = out.pixel(x, 2)[0];
    CHECK(curr >= prev);           // monotone
    CHECK(curr - prev <= 8);       // no jumps
  }
}
