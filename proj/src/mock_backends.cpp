#include "aga/mock_backends.hpp"

#include <array>
#include <cmath>

#include "aga/error.hpp"
#include "aga/rng.hpp"

namespace aga {

constexpr uint8_t MockDetector::kEmptyDetectionSentinel[3];

DetectionResponse MockDetector::detect(const ImageBuffer& image,
                                       const std::string& text_prompt) {
  if (text_prompt.empty()) fail(ErrorCode::InvalidArgument, "detect: empty text prompt");

  DetectionResponse response;
  const uint8_t* p0 = image.pixel(0, 0);
  const auto& s = kEmptyDetectionSentinel;
  if (p0[0] == s[0] && p0[1] == s[1] && p0[2] == s[2]) return response;

  BoundingBox box;
  box.x_min = 0.25;
  box.y_min = 0.25;
  box.x_max = 0.75;
  box.y_max = 0.75;
  box.confidence = 0.9;
  response.boxes.push_back(box);
  return response;
}

SegmentationResponse MockSegmenter::segment(const ImageBuffer& image,
                                            const BoundingBox& box) {
  if (!box.valid()) fail(ErrorCode::InvalidArgument, "segment: invalid box");

  const uint32_t w = image.width();
  const uint32_t h = image.height();
  // Pixel-edge convention: the box covers [x_min*w, x_max*w) x [y_min*h, y_max*h).
  const long px0 = std::llround(box.x_min * w);
  const long px1 = std::llround(box.x_max * w);
  const long py0 = std::llround(box.y_min * h);
  const long py1 = std::llround(box.y_max * h);

  const double cx = 0.5 * (box.x_min + box.x_max) * w;
  const double cy = 0.5 * (box.y_min + box.y_max) * h;
  const double rx = 0.5 * (box.x_max - box.x_min) * w;
  const double ry = 0.5 * (box.y_max - box.y_min) * h;

  SubjectMask mask(w, h);
  if (rx > 0.0 && ry > 0.0) {
    for (long y = std::max(0L, py0); y < std::min<long>(h, py1); ++y) {
      for (long x = std::max(0L, px0); x < std::min<long>(w, px1); ++x) {
        const double dx = (x + 0.5 - cx) / rx;
        const double dy = (y + 0.5 - cy) / ry;
        if (dx * dx + dy * dy <= 1.0)
          mask.set(static_cast<uint32_t>(x), static_cast<uint32_t>(y), true);
      }
    }
  }
  if (mask.popcount() == 0) {
    // Degenerate box: still return a usable one-pixel mask at its center.
    const uint32_t fx = std::min<uint32_t>(w - 1, static_cast<uint32_t>(std::max(0.0, cx)));
    const uint32_t fy = std::min<uint32_t>(h - 1, static_cast<uint32_t>(std::max(0.0, cy)));
    mask.set(fx, fy, true);
  }

  return SegmentationResponse{std::move(mask)};
}

namespace {

// Word banks deliberately free of any fixture subject vocabulary, so the
// default captioner never trips the avoid list by accident.
const std::array<const char*, 8> kAdjectives = {
    "quiet", "vast", "misty", "sunlit", "windswept", "remote", "frozen", "lush"};
const std::array<const char*, 8> kTerrains = {
    "valley", "plain",  "ridge",  "shoreline",
    "meadow", "plateau", "dune field", "clearing"};
const std::array<const char*, 6> kSkies = {
    "under a pale sky",      "beneath heavy clouds", "in golden light",
    "under a clear blue sky", "in soft haze",         "beneath a fading glow"};
const std::array<const char*, 6> kDetails = {
    "with scattered rocks",    "with tall dry grass", "with patches of moss",
    "with rippled sand",       "with distant trees",  "with a thin stream"};

uint64_t hash_slot(const std::string& prompt, uint64_t nonce, uint64_t slot) {
  uint64_t h = fnv1a64(prompt);
  h = fnv1a64_u64(nonce, h);
  h = fnv1a64_u64(slot, h);
  return h;
}

}  // namespace

std::string MockCaptioner::caption(const std::string& prompt, uint64_t retry_nonce) {
  if (prompt.empty()) fail(ErrorCode::InvalidArgument, "caption: empty prompt");

  std::string out = "A ";
  out += kAdjectives[hash_slot(prompt, retry_nonce, 0) % kAdjectives.size()];
  out += ' ';
  out += kTerrains[hash_slot(prompt, retry_nonce, 1) % kTerrains.size()];
  out += ' ';
  out += kSkies[hash_slot(prompt, retry_nonce, 2) % kSkies.size()];
  out += ' ';
  out += kDetails[hash_slot(prompt, retry_nonce, 3) % kDetails.size()];
  out += '.';

  if (!options_.inject_words.empty() && options_.inject_probability > 0.0) {
    // 53-bit hash fraction in [0, 1); deterministic per (prompt, nonce).
    const uint64_t bits = hash_slot(prompt, retry_nonce, 4) >> 11;
    const double u = static_cast<double>(bits) * 0x1.0p-53;
    if (u < options_.inject_probability) {
      const uint64_t pick = hash_slot(prompt, retry_nonce, 5) % options_.inject_words.size();
      out += " A ";
      out += options_.inject_words[pick];
      out += " rests nearby.";
    }
  }
  return out;
}

ImageBuffer MockBackgroundGenerator::generate(const std::string& caption, uint64_t seed,
                                              uint32_t width, uint32_t height) {
  if (caption.empty()) fail(ErrorCode::InvalidArgument, "generate: empty caption");
  if (width == 0 || height == 0)
    fail(ErrorCode::InvalidArgument, "generate: zero output dimension");

  const uint64_t key = fnv1a64_u64(seed, fnv1a64(caption));

  // Hash-derived palette: per-channel base level, noise amplitude and a
  // vertical gradient. Ranges keep every output in [0, 255] without clamping
  // surprises and guarantee distinct captions land far apart on average.
  auto unit = [&](uint64_t slot) {
    uint64_t h = fnv1a64_u64(slot, key);
    return static_cast<double>(h >> 11) * 0x1.0p-53;
  };
  double base[3], amp[3], grad[3];
  for (int c = 0; c < 3; ++c) {
    base[c] = 40.0 + 155.0 * unit(static_cast<uint64_t>(c));
    amp[c] = 20.0 + 20.0 * unit(static_cast<uint64_t>(3 + c));
    grad[c] = -20.0 + 40.0 * unit(static_cast<uint64_t>(6 + c));
  }

  // Value noise on an integer lattice, smoothstep-interpolated; three
  // octaves. Lattice values are hashed so no tables are stored.
  auto lattice = [&](uint64_t octave, int64_t ix, int64_t iy) {
    uint64_t h = fnv1a64_u64(octave, key);
    h = fnv1a64_u64(static_cast<uint64_t>(ix), h);
    h = fnv1a64_u64(static_cast<uint64_t>(iy), h);
    return static_cast<double>(h >> 11) * 0x1.0p-53;
  };
  auto smooth = [](double t) { return t * t * (3.0 - 2.0 * t); };
  auto noise = [&](uint64_t octave, double x, double y) {
    const double fx = std::floor(x), fy = std::floor(y);
    const auto ix = static_cast<int64_t>(fx), iy = static_cast<int64_t>(fy);
    const double tx = smooth(x - fx), ty = smooth(y - fy);
    const double v00 = lattice(octave, ix, iy);
    const double v10 = lattice(octave, ix + 1, iy);
    const double v01 = lattice(octave, ix, iy + 1);
    const double v11 = lattice(octave, ix + 1, iy + 1);
    const double a = v00 + (v10 - v00) * tx;
    const double b = v01 + (v11 - v01) * tx;
    return a + (b - a) * ty;
  };

  ImageBuffer out(width, height, PixelFormat::RGB8);
  const double inv_w = 1.0 / width;
  const double inv_h = 1.0 / height;
  for (uint32_t y = 0; y < height; ++y) {
    const double v = (y + 0.5) * inv_h;
    for (uint32_t x = 0; x < width; ++x) {
      const double u = (x + 0.5) * inv_w;
      const double n = 0.5 * noise(0, u * 4.0, v * 4.0) +
                       0.3 * noise(1, u * 9.0, v * 9.0) +
                       0.2 * noise(2, u * 19.0, v * 19.0);
      uint8_t* px = out.pixel(x, y);
      for (int c = 0; c < 3; ++c) {
        const double value = base[c] + amp[c] * (2.0 * n - 1.0) + grad[c] * (v - 0.5);
        px[c] = static_cast<uint8_t>(std::lround(std::min(255.0, std::max(0.0, value))));
      }
    }
  }
  return out;
}

BackendSet make_mock_backends(MockCaptioner::Options captioner_options) {
  BackendSet set;
  set.detector = std::make_shared<MockDetector>();
  set.segmenter = std::make_shared<MockSegmenter>();
  set.captioner = std::make_shared<MockCaptioner>(std::move(captioner_options));
  set.background = std::make_shared<MockBackgroundGenerator>();
  return set;
}

}  // namespace aga
