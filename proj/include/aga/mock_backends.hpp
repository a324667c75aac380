#pragma once

#include <vector>

#include "aga/backend.hpp"

namespace aga {

// In-process stand-ins for the four model services. Every mock is a pure
// deterministic function of its declared inputs; whole-pipeline
// byte-reproducibility rests on that.

// Returns one centered box covering a quarter of the image area at
// confidence 0.9, for any image and prompt. Images whose top-left pixel is
// the sentinel color (magenta, 255/0/255) produce an empty detection list;
// fixtures use the sentinel to exercise no-detection policies.
class MockDetector : public Detector {
 public:
  static constexpr uint8_t kEmptyDetectionSentinel[3] = {255, 0, 255};

  DetectionResponse detect(const ImageBuffer& image, const std::string& text_prompt) override;
  const BackendIdentity& identity() const override { return identity_; }

 private:
  BackendIdentity identity_{BackendRole::Detector, "mock-detector", "1.0", "mock"};
};

// Rasterizes the ellipse inscribed in the requested box; the mask never
// leaves the box and is never empty (degenerate boxes fall back to the box
// center pixel).
class MockSegmenter : public Segmenter {
 public:
  SegmentationResponse segment(const ImageBuffer& image, const BoundingBox& box) override;
  const BackendIdentity& identity() const override { return identity_; }

 private:
  BackendIdentity identity_{BackendRole::Segmenter, "mock-segmenter", "1.0", "mock"};
};

// Fills a fixed sentence template with words chosen by a stable hash of
// (prompt, nonce). With inject_probability > 0 the caption additionally
// carries one of inject_words as a whole token, drawn pseudo-randomly from
// the same hash stream; the retry loop in obtain_caption is exercised by
// exactly this mode.
class MockCaptioner : public Captioner {
 public:
  struct Options {
    std::vector<std::string> inject_words;
    double inject_probability = 0.0;
  };

  MockCaptioner() = default;
  explicit MockCaptioner(Options options) : options_(std::move(options)) {}

  std::string caption(const std::string& prompt, uint64_t retry_nonce) override;
  const BackendIdentity& identity() const override { return identity_; }

 private:
  Options options_;
  BackendIdentity identity_{BackendRole::Captioner, "mock-captioner", "1.0", "mock"};
};

// Renders a procedural scene: multi-octave value noise over a palette and
// vertical gradient derived from hash(caption, seed). Distinct captions give
// measurably distinct images.
class MockBackgroundGenerator : public BackgroundGenerator {
 public:
  ImageBuffer generate(const std::string& caption, uint64_t seed, uint32_t width,
                       uint32_t height) override;
  const BackendIdentity& identity() const override { return identity_; }

 private:
  BackendIdentity identity_{BackendRole::BackgroundGenerator, "mock-background", "1.0",
                            "mock"};
};

BackendSet make_mock_backends(MockCaptioner::Options captioner_options = {});

}  // namespace aga
