#pragma once

#include <string>

#include "aga/backend.hpp"

namespace aga {

// Connection settings for one remote model service. base_url is scheme +
// host + port, e.g. "http://127.0.0.1:8801"; paths are fixed by the wire
// protocol (/detect, /segment, /caption, /background).
struct HttpBackendConfig {
  std::string base_url;
  int timeout_seconds = 30;
  int max_retries = 2;          // retries after the first attempt
  int backoff_initial_ms = 250; // doubled per retry
};

class HttpDetector : public Detector {
 public:
  explicit HttpDetector(HttpBackendConfig config);
  DetectionResponse detect(const ImageBuffer& image, const std::string& text_prompt) override;
  const BackendIdentity& identity() const override { return identity_; }

 private:
  HttpBackendConfig config_;
  BackendIdentity identity_;
};

class HttpSegmenter : public Segmenter {
 public:
  explicit HttpSegmenter(HttpBackendConfig config);
  SegmentationResponse segment(const ImageBuffer& image, const BoundingBox& box) override;
  const BackendIdentity& identity() const override { return identity_; }

 private:
  HttpBackendConfig config_;
  BackendIdentity identity_;
};

class HttpCaptioner : public Captioner {
 public:
  explicit HttpCaptioner(HttpBackendConfig config);
  std::string caption(const std::string& prompt, uint64_t retry_nonce) override;
  const BackendIdentity& identity() const override { return identity_; }

 private:
  HttpBackendConfig config_;
  BackendIdentity identity_;
};

class HttpBackgroundGenerator : public BackgroundGenerator {
 public:
  explicit HttpBackgroundGenerator(HttpBackendConfig config);
  ImageBuffer generate(const std::string& caption, uint64_t seed, uint32_t width,
                       uint32_t height) override;
  const BackendIdentity& identity() const override { return identity_; }

 private:
  HttpBackendConfig config_;
  BackendIdentity identity_;
};

struct HttpBackendUrls {
  std::string detector;
  std::string segmenter;
  std::string captioner;
  std::string background;
};

BackendSet make_http_backends(const HttpBackendUrls& urls);

}  // namespace aga
