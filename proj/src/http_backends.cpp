#include "aga/http_backends.hpp"

#include <chrono>
#include <thread>

#include <httplib.h>

#include "aga/error.hpp"
#include "aga/wire.hpp"

namespace aga {
namespace {

// One POST with bounded retries. Transport failures and 5xx responses are
// retried with doubling backoff; 4xx means the request itself was rejected
// and is reported immediately. A fresh Client per call keeps this usable
// from concurrent workers without shared connection state.
std::string post_json(const HttpBackendConfig& config, const char* path,
                      const std::string& body) {
  std::string last_issue = "no attempt made";
  int delay_ms = config.backoff_initial_ms;

  for (int attempt = 0; attempt <= config.max_retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(std::chrono::milliseconds(delay_ms));
      delay_ms *= 2;
    }
    httplib::Client client(config.base_url);
    client.set_connection_timeout(config.timeout_seconds, 0);
    client.set_read_timeout(config.timeout_seconds, 0);
    client.set_write_timeout(config.timeout_seconds, 0);

    auto result = client.Post(path, body, "application/json");
    if (!result) {
      last_issue = std::string("transport error: ") + httplib::to_string(result.error());
      continue;
    }
    if (result->status >= 200 && result->status < 300) return result->body;
    if (result->status >= 400 && result->status < 500)
      fail(ErrorCode::BackendError, std::string(path) + ": service rejected request (" +
                                        std::to_string(result->status) + "): " +
                                        result->body);
    last_issue = "status " + std::to_string(result->status);
  }
  fail(ErrorCode::BackendUnreachable, config.base_url + std::string(path) + ": " +
                                          last_issue + " after " +
                                          std::to_string(config.max_retries + 1) +
                                          " attempts");
}

BackendIdentity make_identity(BackendRole role, const char* name,
                              const HttpBackendConfig& config) {
  return BackendIdentity{role, name, "http/1", config.base_url};
}

}  // namespace

HttpDetector::HttpDetector(HttpBackendConfig config)
    : config_(std::move(config)),
      identity_(make_identity(BackendRole::Detector, "http-detector", config_)) {}

DetectionResponse HttpDetector::detect(const ImageBuffer& image,
                                       const std::string& text_prompt) {
  if (text_prompt.empty()) fail(ErrorCode::InvalidArgument, "detect: empty text prompt");
  DetectRequest request{image, text_prompt};
  const std::string body = post_json(config_, "/detect", encode_detect_request(request));
  return decode_detect_response(body);
}

HttpSegmenter::HttpSegmenter(HttpBackendConfig config)
    : config_(std::move(config)),
      identity_(make_identity(BackendRole::Segmenter, "http-segmenter", config_)) {}

SegmentationResponse HttpSegmenter::segment(const ImageBuffer& image,
                                            const BoundingBox& box) {
  if (!box.valid()) fail(ErrorCode::InvalidArgument, "segment: invalid box");
  SegmentRequest request{image, box};
  const std::string body = post_json(config_, "/segment", encode_segment_request(request));
  SegmentationResponse response = decode_segment_response(body);
  if (response.mask.width() != image.width() || response.mask.height() != image.height())
    fail(ErrorCode::MalformedResponse,
         "segment: mask dimensions " + std::to_string(response.mask.width()) + "x" +
             std::to_string(response.mask.height()) + " do not match image " +
             std::to_string(image.width()) + "x" + std::to_string(image.height()));
  return response;
}

HttpCaptioner::HttpCaptioner(HttpBackendConfig config)
    : config_(std::move(config)),
      identity_(make_identity(BackendRole::Captioner, "http-captioner", config_)) {}

std::string HttpCaptioner::caption(const std::string& prompt, uint64_t retry_nonce) {
  if (prompt.empty()) fail(ErrorCode::InvalidArgument, "caption: empty prompt");
  CaptionRequest request{prompt, retry_nonce};
  const std::string body = post_json(config_, "/caption", encode_caption_request(request));
  return decode_caption_response(body).caption;
}

HttpBackgroundGenerator::HttpBackgroundGenerator(HttpBackendConfig config)
    : config_(std::move(config)),
      identity_(make_identity(BackendRole::BackgroundGenerator, "http-background", config_)) {}

ImageBuffer HttpBackgroundGenerator::generate(const std::string& caption, uint64_t seed,
                                              uint32_t width, uint32_t height) {
  if (caption.empty()) fail(ErrorCode::InvalidArgument, "generate: empty caption");
  if (width == 0 || height == 0)
    fail(ErrorCode::InvalidArgument, "generate: zero output dimension");
  BackgroundRequest request{caption, seed, width, height};
  const std::string body =
      post_json(config_, "/background", encode_background_request(request));
  ImageBuffer image = decode_background_response(body).image;
  if (image.width() != width || image.height() != height)
    fail(ErrorCode::MalformedResponse,
         "background: image dimensions " + std::to_string(image.width()) + "x" +
             std::to_string(image.height()) + " do not match request " +
             std::to_string(width) + "x" + std::to_string(height));
  return image;
}

BackendSet make_http_backends(const HttpBackendUrls& urls) {
  BackendSet set;
  set.detector = std::make_shared<HttpDetector>(HttpBackendConfig{urls.detector});
  set.segmenter = std::make_shared<HttpSegmenter>(HttpBackendConfig{urls.segmenter});
  set.captioner = std::make_shared<HttpCaptioner>(HttpBackendConfig{urls.captioner});
  set.background = std::make_shared<HttpBackgroundGenerator>(HttpBackendConfig{urls.background});
  return set;
}

}  // namespace aga
