#pragma once

#include <cstdint>
#include <string>

#include "aga/backend.hpp"
#include "aga/image.hpp"

namespace aga {

// JSON-over-HTTP wire protocol, one POST endpoint per backend role:
// /detect, /segment, /caption, /background. Images travel as base64 PNG,
// masks as uncompressed RLE. Encoders emit canonical JSON (compact, keys
// sorted) so canonical payloads round-trip byte-exactly; see docs/protocol.md.

struct DetectRequest {
  ImageBuffer image;
  std::string prompt;
};

struct SegmentRequest {
  ImageBuffer image;
  BoundingBox box;
};

struct CaptionRequest {
  std::string prompt;
  uint64_t nonce = 0;
};

struct CaptionResponse {
  std::string caption;
};

struct BackgroundRequest {
  std::string caption;
  uint64_t seed = 0;
  uint32_t width = 0;
  uint32_t height = 0;
};

struct BackgroundResponse {
  ImageBuffer image;
};

std::string base64_encode(const uint8_t* bytes, size_t size);
std::string base64_decode(const std::string& text);  // MalformedResponse on bad input

std::string encode_detect_request(const DetectRequest& request);
DetectRequest decode_detect_request(const std::string& json);
std::string encode_detect_response(const DetectionResponse& response);
DetectionResponse decode_detect_response(const std::string& json);

std::string encode_segment_request(const SegmentRequest& request);
SegmentRequest decode_segment_request(const std::string& json);
std::string encode_segment_response(const SegmentationResponse& response);
SegmentationResponse decode_segment_response(const std::string& json);

std::string encode_caption_request(const CaptionRequest& request);
CaptionRequest decode_caption_request(const std::string& json);
std::string encode_caption_response(const CaptionResponse& response);
CaptionResponse decode_caption_response(const std::string& json);

std::string encode_background_request(const BackgroundRequest& request);
BackgroundRequest decode_background_request(const std::string& json);
std::string encode_background_response(const BackgroundResponse& response);
BackgroundResponse decode_background_response(const std::string& json);

}  // namespace aga
