#include "aga/wire.hpp"

#include <array>

#include <nlohmann/json.hpp>

#include "aga/image_io.hpp"
#include "aga/rle.hpp"

namespace aga {

namespace {

using nlohmann::json;

constexpr char kBase64Alphabet[] =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

std::array<int8_t, 256> base64_reverse_table() {
  std::array<int8_t, 256> table;
  table.fill(-1);
  for (int i = 0; i < 64; ++i) {
    table[static_cast<unsigned char>(kBase64Alphabet[i])] = static_cast<int8_t>(i);
  }
  return table;
}

json parse(const std::string& text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) {
    fail(ErrorCode::MalformedResponse, "payload is not valid JSON");
  }
  return doc;
}

const json& field(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) {
    fail(ErrorCode::MalformedResponse, std::string("missing field \"") + key + "\"");
  }
  return *it;
}

json box_to_json(const BoundingBox& box) {
  return json{{"confidence", box.confidence},
              {"x_max", box.x_max},
              {"x_min", box.x_min},
              {"y_max", box.y_max},
              {"y_min", box.y_min}};
}

BoundingBox box_from_json(const json& doc) {
  if (!doc.is_object()) {
    fail(ErrorCode::MalformedResponse, "bounding box is not an object");
  }
  BoundingBox box;
  box.x_min = field(doc, "x_min").get<double>();
  box.y_min = field(doc, "y_min").get<double>();
  box.x_max = field(doc, "x_max").get<double>();
  box.y_max = field(doc, "y_max").get<double>();
  box.confidence = field(doc, "confidence").get<double>();
  if (!box.valid()) {
    fail(ErrorCode::MalformedResponse, "bounding box violates its invariants");
  }
  return box;
}

std::string image_to_b64(const ImageBuffer& image) {
  const std::vector<uint8_t> png = encode_png(image);
  return base64_encode(png.data(), png.size());
}

ImageBuffer image_from_b64(const json& value) {
  if (!value.is_string()) {
    fail(ErrorCode::MalformedResponse, "image field is not a string");
  }
  const std::string png = base64_decode(value.get<std::string>());
  try {
    return decode_png(reinterpret_cast<const uint8_t*>(png.data()), png.size());
  } catch (const Error&) {
    fail(ErrorCode::MalformedResponse, "image payload is not a valid PNG");
  }
}

}  // namespace

std::string base64_encode(const uint8_t* bytes, size_t size) {
  std::string out;
  out.reserve((size + 2) / 3 * 4);
  size_t i = 0;
  for (; i + 3 <= size; i += 3) {
    const uint32_t v = (bytes[i] << 16) | (bytes[i + 1] << 8) | bytes[i + 2];
    out.push_back(kBase64Alphabet[(v >> 18) & 63]);
    out.push_back(kBase64Alphabet[(v >> 12) & 63]);
    out.push_back(kBase64Alphabet[(v >> 6) & 63]);
    out.push_back(kBase64Alphabet[v & 63]);
  }
  const size_t rest = size - i;
  if (rest == 1) {
    const uint32_t v = bytes[i] << 16;
    out.push_back(kBase64Alphabet[(v >> 18) & 63]);
    out.push_back(kBase64Alphabet[(v >> 12) & 63]);
    out.append("==");
  } else if (rest == 2) {
    const uint32_t v = (bytes[i] << 16) | (bytes[i + 1] << 8);
    out.push_back(kBase64Alphabet[(v >> 18) & 63]);
    out.push_back(kBase64Alphabet[(v >> 12) & 63]);
    out.push_back(kBase64Alphabet[(v >> 6) & 63]);
    out.push_back('=');
  }
  return out;
}

std::string base64_decode(const std::string& text) {
  static const std::array<int8_t, 256> table = base64_reverse_table();
  if (text.size() % 4 != 0) {
    fail(ErrorCode::MalformedResponse, "base64 payload length is not a multiple of 4");
  }
  std::string out;
  out.reserve(text.size() / 4 * 3);
  for (size_t i = 0; i < text.size(); i += 4) {
    int values[4];
    int padding = 0;
    for (int k = 0; k < 4; ++k) {
      const char c = text[i + k];
      if (c == '=' && k >= 2 && i + 4 == text.size()) {
        values[k] = 0;
        ++padding;
      } else {
        const int8_t v = table[static_cast<unsigned char>(c)];
        if (v < 0 || padding > 0) {
          fail(ErrorCode::MalformedResponse, "invalid base64 payload");
        }
        values[k] = v;
      }
    }
    const uint32_t v = (values[0] << 18) | (values[1] << 12) | (values[2] << 6) | values[3];
    out.push_back(static_cast<char>((v >> 16) & 0xFF));
    if (padding < 2) out.push_back(static_cast<char>((v >> 8) & 0xFF));
    if (padding < 1) out.push_back(static_cast<char>(v & 0xFF));
  }
  return out;
}

std::string encode_detect_request(const DetectRequest& request) {
  return json{{"image", image_to_b64(request.image)}, {"prompt", request.prompt}}.dump();
}

DetectRequest decode_detect_request(const std::string& text) {
  const json doc = parse(text);
  DetectRequest request{image_from_b64(field(doc, "image")),
                        field(doc, "prompt").get<std::string>()};
  if (request.prompt.empty()) {
    fail(ErrorCode::MalformedResponse, "detect request has an empty prompt");
  }
  return request;
}

std::string encode_detect_response(const DetectionResponse& response) {
  json boxes = json::array();
  for (const auto& box : response.boxes) boxes.push_back(box_to_json(box));
  return json{{"boxes", std::move(boxes)}}.dump();
}

DetectionResponse decode_detect_response(const std::string& text) {
  const json doc = parse(text);
  const json& boxes = field(doc, "boxes");
  if (!boxes.is_array()) {
    fail(ErrorCode::MalformedResponse, "\"boxes\" is not an array");
  }
  DetectionResponse response;
  for (const auto& entry : boxes) response.boxes.push_back(box_from_json(entry));
  for (size_t i = 1; i < response.boxes.size(); ++i) {
    if (response.boxes[i - 1].confidence < response.boxes[i].confidence) {
      fail(ErrorCode::MalformedResponse, "detections are not sorted by confidence");
    }
  }
  return response;
}

std::string encode_segment_request(const SegmentRequest& request) {
  return json{{"box", box_to_json(request.box)}, {"image", image_to_b64(request.image)}}
      .dump();
}

SegmentRequest decode_segment_request(const std::string& text) {
  const json doc = parse(text);
  return SegmentRequest{image_from_b64(field(doc, "image")),
                        box_from_json(field(doc, "box"))};
}

std::string encode_segment_response(const SegmentationResponse& response) {
  const std::vector<uint64_t> runs = encode_mask_rle(response.mask);
  return json{{"mask",
               {{"height", response.mask.height()},
                {"runs", runs},
                {"width", response.mask.width()}}}}
      .dump();
}

SegmentationResponse decode_segment_response(const std::string& text) {
  const json doc = parse(text);
  const json& mask = field(doc, "mask");
  if (!mask.is_object()) {
    fail(ErrorCode::MalformedResponse, "\"mask\" is not an object");
  }
  const auto width = field(mask, "width").get<uint32_t>();
  const auto height = field(mask, "height").get<uint32_t>();
  const auto runs = field(mask, "runs").get<std::vector<uint64_t>>();
  SubjectMask decoded = decode_mask_rle(width, height, runs);
  if (decoded.empty()) {
    fail(ErrorCode::MalformedResponse, "segmentation mask is empty");
  }
  return SegmentationResponse{std::move(decoded)};
}

std::string encode_caption_request(const CaptionRequest& request) {
  return json{{"nonce", request.nonce}, {"prompt", request.prompt}}.dump();
}

CaptionRequest decode_caption_request(const std::string& text) {
  const json doc = parse(text);
  CaptionRequest request{field(doc, "prompt").get<std::string>(),
                         field(doc, "nonce").get<uint64_t>()};
  if (request.prompt.empty()) {
    fail(ErrorCode::MalformedResponse, "caption request has an empty prompt");
  }
  return request;
}

std::string encode_caption_response(const CaptionResponse& response) {
  return json{{"caption", response.caption}}.dump();
}

CaptionResponse decode_caption_response(const std::string& text) {
  const json doc = parse(text);
  CaptionResponse response{field(doc, "caption").get<std::string>()};
  if (response.caption.empty()) {
    fail(ErrorCode::MalformedResponse, "caption response is empty");
  }
  return response;
}

std::string encode_background_request(const BackgroundRequest& request) {
  return json{{"caption", request.caption},
              {"height", request.height},
              {"seed", request.seed},
              {"width", request.width}}
      .dump();
}

BackgroundRequest decode_background_request(const std::string& text) {
  const json doc = parse(text);
  BackgroundRequest request{field(doc, "caption").get<std::string>(),
                            field(doc, "seed").get<uint64_t>(),
                            field(doc, "width").get<uint32_t>(),
                            field(doc, "height").get<uint32_t>()};
  if (request.caption.empty()) {
    fail(ErrorCode::MalformedResponse, "background request has an empty caption");
  }
  if (request.width == 0 || request.height == 0) {
    fail(ErrorCode::MalformedResponse, "background request target size is zero");
  }
  return request;
}

std::string encode_background_response(const BackgroundResponse& response) {
  return json{{"image", image_to_b64(response.image)}}.dump();
}

BackgroundResponse decode_background_response(const std::string& text) {
  const json doc = parse(text);
  return BackgroundResponse{image_from_b64(field(doc, "image"))};
}

}  // namespace aga
