#pragma once

#include <memory>
#include <string>
#include <vector>

#include "aga/image.hpp"

namespace aga {

enum class BackendRole { Detector, Segmenter, Captioner, BackgroundGenerator };

const char* to_string(BackendRole role);

// Recorded verbatim in the provenance manifest for every call that
// contributed to an output image.
struct BackendIdentity {
  BackendRole role;
  std::string name;
  std::string version;
  std::string endpoint;  // URL, or "mock" for in-process backends
};

struct DetectionResponse {
  std::vector<BoundingBox> boxes;  // descending confidence; may be empty
};

struct SegmentationResponse {
  SubjectMask mask;
};

class Detector {
 public:
  virtual ~Detector() = default;
  virtual DetectionResponse detect(const ImageBuffer& image,
                                   const std::string& text_prompt) = 0;
  virtual const BackendIdentity& identity() const = 0;
};

class Segmenter {
 public:
  virtual ~Segmenter() = default;
  virtual SegmentationResponse segment(const ImageBuffer& image,
                                       const BoundingBox& box) = 0;
  virtual const BackendIdentity& identity() const = 0;
};

class Captioner {
 public:
  virtual ~Captioner() = default;
  // retry_nonce perturbs the output so a rejected caption can be redrawn.
  virtual std::string caption(const std::string& prompt, uint64_t retry_nonce) = 0;
  virtual const BackendIdentity& identity() const = 0;
};

class BackgroundGenerator {
 public:
  virtual ~BackgroundGenerator() = default;
  virtual ImageBuffer generate(const std::string& caption, uint64_t seed,
                               uint32_t width, uint32_t height) = 0;
  virtual const BackendIdentity& identity() const = 0;
};

// The four model services the pipeline consumes.
struct BackendSet {
  std::shared_ptr<Detector> detector;
  std::shared_ptr<Segmenter> segmenter;
  std::shared_ptr<Captioner> captioner;
  std::shared_ptr<BackgroundGenerator> background;
};

}  // namespace aga
