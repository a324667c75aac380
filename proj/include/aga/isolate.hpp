#pragma once

#include <map>
#include <string>

#include "aga/backend.hpp"
#include "aga/image.hpp"

namespace aga {

// What to do when the detector finds nothing for the superclass prompt.
enum class NoDetectionPolicy {
  Error,      // raise NoDetection; the task is recorded as failed
  CenterBox,  // proceed with a centered box covering 3/4 of each dimension
};

struct IsolationConfig {
  NoDetectionPolicy on_no_detection = NoDetectionPolicy::Error;
  // A mask this small relative to the image is treated as a segmentation
  // failure rather than a subject.
  double min_mask_fraction = 0.005;
};

// Fine-grained label -> detection superclass. Prompting the detector with
// the coarse word is what keeps open-vocabulary detection reliable; the
// fine label never reaches a backend.
class SuperclassTable {
 public:
  // Tab-separated "fine_name<TAB>superclass", one per line, '#' comments.
  static SuperclassTable load(const std::string& path);
  static SuperclassTable from_pairs(std::map<std::string, std::string> pairs);

  const std::string& resolve(const std::string& fine_name) const;  // UnresolvableSuperclass
  bool contains(const std::string& fine_name) const;
  size_t size() const { return pairs_.size(); }

 private:
  std::map<std::string, std::string> pairs_;
};

// Full isolation stage: detect with the superclass prompt, take the top box,
// segment inside it, and cut the subject out. The returned cutout is
// canonical RGBA over the whole source frame with source_box set to the
// detector box actually used.
MaskedSubject isolate(const ImageBuffer& image, const ClassLabel& label,
                      Detector& detector, Segmenter& segmenter,
                      const IsolationConfig& config = {});

}  // namespace aga
