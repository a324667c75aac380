#include "aga/isolate.hpp"

#include <fstream>

#include "aga/error.hpp"

namespace aga {
namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

SuperclassTable SuperclassTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::FatalIOError, "superclass table: cannot open " + path);

  std::map<std::string, std::string> pairs;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const size_t tab = stripped.find('\t');
    if (tab == std::string::npos)
      fail(ErrorCode::InvalidArgument, "superclass table: no tab on line " +
                                           std::to_string(line_no) + " of " + path);
    const std::string fine = trim(stripped.substr(0, tab));
    const std::string coarse = trim(stripped.substr(tab + 1));
    if (fine.empty() || coarse.empty())
      fail(ErrorCode::InvalidArgument, "superclass table: empty field on line " +
                                           std::to_string(line_no) + " of " + path);
    pairs[fine] = coarse;
  }
  return from_pairs(std::move(pairs));
}

SuperclassTable SuperclassTable::from_pairs(std::map<std::string, std::string> pairs) {
  SuperclassTable table;
  table.pairs_ = std::move(pairs);
  return table;
}

const std::string& SuperclassTable::resolve(const std::string& fine_name) const {
  auto it = pairs_.find(fine_name);
  if (it == pairs_.end())
    fail(ErrorCode::UnresolvableSuperclass,
         "no superclass mapping for \"" + fine_name + "\"");
  return it->second;
}

bool SuperclassTable::contains(const std::string& fine_name) const {
  return pairs_.count(fine_name) > 0;
}

MaskedSubject isolate(const ImageBuffer& image, const ClassLabel& label,
                      Detector& detector, Segmenter& segmenter,
                      const IsolationConfig& config) {
  if (label.superclass.empty())
    fail(ErrorCode::InvalidArgument, "isolate: label has no superclass");

  DetectionResponse detection = detector.detect(image, label.superclass);

  BoundingBox box;
  if (detection.boxes.empty()) {
    if (config.on_no_detection == NoDetectionPolicy::Error)
      fail(ErrorCode::NoDetection,
           "no detection for \"" + label.superclass + "\" (" + label.fine_name + ")");
    box.x_min = 0.125;
    box.y_min = 0.125;
    box.x_max = 0.875;
    box.y_max = 0.875;
    box.confidence = 0.0;
  } else {
    box = detection.boxes.front();  // responses arrive sorted by confidence
    if (!box.valid())
      fail(ErrorCode::MalformedResponse, "isolate: detector returned invalid box");
  }

  SegmentationResponse segmentation = segmenter.segment(image, box);
  const SubjectMask& mask = segmentation.mask;
  if (mask.width() != image.width() || mask.height() != image.height())
    fail(ErrorCode::MalformedResponse,
         "isolate: mask dimensions do not match the image");

  const double fraction =
      static_cast<double>(mask.popcount()) / static_cast<double>(image.pixel_count());
  if (mask.empty() || fraction < config.min_mask_fraction)
    fail(ErrorCode::EmptyMaskReturned,
         "isolate: segmenter mask covers " + std::to_string(fraction) +
             " of the frame (minimum " + std::to_string(config.min_mask_fraction) + ")");

  MaskedSubject subject = cutout_subject(image, mask);
  subject.source_box = box;
  return subject;
}

}  // namespace aga
