#include "aga/backend.hpp"

namespace aga {

const char* to_string(BackendRole role) {
  switch (role) {
    case BackendRole::Detector: return "detector";
    case BackendRole::Segmenter: return "segmenter";
    case BackendRole::Captioner: return "captioner";
    case BackendRole::BackgroundGenerator: return "background";
  }
  return "unknown";
}

}  // namespace aga
