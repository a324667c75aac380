#include "aga/error.hpp"

namespace aga {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::EmptyMask: return "EmptyMask";
    case ErrorCode::IndexOutOfBounds: return "IndexOutOfBounds";
    case ErrorCode::CaptionRejectedAfterRetries: return "CaptionRejectedAfterRetries";
    case ErrorCode::BackendError: return "BackendError";
    case ErrorCode::BackendUnreachable: return "BackendUnreachable";
    case ErrorCode::MalformedResponse: return "MalformedResponse";
    case ErrorCode::EmptyMaskReturned: return "EmptyMaskReturned";
    case ErrorCode::NoDetection: return "NoDetection";
    case ErrorCode::SubjectVanishes: return "SubjectVanishes";
    case ErrorCode::DuplicateImageId: return "DuplicateImageId";
    case ErrorCode::UnresolvableSuperclass: return "UnresolvableSuperclass";
    case ErrorCode::FatalIOError: return "FatalIOError";
    case ErrorCode::UnreadableManifest: return "UnreadableManifest";
    case ErrorCode::DecodeError: return "DecodeError";
  }
  return "UnknownError";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace aga
