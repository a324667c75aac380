#pragma once

#include <stdexcept>
#include <string>

namespace aga {

// Failure categories surfaced by pipeline operations. Backend-related codes
// map one-to-one onto the wire protocol's error semantics.
enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  EmptyMask,
  IndexOutOfBounds,
  CaptionRejectedAfterRetries,
  BackendError,
  BackendUnreachable,
  MalformedResponse,
  EmptyMaskReturned,
  NoDetection,
  SubjectVanishes,
  DuplicateImageId,
  UnresolvableSuperclass,
  FatalIOError,
  UnreadableManifest,
  DecodeError,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace aga
