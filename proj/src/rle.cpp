#include "aga/rle.hpp"

namespace aga {

std::vector<uint64_t> encode_mask_rle(const SubjectMask& mask) {
  std::vector<uint64_t> runs;
  uint8_t current = 0;  // first run counts zeros
  uint64_t length = 0;
  for (uint8_t bit : mask.bits()) {
    if (bit == current) {
      ++length;
    } else {
      runs.push_back(length);
      current = bit;
      length = 1;
    }
  }
  runs.push_back(length);
  return runs;
}

SubjectMask decode_mask_rle(uint32_t width, uint32_t height,
                            const std::vector<uint64_t>& runs) {
  if (width == 0 || height == 0) {
    fail(ErrorCode::MalformedResponse, "RLE mask has zero dimension");
  }
  if (runs.empty()) {
    fail(ErrorCode::MalformedResponse, "RLE mask has no runs");
  }
  const uint64_t total = static_cast<uint64_t>(width) * height;
  uint64_t sum = 0;
  for (size_t i = 0; i < runs.size(); ++i) {
    if (i > 0 && runs[i] == 0) {
      fail(ErrorCode::MalformedResponse, "RLE mask has a non-leading zero run");
    }
    sum += runs[i];
  }
  if (sum != total) {
    fail(ErrorCode::MalformedResponse, "RLE run lengths do not cover the mask");
  }

  SubjectMask mask(width, height);
  uint64_t pos = 0;
  bool value = false;  // runs alternate starting from the zero-run
  for (uint64_t run : runs) {
    if (value) {
      for (uint64_t i = 0; i < run; ++i) {
        const uint64_t p = pos + i;
        mask.set(static_cast<uint32_t>(p % width), static_cast<uint32_t>(p / width), true);
      }
    }
    pos += run;
    value = !value;
  }
  return mask;
}

}  // namespace aga
