#pragma once

#include <cstdint>
#include <vector>

#include "aga/image.hpp"

namespace aga {

// Wire encoding of a binary mask: alternating run lengths over the row-major
// bit sequence, starting with a zero-run (which is 0 when the mask opens with
// a set bit). Canonical form: runs after the first are all positive and runs
// sum to width * height. Canonical encodings round-trip byte-exactly.
std::vector<uint64_t> encode_mask_rle(const SubjectMask& mask);

// Validates canonical form; throws MalformedResponse otherwise.
SubjectMask decode_mask_rle(uint32_t width, uint32_t height,
                            const std::vector<uint64_t>& runs);

}  // namespace aga
