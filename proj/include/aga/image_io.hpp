#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "aga/image.hpp"

namespace aga {

// PNG encoding is pinned (zlib level 6, no scanline filtering) so identical
// pixels always produce identical files; output byte-determinism depends on
// this. Inputs may be PNG or JPEG; JPEG is decoded once and never re-encoded.

std::vector<uint8_t> encode_png(const ImageBuffer& image);
ImageBuffer decode_png(const uint8_t* bytes, size_t size);
ImageBuffer decode_jpeg(const uint8_t* bytes, size_t size);

// Sniffs the codec from the file's magic bytes. RGB/RGBA only; gray and
// palette images are expanded on decode.
ImageBuffer load_image(const std::filesystem::path& path);

void save_png(const std::filesystem::path& path, const ImageBuffer& image);

// White-on-black RGB8 rendering of a mask, for inspection outputs.
ImageBuffer mask_to_image(const SubjectMask& mask);

}  // namespace aga
