#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "aga/image.hpp"
#include "aga/manifest.hpp"
#include "aga/prompt.hpp"
#include "aga/rng.hpp"

namespace aga::test {

// 2x3x2 modality space; small enough to enumerate by hand in tests.
ModalitySets tiny_sets();

// Fresh empty directory under the system temp root; unique per call.
std::filesystem::path unique_tmp_dir(const std::string& tag);

// Smooth low-frequency RGB texture (sums of sinusoids). `cycles` bounds the
// highest spatial frequency; small values give the gentle gradients the
// resampling tolerance tests assume.
ImageBuffer smooth_texture(uint32_t width, uint32_t height, uint64_t seed,
                           double cycles = 3.0);

// Independent per-pixel hash noise; maximally unfriendly to interpolation.
ImageBuffer noise_rgb(uint32_t width, uint32_t height, uint64_t seed);

SubjectMask ellipse_mask(uint32_t width, uint32_t height, double cx, double cy,
                         double rx, double ry);

// Union of 1-3 random ellipses; never empty.
SubjectMask random_blob_mask(uint32_t width, uint32_t height, SeededRng& rng);

// Canonical subject: smooth texture cut out with a central ellipse mask.
MaskedSubject make_subject(uint32_t width, uint32_t height, uint64_t seed);

// Ten smooth-texture PNGs across five classes under root (two sizes), ids
// "<class_dir>/<stem>". When with_sentinel is set, chickadee/img0 carries the
// detector's empty-detection sentinel pixel.
void write_fixture_dataset(const std::filesystem::path& root, bool with_sentinel = false);

// Names of the five class directories written by write_fixture_dataset.
const std::vector<std::string>& fixture_class_dirs();

}  // namespace aga::test
